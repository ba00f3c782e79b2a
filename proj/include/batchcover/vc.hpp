#pragma once

#include <span>

#include "batchcover/types.hpp"

namespace batchcover {

// Ceiling for exact shattering checks: 2^25 intersection patterns.
inline constexpr int kMaxShatterElements = 25;

// Whether every subset of the given elements arises as S_j intersected with
// them for some set S_j in [0, num_sets). The empty subset counts: it needs a
// set disjoint from the elements (or, for an empty element list, any set).
// Throws TooLarge beyond kMaxShatterElements.
bool is_shattered(std::span<const Element> subset, int num_sets);

// Cardinality of the largest shattered subset of the batch, searched top-down
// by size (every subset of a shattered set is shattered).
// Throws TooLarge beyond kMaxShatterElements.
int vc_dimension(const Batch& batch, const SetSystem& system);

// Whether every batch of the instance has VC-dimension at least z.
// Throws AdversaryImpossible if system.num_sets < 2^z.
bool check_adversary_restriction(const Instance& inst, int z);

}  // namespace batchcover
