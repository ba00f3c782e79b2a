#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "batchcover/types.hpp"

namespace batchcover {

// H_r = sum_{i=1..r} 1/i, summed in ascending denominator order.
double harmonic(std::int64_t r);

// H_{m - 2^z + 1}, the competitive-ratio lower bound for batched algorithms
// against an adversary whose batches must have VC-dimension >= z.
// Throws BoundUndefined if m < 2^z.
double lower_bound(int m, int z);

// Whether H_r > (H_{r-t} + H_t) / 2. Holds for all integers r >= t >= 0 with
// r >= 1; the degenerate r = t = 0 case fails the strict inequality.
// Throws InvalidArguments if t > r or t < 0.
bool harmonic_split_inequality(std::int64_t r, std::int64_t t);

// S(beta): the union of the member_of lists over the batch, sorted.
std::vector<int> covering_sets_of(const Batch& batch);

// Returns one message per violated invariant; empty means well-formed.
std::vector<std::string> validate_instance(const Instance& inst);

}  // namespace batchcover
