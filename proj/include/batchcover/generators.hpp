#pragma once

#include <span>

#include "batchcover/types.hpp"

namespace batchcover {

// Bijection between canonical set labels (the construction's numbering) and
// the labels the algorithm sees. Starts as the identity; an adaptive
// adversary swaps the set the algorithm invested in out of the active pool
// after each batch.
struct RelabelMap {
    std::vector<int> canon_to_facing;  // 0-based

    static RelabelMap identity(int m);
    bool is_identity() const;
    int facing(int canon) const { return canon_to_facing[static_cast<std::size_t>(canon)]; }
};

// Worst-case online family: m singleton batches, element k living in the
// intersection of the not-yet-designated sets {S_k, ..., S_m}.
Instance gen_online_worst(int m);

// Worst-case batched family for a VC-dimension floor of z: m - 2^z + 1
// batches of z+1 elements each. Batch k shatters its z leading elements
// against the window S_k..S_{2^z+k-1} (window set at offset b contains
// element q iff bit q-1 of b is set; the all-ones offset is the designated
// set S_{2^z+k-1}, which contains the whole batch), every element also lies
// in all of S_{2^z+k-1}..S_m, and the closing element lies in exactly those.
// Throws AdversaryImpossible if m < 2^z.
Instance gen_batched_worst(int m, int z);

// After the algorithm finished batch k (1-based), returns the relabeling in
// which the eligible canonical label in {2^z+k-1, ..., m} whose facing set
// carries the largest primal value takes canonical label 2^z+k-1 (ties break
// toward the smallest facing index), excluding it from later batches.
RelabelMap adaptive_relabel(std::span<const double> x, const RelabelMap& relabel, int k, int m,
                            int z);

// Drives the batched-worst construction against a live algorithm: batches
// come out one at a time under the current relabeling, and observe() applies
// adaptive_relabel to the algorithm's primal vector. With adaptive=false the
// relabeling stays the identity and the emitted instance equals
// gen_batched_worst(m, z).
class AdaptiveAdversary {
public:
    // Throws AdversaryImpossible if m < 2^z.
    AdaptiveAdversary(int m, int z, bool adaptive);

    int num_batches() const { return num_batches_; }
    bool done() const { return next_k_ > num_batches_; }

    Batch next_batch();
    void observe(std::span<const double> x);

    // The instance revealed so far (system + emitted batches).
    const Instance& revealed_instance() const { return revealed_; }
    const RelabelMap& relabel() const { return relabel_; }

private:
    int m_;
    int z_;
    int num_batches_;
    int next_k_ = 1;
    bool adaptive_;
    RelabelMap relabel_;
    Instance revealed_;
};

}  // namespace batchcover
