#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "batchcover/types.hpp"

namespace batchcover::testutil {

// splitmix64, kept separate from the library so tests stay reproducible even
// if the solver's shuffling changes.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t v = (state += 0x9E3779B97F4A7C15ull);
        v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
        v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
        return v ^ (v >> 31);
    }
    int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Random feasible instance: every element gets a non-empty membership list.
inline Instance random_instance(Rng& rng, int max_sets = 8, int max_batches = 4,
                                int max_batch_size = 4, bool weighted = false) {
    Instance inst;
    const int m = 1 + rng.below(max_sets);
    inst.system.num_sets = m;
    inst.system.costs.resize(static_cast<std::size_t>(m));
    for (double& c : inst.system.costs) c = weighted ? 0.5 + 1.5 * rng.uniform01() : 1.0;

    const int num_batches = 1 + rng.below(max_batches);
    for (int k = 1; k <= num_batches; ++k) {
        Batch batch;
        const int size = 1 + rng.below(max_batch_size);
        for (int q = 0; q < size; ++q) {
            Element e;
            e.batch_index = k;
            e.position = q;
            for (int j = 0; j < m; ++j) {
                if (rng.uniform01() < 0.45) e.member_of.push_back(j);
            }
            if (e.member_of.empty()) e.member_of.push_back(rng.below(m));
            batch.elements.push_back(std::move(e));
        }
        inst.batches.push_back(std::move(batch));
    }
    return inst;
}

// First-principles minimum-cost cover by enumerating all 2^m set subsets.
inline double brute_force_opt(const Instance& inst) {
    const int m = inst.system.num_sets;
    double best = -1.0;
    for (int choice = 0; choice < (1 << m); ++choice) {
        bool covers = true;
        for (const Batch& b : inst.batches) {
            for (const Element& e : b.elements) {
                bool hit = false;
                for (int j : e.member_of) {
                    if (choice >> j & 1) {
                        hit = true;
                        break;
                    }
                }
                if (!hit) {
                    covers = false;
                    break;
                }
            }
            if (!covers) break;
        }
        if (!covers) continue;
        double cost = 0.0;
        for (int j = 0; j < m; ++j) {
            if (choice >> j & 1) cost += inst.system.costs[static_cast<std::size_t>(j)];
        }
        if (best < 0.0 || cost < best) best = cost;
    }
    return best;
}

// Shattering re-derived from the definition with plain set machinery.
inline bool naive_is_shattered(const std::vector<Element>& subset, int num_sets) {
    std::set<std::set<int>> realized;
    for (int j = 0; j < num_sets; ++j) {
        std::set<int> pattern;
        for (std::size_t i = 0; i < subset.size(); ++i) {
            for (int sj : subset[i].member_of) {
                if (sj == j) pattern.insert(static_cast<int>(i));
            }
        }
        realized.insert(pattern);
    }
    // every subset of indices must be realized
    const std::size_t n = subset.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::set<int> want;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) want.insert(static_cast<int>(i));
        }
        if (realized.find(want) == realized.end()) return false;
    }
    return true;
}

inline int naive_vc_dimension(const Batch& batch, int num_sets) {
    const std::size_t n = batch.elements.size();
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Element> subset;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) subset.push_back(batch.elements[i]);
        }
        if (naive_is_shattered(subset, num_sets)) {
            best = std::max(best, static_cast<int>(subset.size()));
        }
    }
    return best;
}

// The minimal shattered construction: 2^z sets, z elements, set at offset b
// contains element q iff bit q of b is set.
inline Instance minimal_shattered_core(int z) {
    Instance inst;
    const int m = 1 << z;
    inst.system = SetSystem::unweighted(m);
    Batch batch;
    for (int q = 0; q < z; ++q) {
        Element e;
        e.batch_index = 1;
        e.position = q;
        for (int b = 0; b < m; ++b) {
            if (b >> q & 1) e.member_of.push_back(b);
        }
        batch.elements.push_back(std::move(e));
    }
    if (!batch.elements.empty()) inst.batches.push_back(std::move(batch));
    return inst;
}

}  // namespace batchcover::testutil
