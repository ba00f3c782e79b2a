#include "batchcover/core.hpp"

#include <algorithm>
#include <set>

namespace batchcover {

double harmonic(std::int64_t r) {
    if (r < 0) throw InvalidArguments("harmonic: r must be non-negative");
    double sum = 0.0;
    for (std::int64_t i = 1; i <= r; ++i) sum += 1.0 / static_cast<double>(i);
    return sum;
}

double lower_bound(int m, int z) {
    if (m < 1) throw InvalidArguments("lower_bound: m must be positive");
    if (z < 0) throw InvalidArguments("lower_bound: z must be non-negative");
    if (z >= 31 || m < (1 << z)) {
        throw BoundUndefined("lower_bound: requires m >= 2^z (m=" + std::to_string(m) +
                             ", z=" + std::to_string(z) + ")");
    }
    return harmonic(m - (1LL << z) + 1);
}

bool harmonic_split_inequality(std::int64_t r, std::int64_t t) {
    if (t < 0 || t > r) throw InvalidArguments("harmonic_split_inequality: requires r >= t >= 0");
    return harmonic(r) > 0.5 * (harmonic(r - t) + harmonic(t));
}

std::vector<int> covering_sets_of(const Batch& batch) {
    std::set<int> sets;
    for (const Element& e : batch.elements) sets.insert(e.member_of.begin(), e.member_of.end());
    return {sets.begin(), sets.end()};
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> violations;
    const int m = inst.system.num_sets;

    if (m < 1) violations.push_back("system has num_sets=" + std::to_string(m) + ", need at least 1");
    if (static_cast<int>(inst.system.costs.size()) != m) {
        violations.push_back("system has " + std::to_string(inst.system.costs.size()) +
                             " costs for " + std::to_string(m) + " sets");
    }
    for (std::size_t j = 0; j < inst.system.costs.size(); ++j) {
        if (!(inst.system.costs[j] > 0.0)) {
            violations.push_back("set " + std::to_string(j + 1) + " has non-positive cost");
        }
    }

    for (std::size_t bi = 0; bi < inst.batches.size(); ++bi) {
        const Batch& batch = inst.batches[bi];
        const int k = static_cast<int>(bi) + 1;
        if (batch.elements.empty()) {
            violations.push_back("batch " + std::to_string(k) + " is empty");
            continue;
        }
        for (std::size_t ei = 0; ei < batch.elements.size(); ++ei) {
            const Element& e = batch.elements[ei];
            if (e.batch_index != k) {
                violations.push_back("element " + e.id() + " sits in batch " + std::to_string(k));
            }
            if (e.position != static_cast<int>(ei)) {
                violations.push_back("element " + e.id() + " sits at position " + std::to_string(ei));
            }
            if (e.member_of.empty()) {
                violations.push_back("element " + e.id() + " uncoverable");
                continue;
            }
            if (!std::is_sorted(e.member_of.begin(), e.member_of.end()) ||
                std::adjacent_find(e.member_of.begin(), e.member_of.end()) != e.member_of.end()) {
                violations.push_back("element " + e.id() + " member_of not sorted/duplicate-free");
            }
            for (int j : e.member_of) {
                if (j < 0) {
                    violations.push_back("element " + e.id() + " references set " +
                                         std::to_string(j + 1) + " < 1");
                } else if (j >= m) {
                    violations.push_back("element " + e.id() + " references set " +
                                         std::to_string(j + 1) + " > m=" + std::to_string(m));
                }
            }
        }
    }
    return violations;
}

}  // namespace batchcover
