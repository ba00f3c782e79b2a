#include "batchcover/vc.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace batchcover {

namespace {

// One bitmask per set: bit i set iff the set contains element i of the list.
std::vector<std::uint32_t> intersection_patterns(std::span<const Element> elements, int num_sets) {
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(num_sets), 0u);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (int j : elements[i].member_of) {
            if (j >= 0 && j < num_sets) mask[static_cast<std::size_t>(j)] |= 1u << i;
        }
    }
    std::sort(mask.begin(), mask.end());
    mask.erase(std::unique(mask.begin(), mask.end()), mask.end());
    return mask;
}

bool mask_is_shattered(const std::vector<std::uint32_t>& patterns, std::uint32_t subset,
                       int subset_size, std::vector<std::uint32_t>& scratch) {
    const std::size_t want = std::size_t{1} << subset_size;
    if (patterns.size() < want) return false;
    scratch.clear();
    for (std::uint32_t p : patterns) scratch.push_back(p & subset);
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    return scratch.size() == want;
}

void guard_size(std::size_t n) {
    if (n > static_cast<std::size_t>(kMaxShatterElements)) {
        throw TooLarge("shattering check limited to " + std::to_string(kMaxShatterElements) +
                       " elements, got " + std::to_string(n));
    }
}

}  // namespace

bool is_shattered(std::span<const Element> subset, int num_sets) {
    guard_size(subset.size());
    if (num_sets < 1) return false;  // no sets, nothing realizes any pattern
    const auto patterns = intersection_patterns(subset, num_sets);
    return patterns.size() == (std::size_t{1} << subset.size());
}

int vc_dimension(const Batch& batch, const SetSystem& system) {
    guard_size(batch.elements.size());
    const int n = static_cast<int>(batch.elements.size());
    const auto patterns = intersection_patterns(batch.elements, system.num_sets);
    std::vector<std::uint32_t> scratch;
    scratch.reserve(patterns.size());
    for (int size = n; size >= 1; --size) {
        // Gosper's hack over all n-bit masks with `size` bits set.
        std::uint32_t subset = (1u << size) - 1u;
        const std::uint32_t limit = 1u << n;
        while (subset < limit) {
            if (mask_is_shattered(patterns, subset, size, scratch)) return size;
            const std::uint32_t c = subset & (0u - subset);
            const std::uint32_t r = subset + c;
            subset = (((r ^ subset) >> 2) / c) | r;
        }
    }
    // The empty set is shattered whenever the collection is non-empty.
    return 0;
}

bool check_adversary_restriction(const Instance& inst, int z) {
    if (z < 0) throw InvalidArguments("check_adversary_restriction: z must be non-negative");
    if (z >= 31 || inst.system.num_sets < (1 << z)) {
        throw AdversaryImpossible(
            "with num_sets=" + std::to_string(inst.system.num_sets) + " < 2^z (z=" +
            std::to_string(z) + ") the adversary is unable to produce any batches");
    }
    for (const Batch& batch : inst.batches) {
        if (vc_dimension(batch, inst.system) < z) return false;
    }
    return true;
}

}  // namespace batchcover
