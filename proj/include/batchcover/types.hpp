#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace batchcover {

// Thrown when an operation receives arguments outside its contract.
class InvalidArguments : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown by lower_bound(m, z) when m < 2^z.
class BoundUndefined : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Thrown when an exact enumeration guard would be exceeded.
class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a VC-dimension restriction cannot be met (num_sets < 2^z);
// the adversary is unable to produce any batches.
class AdversaryImpossible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an instance admits no cover (some element is uncoverable).
class Infeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The collection S of m cost-weighted sets. Memberships are stored on the
// elements (element -> sets), not here.
struct SetSystem {
    int num_sets = 0;
    std::vector<double> costs;  // size num_sets, each > 0
    std::string name;           // optional label

    static SetSystem unweighted(int m) {
        SetSystem s;
        s.num_sets = m;
        s.costs.assign(static_cast<std::size_t>(m > 0 ? m : 0), 1.0);
        return s;
    }

    bool operator==(const SetSystem&) const = default;
};

// One covering constraint: the element sigma_{k,q} and the sets containing it.
// batch_index is the 1-based batch ordinal; position is 0-based within the
// batch. Set indices in member_of are 0-based internally and sorted; they are
// rendered 1-based at serialization boundaries only.
struct Element {
    int batch_index = 0;
    int position = 0;
    std::vector<int> member_of;

    // External identifier "k.q" used in files and diagnostics.
    std::string id() const {
        return std::to_string(batch_index) + "." + std::to_string(position);
    }

    bool operator==(const Element&) const = default;
};

struct Batch {
    std::vector<Element> elements;

    bool operator==(const Batch&) const = default;
};

struct InstanceMeta {
    std::string family;  // "I" (online family) or "Iz" (batched family)
    int z = 0;
    int m = 0;

    bool operator==(const InstanceMeta&) const = default;
};

// A set system together with the adversarial batch sequence.
struct Instance {
    SetSystem system;
    std::vector<Batch> batches;
    std::optional<InstanceMeta> meta;

    int num_elements() const {
        std::size_t n = 0;
        for (const Batch& b : batches) n += b.elements.size();
        return static_cast<int>(n);
    }

    bool operator==(const Instance&) const = default;
};

enum class Algorithm {
    Trivial,    // sequences each batch and raises duals one element at a time
    Dedicated,  // raises duals of all unsatisfied elements of a batch together
};

inline std::string_view algorithm_name(Algorithm a) {
    return a == Algorithm::Trivial ? "trivial" : "dedicated";
}

inline Algorithm algorithm_from_name(std::string_view name) {
    if (name == "trivial") return Algorithm::Trivial;
    if (name == "dedicated") return Algorithm::Dedicated;
    throw InvalidArguments("unknown algorithm: " + std::string(name));
}

}  // namespace batchcover
