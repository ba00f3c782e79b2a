#include "batchcover/generators.hpp"

#include <algorithm>
#include <numeric>

namespace batchcover {

namespace {

void require_window(int m, int z) {
    if (m < 1) throw InvalidArguments("generator: m must be positive");
    if (z < 0) throw InvalidArguments("generator: z must be non-negative");
    if (z >= 31 || m < (1 << z)) {
        throw AdversaryImpossible("with m=" + std::to_string(m) + " < 2^z (z=" + std::to_string(z) +
                                  ") the adversary is unable to produce any batches");
    }
}

// Canonical (identity-labeled) batch k, 1-based. Element order puts the
// closing element sigma_{k,z+1} last.
Batch canonical_batch(int m, int z, int k) {
    const int window = 1 << z;
    const int designated = window + k - 2;  // 0-based index of S_{2^z+k-1}
    Batch batch;
    for (int q = 1; q <= z; ++q) {
        Element e;
        e.batch_index = k;
        e.position = q - 1;
        for (int b = 0; b < window; ++b) {
            if ((b >> (q - 1)) & 1) e.member_of.push_back(k - 1 + b);
        }
        for (int j = designated; j < m; ++j) {
            if (e.member_of.empty() || e.member_of.back() != j) e.member_of.push_back(j);
        }
        batch.elements.push_back(std::move(e));
    }
    Element closing;
    closing.batch_index = k;
    closing.position = z;
    for (int j = designated; j < m; ++j) closing.member_of.push_back(j);
    batch.elements.push_back(std::move(closing));
    return batch;
}

Batch relabel_batch(Batch batch, const RelabelMap& relabel) {
    for (Element& e : batch.elements) {
        for (int& j : e.member_of) j = relabel.facing(j);
        std::sort(e.member_of.begin(), e.member_of.end());
    }
    return batch;
}

}  // namespace

RelabelMap RelabelMap::identity(int m) {
    RelabelMap r;
    r.canon_to_facing.resize(static_cast<std::size_t>(m));
    std::iota(r.canon_to_facing.begin(), r.canon_to_facing.end(), 0);
    return r;
}

bool RelabelMap::is_identity() const {
    for (std::size_t i = 0; i < canon_to_facing.size(); ++i) {
        if (canon_to_facing[i] != static_cast<int>(i)) return false;
    }
    return true;
}

Instance gen_online_worst(int m) {
    Instance inst = gen_batched_worst(m, 0);
    inst.meta = InstanceMeta{"I", 0, m};
    return inst;
}

Instance gen_batched_worst(int m, int z) {
    require_window(m, z);
    Instance inst;
    inst.system = SetSystem::unweighted(m);
    const int num_batches = m - (1 << z) + 1;
    for (int k = 1; k <= num_batches; ++k) inst.batches.push_back(canonical_batch(m, z, k));
    inst.meta = InstanceMeta{"Iz", z, m};
    return inst;
}

RelabelMap adaptive_relabel(std::span<const double> x, const RelabelMap& relabel, int k, int m,
                            int z) {
    require_window(m, z);
    const int boundary = (1 << z) + k - 2;  // 0-based canonical label 2^z+k-1
    if (boundary < 0 || boundary >= m) {
        throw InvalidArguments("adaptive_relabel: batch index " + std::to_string(k) +
                               " out of range");
    }
    int best_canon = boundary;
    for (int canon = boundary; canon < m; ++canon) {
        const int f = relabel.facing(canon);
        const int best_f = relabel.facing(best_canon);
        const double xf = x[static_cast<std::size_t>(f)];
        const double xb = x[static_cast<std::size_t>(best_f)];
        if (xf > xb || (xf == xb && f < best_f)) best_canon = canon;
    }
    RelabelMap updated = relabel;
    std::swap(updated.canon_to_facing[static_cast<std::size_t>(boundary)],
              updated.canon_to_facing[static_cast<std::size_t>(best_canon)]);
    return updated;
}

AdaptiveAdversary::AdaptiveAdversary(int m, int z, bool adaptive)
    : m_(m), z_(z), adaptive_(adaptive), relabel_(RelabelMap::identity(m)) {
    require_window(m, z);
    num_batches_ = m - (1 << z) + 1;
    revealed_.system = SetSystem::unweighted(m);
    revealed_.meta = InstanceMeta{"Iz", z, m};
}

Batch AdaptiveAdversary::next_batch() {
    if (done()) throw InvalidArguments("adversary exhausted: all batches already revealed");
    Batch batch = relabel_batch(canonical_batch(m_, z_, next_k_), relabel_);
    revealed_.batches.push_back(batch);
    ++next_k_;
    return batch;
}

void AdaptiveAdversary::observe(std::span<const double> x) {
    if (!adaptive_) return;
    const int finished = next_k_ - 1;
    if (finished < 1) throw InvalidArguments("observe before any batch was revealed");
    relabel_ = adaptive_relabel(x, relabel_, finished, m_, z_);
}

}  // namespace batchcover
