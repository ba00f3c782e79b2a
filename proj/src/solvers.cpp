#include "batchcover/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "batchcover/core.hpp"

namespace batchcover {

double x_value(double cost, int d, double dual_mass) {
    if (!(cost > 0.0)) throw InvalidArguments("x_value: cost must be positive");
    if (d < 1) throw InvalidArguments("x_value: d must be at least 1");
    if (dual_mass < 0.0) throw InvalidArguments("x_value: dual_mass must be non-negative");
    return std::expm1(std::log1p(static_cast<double>(d)) / cost * dual_mass) /
           static_cast<double>(d);
}

int DPolicy::resolve(const Instance& inst) const {
    switch (mode) {
        case Mode::NumSets:
            return inst.system.num_sets;
        case Mode::MaxRowSparsity: {
            std::size_t widest = 1;
            for (const Batch& b : inst.batches) {
                for (const Element& e : b.elements) widest = std::max(widest, e.member_of.size());
            }
            return static_cast<int>(widest);
        }
        case Mode::Fixed:
            if (fixed < 1) throw InvalidArguments("d must be at least 1");
            return fixed;
    }
    throw InvalidArguments("unknown d policy");
}

double FractionalState::coverage(std::span<const int> member_of) const {
    double sum = 0.0;
    for (int j : member_of) sum += x[static_cast<std::size_t>(j)];
    return sum;
}

double FractionalState::dual_value() const {
    std::int64_t steps = 0;
    for (const RevealedElement& e : revealed) steps += e.y_steps;
    return static_cast<double>(steps) * epsilon;
}

PrimalDualSolver::PrimalDualSolver(Algorithm algorithm, SetSystem system, int d, double epsilon)
    : algorithm_(algorithm), system_(std::move(system)) {
    if (d < 1) throw InvalidArguments("solver: d must be at least 1");
    if (!(epsilon > 0.0)) throw InvalidArguments("solver: epsilon must be positive");
    state_.d = d;
    state_.epsilon = epsilon;
    state_.x.assign(static_cast<std::size_t>(system_.num_sets), 0.0);
    state_.set_steps.assign(static_cast<std::size_t>(system_.num_sets), 0);
}

void PrimalDualSolver::bump(std::size_t element_index) {
    RevealedElement& e = state_.revealed[element_index];
    ++e.y_steps;
    for (int j : e.member_of) {
        const auto sj = static_cast<std::size_t>(j);
        ++state_.set_steps[sj];
        state_.x[sj] = x_value(system_.costs[sj], state_.d, state_.set_dual_mass(j));
    }
}

void PrimalDualSolver::process_batch(const Batch& batch, std::span<const int> order) {
    const std::size_t first = state_.revealed.size();
    for (const Element& e : batch.elements) {
        if (e.member_of.empty()) throw Infeasible("element " + e.id() + " uncoverable");
        state_.revealed.push_back({e.batch_index, e.position, e.member_of, 0});
    }
    const std::size_t count = batch.elements.size();

    if (algorithm_ == Algorithm::Trivial) {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t pick = order.empty() ? i : static_cast<std::size_t>(order[i]);
            const std::size_t idx = first + pick;
            while (state_.coverage(state_.revealed[idx].member_of) < 1.0) bump(idx);
        }
    } else {
        std::vector<std::size_t> unsatisfied;
        for (;;) {
            unsatisfied.clear();
            for (std::size_t i = 0; i < count; ++i) {
                if (state_.coverage(state_.revealed[first + i].member_of) < 1.0) {
                    unsatisfied.push_back(first + i);
                }
            }
            if (unsatisfied.empty()) break;
            for (std::size_t idx : unsatisfied) bump(idx);
        }
    }
}

double PrimalDualSolver::primal_cost() const {
    double cost = 0.0;
    for (std::size_t j = 0; j < state_.x.size(); ++j) cost += system_.costs[j] * state_.x[j];
    return cost;
}

namespace {

// splitmix64; self-contained so shuffled orders are reproducible everywhere.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t v = (state += 0x9E3779B97F4A7C15ull);
        v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
        v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
        return v ^ (v >> 31);
    }
    // uniform in [0, bound) by rejection
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }
};

std::vector<int> shuffled_order(std::size_t n, SplitMix64& rng) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
    }
    return order;
}

void require_valid(const Instance& inst) {
    const auto violations = validate_instance(inst);
    if (violations.empty()) return;
    for (const std::string& v : violations) {
        if (v.find("uncoverable") != std::string::npos) throw Infeasible(v);
    }
    std::string all = "invalid instance:";
    for (const std::string& v : violations) all += " [" + v + "]";
    throw InvalidArguments(all);
}

}  // namespace

RunResult run_algorithm(Algorithm algorithm, const Instance& inst, const RunOptions& opts) {
    require_valid(inst);
    if (inst.batches.empty()) throw InvalidArguments("instance has no batches");
    const int d = opts.d_policy.resolve(inst);

    PrimalDualSolver solver(algorithm, inst.system, d, opts.epsilon);
    SplitMix64 rng{opts.shuffle_seed.value_or(0)};

    RunResult result;
    result.algorithm = algorithm;
    result.epsilon = opts.epsilon;
    result.d = d;
    int k = 0;
    for (const Batch& batch : inst.batches) {
        ++k;
        if (algorithm == Algorithm::Trivial && opts.shuffle_seed) {
            const auto order = shuffled_order(batch.elements.size(), rng);
            solver.process_batch(batch, order);
        } else {
            solver.process_batch(batch);
        }
        result.per_batch_trace.push_back({k, solver.primal_cost()});
        if (opts.checkpoint) opts.checkpoint(k, solver.state());
    }

    result.primal_cost = solver.primal_cost();
    result.dual_value = solver.dual_value();
    const OptResult opt = offline_opt(inst);
    result.opt_cost = opt.cost;
    result.ratio = result.primal_cost / result.opt_cost;
    return result;
}

RunResult run_trivial(const Instance& inst, const RunOptions& opts) {
    return run_algorithm(Algorithm::Trivial, inst, opts);
}

RunResult run_dedicated(const Instance& inst, const RunOptions& opts) {
    return run_algorithm(Algorithm::Dedicated, inst, opts);
}

namespace {

struct CoverProblem {
    int num_sets = 0;
    std::vector<double> costs;
    std::vector<std::uint64_t> element_masks;  // deduplicated, non-dominated
};

// Keeps only constraints that are minimal under inclusion: covering a subset
// constraint also covers any superset of it.
CoverProblem build_cover_problem(const Instance& inst) {
    CoverProblem p;
    p.num_sets = inst.system.num_sets;
    p.costs = inst.system.costs;
    std::vector<std::uint64_t> masks;
    for (const Batch& b : inst.batches) {
        for (const Element& e : b.elements) {
            if (e.member_of.empty()) throw Infeasible("element " + e.id() + " uncoverable");
            std::uint64_t mask = 0;
            for (int j : e.member_of) mask |= std::uint64_t{1} << j;
            masks.push_back(mask);
        }
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    for (std::uint64_t a : masks) {
        bool dominated = false;
        for (std::uint64_t b : masks) {
            if (b != a && (a & b) == b) {
                dominated = true;
                break;
            }
        }
        if (!dominated) p.element_masks.push_back(a);
    }
    return p;
}

std::uint64_t set_hit_mask(int j, const std::vector<std::uint64_t>& masks) {
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (masks[i] >> j & 1) hits |= std::uint64_t{1} << i;
    }
    return hits;
}

struct BnB {
    const CoverProblem& p;
    std::vector<std::uint64_t> hit_masks;  // per set: which constraints it satisfies
    std::uint64_t all_constraints;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_sets;
    std::vector<int> current;

    explicit BnB(const CoverProblem& problem) : p(problem) {
        for (int j = 0; j < p.num_sets; ++j) hit_masks.push_back(set_hit_mask(j, p.element_masks));
        all_constraints = p.element_masks.size() == 64
                              ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << p.element_masks.size()) - 1;
    }

    double greedy(std::uint64_t covered, std::vector<int>* sets_out) const {
        double cost = 0.0;
        std::vector<int> chosen;
        while (covered != all_constraints) {
            int best = -1;
            double best_eff = std::numeric_limits<double>::infinity();
            for (int j = 0; j < p.num_sets; ++j) {
                const int gain = std::popcount(hit_masks[static_cast<std::size_t>(j)] & ~covered);
                if (gain == 0) continue;
                const double eff = p.costs[static_cast<std::size_t>(j)] / gain;
                if (eff < best_eff) {
                    best_eff = eff;
                    best = j;
                }
            }
            if (best < 0) throw Infeasible("some element is uncoverable");
            chosen.push_back(best);
            cost += p.costs[static_cast<std::size_t>(best)];
            covered |= hit_masks[static_cast<std::size_t>(best)];
        }
        if (sets_out) *sets_out = std::move(chosen);
        return cost;
    }

    // cost of any completion is at least (#unsatisfied) * min_j cost_j / hits_j
    double lower_bound_remaining(std::uint64_t covered) const {
        const std::uint64_t open = all_constraints & ~covered;
        if (open == 0) return 0.0;
        const int remaining = std::popcount(open);
        double best_eff = std::numeric_limits<double>::infinity();
        for (int j = 0; j < p.num_sets; ++j) {
            const int gain = std::popcount(hit_masks[static_cast<std::size_t>(j)] & open);
            if (gain > 0) best_eff = std::min(best_eff, p.costs[static_cast<std::size_t>(j)] / gain);
        }
        return remaining * best_eff;
    }

    void search(std::uint64_t covered, double cost) {
        if (covered == all_constraints) {
            if (cost < best_cost) {
                best_cost = cost;
                best_sets = current;
            }
            return;
        }
        if (cost + lower_bound_remaining(covered) >= best_cost) return;

        // branch on the open constraint with the fewest candidate sets
        int pick = -1;
        int fewest = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < p.element_masks.size(); ++i) {
            if (covered >> i & 1) continue;
            const int candidates = std::popcount(p.element_masks[i]);
            if (candidates < fewest) {
                fewest = candidates;
                pick = static_cast<int>(i);
            }
        }
        std::uint64_t sets = p.element_masks[static_cast<std::size_t>(pick)];
        while (sets) {
            const int j = std::countr_zero(sets);
            sets &= sets - 1;
            current.push_back(j);
            search(covered | hit_masks[static_cast<std::size_t>(j)],
                   cost + p.costs[static_cast<std::size_t>(j)]);
            current.pop_back();
        }
    }
};

OptResult greedy_only(const Instance& inst) {
    // no bitmask ceiling: plain counting over candidate sets
    std::vector<std::vector<int>> members;
    for (const Batch& b : inst.batches) {
        for (const Element& e : b.elements) {
            if (e.member_of.empty()) throw Infeasible("element " + e.id() + " uncoverable");
            members.push_back(e.member_of);
        }
    }
    std::vector<bool> covered(members.size(), false);
    std::size_t open = members.size();
    OptResult result;
    result.exact = false;
    std::vector<bool> chosen(static_cast<std::size_t>(inst.system.num_sets), false);
    while (open > 0) {
        std::vector<int> gain(static_cast<std::size_t>(inst.system.num_sets), 0);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (covered[i]) continue;
            for (int j : members[i]) ++gain[static_cast<std::size_t>(j)];
        }
        int best = -1;
        double best_eff = std::numeric_limits<double>::infinity();
        for (int j = 0; j < inst.system.num_sets; ++j) {
            if (gain[static_cast<std::size_t>(j)] == 0) continue;
            const double eff =
                inst.system.costs[static_cast<std::size_t>(j)] / gain[static_cast<std::size_t>(j)];
            if (eff < best_eff) {
                best_eff = eff;
                best = j;
            }
        }
        if (best < 0) throw Infeasible("some element is uncoverable");
        chosen[static_cast<std::size_t>(best)] = true;
        result.cost += inst.system.costs[static_cast<std::size_t>(best)];
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (!covered[i] &&
                std::find(members[i].begin(), members[i].end(), best) != members[i].end()) {
                covered[i] = true;
                --open;
            }
        }
    }
    for (int j = 0; j < inst.system.num_sets; ++j) {
        if (chosen[static_cast<std::size_t>(j)]) result.chosen_sets.push_back(j);
    }
    return result;
}

}  // namespace

OptResult offline_opt(const Instance& inst, bool allow_greedy_fallback) {
    if (inst.system.num_sets < 1) throw InvalidArguments("offline_opt: instance has no sets");
    if (inst.system.num_sets > kMaxExactOptSets) {
        if (allow_greedy_fallback) return greedy_only(inst);
        throw TooLarge("offline_opt: exact search limited to " + std::to_string(kMaxExactOptSets) +
                       " sets, got " + std::to_string(inst.system.num_sets) +
                       " (request the greedy fallback for a bound)");
    }

    const CoverProblem p = build_cover_problem(inst);
    if (p.element_masks.empty()) return {0.0, {}, true};
    if (p.element_masks.size() > 64) {
        // cannot happen for <= 30 sets: there are at most 2^30 distinct masks
        // but at most ~m minimal ones after domination pruning... guard anyway
        if (allow_greedy_fallback) return greedy_only(inst);
        throw TooLarge("offline_opt: too many distinct constraints");
    }

    BnB bnb(p);
    bnb.best_cost = bnb.greedy(0, &bnb.best_sets);
    bnb.search(0, 0.0);

    OptResult result;
    result.cost = bnb.best_cost;
    result.chosen_sets = bnb.best_sets;
    std::sort(result.chosen_sets.begin(), result.chosen_sets.end());
    result.chosen_sets.erase(std::unique(result.chosen_sets.begin(), result.chosen_sets.end()),
                             result.chosen_sets.end());
    result.exact = true;
    return result;
}

}  // namespace batchcover
