#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "batchcover/types.hpp"

namespace batchcover {

// Closed-form primal value for one set: (1/d) * (exp(ln(1+d)/cost * dual_mass) - 1).
// Zero at dual_mass = 0, exactly 1 at dual_mass = cost, strictly increasing
// and convex in dual_mass.
double x_value(double cost, int d, double dual_mass);

// Choice of the row-sparsity parameter d. The online-safe default is the
// number of sets; the true max row sparsity can only be read off a fully
// known instance.
struct DPolicy {
    enum class Mode { NumSets, MaxRowSparsity, Fixed };

    Mode mode = Mode::NumSets;
    int fixed = 0;

    static DPolicy num_sets() { return {}; }
    static DPolicy max_row_sparsity() { return {Mode::MaxRowSparsity, 0}; }
    static DPolicy fixed_value(int d) { return {Mode::Fixed, d}; }

    int resolve(const Instance& inst) const;
};

struct RevealedElement {
    int batch_index = 0;
    int position = 0;
    std::vector<int> member_of;
    std::int64_t y_steps = 0;  // dual value = y_steps * epsilon
};

// Evolving primal/dual state. Duals move on the epsilon grid (integer step
// counts); x is always the closed form of the accumulated per-set steps,
// never updated incrementally.
struct FractionalState {
    int d = 1;
    double epsilon = 1e-3;
    std::vector<double> x;                  // per set
    std::vector<std::int64_t> set_steps;    // per set: sum of y_steps of its elements
    std::vector<RevealedElement> revealed;  // processed constraints, arrival order

    double y_of(std::size_t i) const { return static_cast<double>(revealed[i].y_steps) * epsilon; }
    double set_dual_mass(int j) const {
        return static_cast<double>(set_steps[static_cast<std::size_t>(j)]) * epsilon;
    }
    double coverage(std::span<const int> member_of) const;
    double dual_value() const;
};

// Incremental runner for either algorithm; batches must arrive in sequence
// order. One solver owns its state for one run.
class PrimalDualSolver {
public:
    PrimalDualSolver(Algorithm algorithm, SetSystem system, int d, double epsilon);

    // Processes the batch to primal feasibility. `order` (trivial only)
    // permutes the within-batch element sequence; empty means position order.
    void process_batch(const Batch& batch, std::span<const int> order = {});

    const FractionalState& state() const { return state_; }
    const SetSystem& system() const { return system_; }
    double primal_cost() const;
    double dual_value() const { return state_.dual_value(); }

private:
    void bump(std::size_t element_index);

    Algorithm algorithm_;
    SetSystem system_;
    FractionalState state_;
};

struct TracePoint {
    int batch = 0;  // 1-based
    double primal_cost_after = 0.0;

    bool operator==(const TracePoint&) const = default;
};

struct RunResult {
    Algorithm algorithm = Algorithm::Trivial;
    double primal_cost = 0.0;
    double dual_value = 0.0;
    double opt_cost = 0.0;
    double ratio = 0.0;
    std::vector<TracePoint> per_batch_trace;
    double epsilon = 0.0;
    int d = 0;
};

struct RunOptions {
    double epsilon = 1e-3;
    DPolicy d_policy{};
    // Trivial only: shuffle each batch's processing order with this seed.
    std::optional<std::uint64_t> shuffle_seed;
    // Called after each batch completes, with the 1-based batch index.
    std::function<void(int, const FractionalState&)> checkpoint;
};

RunResult run_algorithm(Algorithm algorithm, const Instance& inst, const RunOptions& opts = {});
RunResult run_trivial(const Instance& inst, const RunOptions& opts = {});
RunResult run_dedicated(const Instance& inst, const RunOptions& opts = {});

// Exact-search ceiling for the offline oracle.
inline constexpr int kMaxExactOptSets = 30;

struct OptResult {
    double cost = 0.0;
    std::vector<int> chosen_sets;  // 0-based, sorted
    bool exact = true;
};

// Minimum-cost integral cover of all revealed elements, by branch and bound
// with a greedy upper bound and an efficiency lower bound. Exact up to
// kMaxExactOptSets sets; beyond that throws TooLarge unless the greedy
// fallback is requested. Throws Infeasible if some element is uncoverable.
OptResult offline_opt(const Instance& inst, bool allow_greedy_fallback = false);

}  // namespace batchcover
