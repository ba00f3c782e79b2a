#pragma once

#include <filesystem>
#include <iosfwd>

#include "batchcover/solvers.hpp"
#include "batchcover/types.hpp"

namespace batchcover {

// Parameter sweep over the batched-worst families: one cell per
// (z, m, algorithm) with m in [m_min, m_max]. Cells with m < 2^z are
// infeasible for the restricted adversary; they are skipped and recorded.
struct ExperimentGrid {
    std::vector<int> z_values{0, 1, 2, 3, 4};
    int m_min = 1;
    int m_max = 30;
    double epsilon = 1e-3;
    std::vector<Algorithm> algorithms{Algorithm::Trivial, Algorithm::Dedicated};
    bool adaptive = true;  // drive the generator against the live algorithm
};

struct GridRow {
    int z = 0;
    int m = 0;
    Algorithm algorithm = Algorithm::Trivial;
    double epsilon = 0.0;
    double alg_cost = 0.0;
    double opt_cost = 0.0;
    double ratio = 0.0;
    double lower_bound = 0.0;
};

struct SkippedCell {
    int z = 0;
    int m = 0;
    std::string reason;
};

struct FailedCell {
    int z = 0;
    int m = 0;
    std::string algorithm;
    std::string error;
};

struct GridResult {
    std::vector<GridRow> rows;
    std::vector<SkippedCell> skipped;
    std::vector<FailedCell> failed;
};

// Runs every valid cell; per-cell failures are recorded without aborting the
// sweep. Deterministic for a fixed grid.
GridResult run_grid(const ExperimentGrid& grid);

struct SearchResult {
    double best_ratio = 0.0;
    // one entry per singleton batch, each a sorted 0-based membership list
    std::vector<std::vector<int>> best_sequence;
};

// Exhaustive search over all online element sequences of length <= max_len on
// m sets (every non-empty membership pattern per step), returning the highest
// algorithm-vs-optimum ratio and the first sequence attaining it.
// Guards: m <= 4 and max_len <= m (the search space is (2^m - 1)^max_len).
SearchResult adversary_search(int m, Algorithm algorithm, double epsilon, int max_len);

// CSV with header z,m,algorithm,epsilon,alg_cost,opt_cost,ratio,lower_bound;
// floats at 6 decimals; rows sorted by (z, algorithm, m).
// Throws InvalidArguments on an empty result.
void emit_csv(const GridResult& result, std::ostream& out);
void emit_csv(const GridResult& result, const std::filesystem::path& path);

// One panel per algorithm: measured ratio vs m as a solid polyline and the
// harmonic lower bound as a dashed one, one colour per z. Byte-deterministic
// for fixed input. Throws InvalidArguments on an empty result.
void emit_svg(const GridResult& result, std::ostream& out);
void emit_svg(const GridResult& result, const std::filesystem::path& path);

}  // namespace batchcover
