#include "batchcover/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "batchcover/core.hpp"
#include "batchcover/generators.hpp"

namespace batchcover {

namespace {

// Generator and solver interleaved, so an adaptive adversary can react to the
// primal vector after every batch.
GridRow run_cell(int z, int m, Algorithm algorithm, double epsilon, bool adaptive) {
    AdaptiveAdversary adversary(m, z, adaptive);
    PrimalDualSolver solver(algorithm, SetSystem::unweighted(m), /*d=*/m, epsilon);
    while (!adversary.done()) {
        const Batch batch = adversary.next_batch();
        solver.process_batch(batch);
        adversary.observe(solver.state().x);
    }
    const OptResult opt = offline_opt(adversary.revealed_instance());

    GridRow row;
    row.z = z;
    row.m = m;
    row.algorithm = algorithm;
    row.epsilon = epsilon;
    row.alg_cost = solver.primal_cost();
    row.opt_cost = opt.cost;
    row.ratio = row.alg_cost / row.opt_cost;
    row.lower_bound = lower_bound(m, z);
    return row;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

GridResult run_grid(const ExperimentGrid& grid) {
    if (grid.m_min < 1 || grid.m_max < grid.m_min) {
        throw InvalidArguments("run_grid: need 1 <= m_min <= m_max");
    }
    if (!(grid.epsilon > 0.0)) throw InvalidArguments("run_grid: epsilon must be positive");

    GridResult result;
    for (int z : grid.z_values) {
        if (z < 0) throw InvalidArguments("run_grid: z must be non-negative");
        for (int m = grid.m_min; m <= grid.m_max; ++m) {
            if (z >= 31 || m < (1 << z)) {
                result.skipped.push_back({z, m, "m < 2^z: adversary cannot produce any batches"});
                continue;
            }
            for (Algorithm algorithm : grid.algorithms) {
                try {
                    result.rows.push_back(run_cell(z, m, algorithm, grid.epsilon, grid.adaptive));
                } catch (const std::exception& e) {
                    result.failed.push_back({z, m, std::string(algorithm_name(algorithm)), e.what()});
                }
            }
        }
    }
    return result;
}

SearchResult adversary_search(int m, Algorithm algorithm, double epsilon, int max_len) {
    if (m < 1) throw InvalidArguments("adversary_search: m must be positive");
    if (m > 4) throw TooLarge("adversary_search: exhaustive search limited to m <= 4");
    if (max_len < 1 || max_len > m) {
        throw TooLarge("adversary_search: max_len must be in [1, m]");
    }
    if (!(epsilon > 0.0)) throw InvalidArguments("adversary_search: epsilon must be positive");

    const int num_patterns = (1 << m) - 1;
    SearchResult best;

    std::vector<int> pattern(static_cast<std::size_t>(max_len));
    for (int len = 1; len <= max_len; ++len) {
        std::fill(pattern.begin(), pattern.begin() + len, 1);
        for (;;) {
            Instance inst;
            inst.system = SetSystem::unweighted(m);
            for (int k = 1; k <= len; ++k) {
                Element e;
                e.batch_index = k;
                e.position = 0;
                const int mask = pattern[static_cast<std::size_t>(k - 1)];
                for (int j = 0; j < m; ++j) {
                    if (mask >> j & 1) e.member_of.push_back(j);
                }
                Batch b;
                b.elements.push_back(std::move(e));
                inst.batches.push_back(std::move(b));
            }

            RunOptions opts;
            opts.epsilon = epsilon;
            const RunResult run = run_algorithm(algorithm, inst, opts);
            if (run.ratio > best.best_ratio) {
                best.best_ratio = run.ratio;
                best.best_sequence.clear();
                for (const Batch& b : inst.batches) {
                    best.best_sequence.push_back(b.elements.front().member_of);
                }
            }

            // odometer over membership patterns, most significant position last
            int pos = 0;
            while (pos < len) {
                if (++pattern[static_cast<std::size_t>(pos)] <= num_patterns) break;
                pattern[static_cast<std::size_t>(pos)] = 1;
                ++pos;
            }
            if (pos == len) break;
        }
    }
    return best;
}

namespace {

std::vector<GridRow> sorted_rows(const GridResult& result) {
    std::vector<GridRow> rows = result.rows;
    std::stable_sort(rows.begin(), rows.end(), [](const GridRow& a, const GridRow& b) {
        if (a.z != b.z) return a.z < b.z;
        const auto an = algorithm_name(a.algorithm);
        const auto bn = algorithm_name(b.algorithm);
        if (an != bn) return an < bn;
        return a.m < b.m;
    });
    return rows;
}

}  // namespace

void emit_csv(const GridResult& result, std::ostream& out) {
    if (result.rows.empty()) throw InvalidArguments("emit_csv: empty grid result");
    out << "z,m,algorithm,epsilon,alg_cost,opt_cost,ratio,lower_bound\n";
    for (const GridRow& r : sorted_rows(result)) {
        out << r.z << ',' << r.m << ',' << algorithm_name(r.algorithm) << ',' << fmt6(r.epsilon)
            << ',' << fmt6(r.alg_cost) << ',' << fmt6(r.opt_cost) << ',' << fmt6(r.ratio) << ','
            << fmt6(r.lower_bound) << '\n';
    }
    if (!out) throw std::runtime_error("emit_csv: stream write failed");
}

void emit_csv(const GridResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
    emit_csv(result, out);
    if (!out) throw std::runtime_error("emit_csv: failed writing " + path.string());
}

namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 58.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 48.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Series {
    int z;
    std::vector<std::pair<int, double>> ratio;  // (m, measured)
    std::vector<std::pair<int, double>> bound;  // (m, lower bound)
};

std::string polyline(const std::vector<std::pair<int, double>>& points, double x0, double m_lo,
                     double m_hi, double y_lo, double y_hi, const char* colour, bool dashed) {
    const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
    const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
    std::string svg = "  <polyline fill=\"none\" stroke=\"";
    svg += colour;
    svg += "\" stroke-width=\"1.5\"";
    if (dashed) svg += " stroke-dasharray=\"6,3\"";
    svg += " points=\"";
    bool first = true;
    for (const auto& [m, v] : points) {
        const double px =
            x0 + kMarginLeft + (m_hi > m_lo ? (m - m_lo) / (m_hi - m_lo) : 0.5) * plot_w;
        const double py = kMarginTop + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h;
        if (!first) svg += ' ';
        first = false;
        svg += fmt2(px) + "," + fmt2(py);
    }
    svg += "\"/>\n";
    return svg;
}

std::string text(double x, double y, const std::string& content, const char* anchor = "middle",
                 const char* extra = "") {
    return "  <text x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" font-family=\"sans-serif\" " +
           "font-size=\"11\" text-anchor=\"" + std::string(anchor) + "\"" + extra + ">" + content +
           "</text>\n";
}

}  // namespace

void emit_svg(const GridResult& result, std::ostream& out) {
    if (result.rows.empty()) throw InvalidArguments("emit_svg: empty grid result");
    const std::vector<GridRow> rows = sorted_rows(result);

    std::vector<Algorithm> algorithms;
    for (const GridRow& r : rows) {
        if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
            algorithms.push_back(r.algorithm);
        }
    }
    std::sort(algorithms.begin(), algorithms.end(), [](Algorithm a, Algorithm b) {
        return algorithm_name(a) < algorithm_name(b);
    });

    int m_lo = rows.front().m, m_hi = rows.front().m;
    double y_hi = 0.0;
    for (const GridRow& r : rows) {
        m_lo = std::min(m_lo, r.m);
        m_hi = std::max(m_hi, r.m);
        y_hi = std::max({y_hi, r.ratio, r.lower_bound});
    }
    const double y_lo = 0.0;
    y_hi *= 1.06;

    const double width = kPanelWidth * algorithms.size();
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmtg(width) + "\" height=\"" +
           fmtg(kPanelHeight) + "\" viewBox=\"0 0 " + fmtg(width) + " " + fmtg(kPanelHeight) +
           "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
    const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;

    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        const Algorithm algorithm = algorithms[a];
        const double x0 = kPanelWidth * static_cast<double>(a);

        std::map<int, Series> by_z;
        for (const GridRow& r : rows) {
            if (r.algorithm != algorithm) continue;
            Series& s = by_z.emplace(r.z, Series{r.z, {}, {}}).first->second;
            s.ratio.emplace_back(r.m, r.ratio);
            s.bound.emplace_back(r.m, r.lower_bound);
        }

        // frame and axes
        svg += "  <rect x=\"" + fmt2(x0 + kMarginLeft) + "\" y=\"" + fmt2(kMarginTop) +
               "\" width=\"" + fmt2(plot_w) + "\" height=\"" + fmt2(plot_h) +
               "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        svg += text(x0 + kPanelWidth / 2, kMarginTop - 24,
                    std::string(algorithm_name(algorithm)) + " algorithm", "middle",
                    " font-weight=\"bold\"");
        svg += text(x0 + kMarginLeft + plot_w / 2, kPanelHeight - 12, "m (number of sets)");
        svg += text(x0 + 16, kMarginTop + plot_h / 2, "competitive ratio", "middle",
                    (" transform=\"rotate(-90 " + fmt2(x0 + 16) + " " +
                     fmt2(kMarginTop + plot_h / 2) + ")\"")
                        .c_str());

        // x ticks at integer m, at most ~8 labels
        const int m_step = std::max(1, (m_hi - m_lo + 7) / 8);
        for (int m = m_lo; m <= m_hi; m += m_step) {
            const double px =
                x0 + kMarginLeft + (m_hi > m_lo ? double(m - m_lo) / (m_hi - m_lo) : 0.5) * plot_w;
            svg += "  <line x1=\"" + fmt2(px) + "\" y1=\"" + fmt2(kMarginTop + plot_h) +
                   "\" x2=\"" + fmt2(px) + "\" y2=\"" + fmt2(kMarginTop + plot_h + 4) +
                   "\" stroke=\"#444444\"/>\n";
            svg += text(px, kMarginTop + plot_h + 16, std::to_string(m));
        }
        // y ticks
        const int y_ticks = 5;
        for (int t = 0; t <= y_ticks; ++t) {
            const double v = y_lo + (y_hi - y_lo) * t / y_ticks;
            const double py = kMarginTop + (1.0 - double(t) / y_ticks) * plot_h;
            svg += "  <line x1=\"" + fmt2(x0 + kMarginLeft - 4) + "\" y1=\"" + fmt2(py) +
                   "\" x2=\"" + fmt2(x0 + kMarginLeft) + "\" y2=\"" + fmt2(py) +
                   "\" stroke=\"#444444\"/>\n";
            svg += text(x0 + kMarginLeft - 8, py + 4, fmt2(v), "end");
        }

        std::size_t colour_index = 0;
        for (const auto& [z, series] : by_z) {
            const char* colour = kPalette[colour_index % (sizeof kPalette / sizeof *kPalette)];
            svg += polyline(series.bound, x0, m_lo, m_hi, y_lo, y_hi, colour, /*dashed=*/true);
            svg += polyline(series.ratio, x0, m_lo, m_hi, y_lo, y_hi, colour, /*dashed=*/false);
            const double ly = kMarginTop + 14 + 14 * static_cast<double>(colour_index);
            svg += "  <line x1=\"" + fmt2(x0 + kMarginLeft + 8) + "\" y1=\"" + fmt2(ly - 4) +
                   "\" x2=\"" + fmt2(x0 + kMarginLeft + 28) + "\" y2=\"" + fmt2(ly - 4) +
                   "\" stroke=\"" + colour + "\" stroke-width=\"1.5\"/>\n";
            svg += text(x0 + kMarginLeft + 33, ly, "z=" + std::to_string(z), "start");
            ++colour_index;
        }
        svg += text(x0 + kMarginLeft + plot_w - 8, kMarginTop + 14,
                    "solid: measured, dashed: harmonic bound", "end");
    }
    svg += "</svg>\n";

    out << svg;
    if (!out) throw std::runtime_error("emit_svg: stream write failed");
}

void emit_svg(const GridResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_svg: cannot open " + path.string());
    emit_svg(result, out);
    if (!out) throw std::runtime_error("emit_svg: failed writing " + path.string());
}

}  // namespace batchcover
