#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "batchcover/core.hpp"
#include "batchcover/generators.hpp"
#include "batchcover/harness.hpp"
#include "batchcover/json_io.hpp"
#include "batchcover/solvers.hpp"
#include "batchcover/vc.hpp"

namespace py = pybind11;
using namespace batchcover;

namespace {

DPolicy d_policy_from_object(const py::object& d) {
    if (d.is_none()) return DPolicy::num_sets();
    if (py::isinstance<py::int_>(d)) return DPolicy::fixed_value(d.cast<int>());
    const auto text = d.cast<std::string>();
    if (text == "m") return DPolicy::num_sets();
    if (text == "auto") return DPolicy::max_row_sparsity();
    throw InvalidArguments("d must be 'm', 'auto', or a positive integer");
}

RunResult run_from_python(Algorithm algorithm, const Instance& inst, double epsilon,
                          const py::object& d, std::optional<std::uint64_t> seed) {
    RunOptions opts;
    opts.epsilon = epsilon;
    opts.d_policy = d_policy_from_object(d);
    opts.shuffle_seed = seed;
    return run_algorithm(algorithm, inst, opts);
}

}  // namespace

PYBIND11_MODULE(_batchcover, m) {
    m.doc() = "Fractional batched set cover: adversarial instance generators, discretized "
              "primal-dual algorithms, VC-dimension checks, and an experiment harness.";

    py::register_exception<InvalidArguments>(m, "InvalidArguments", PyExc_ValueError);
    py::register_exception<BoundUndefined>(m, "BoundUndefined", PyExc_ValueError);
    py::register_exception<TooLarge>(m, "TooLarge", PyExc_ValueError);
    py::register_exception<AdversaryImpossible>(m, "AdversaryImpossible", PyExc_ValueError);
    py::register_exception<Infeasible>(m, "Infeasible", PyExc_ValueError);

    py::class_<Element>(m, "Element")
        .def(py::init<>())
        .def_readwrite("batch_index", &Element::batch_index)
        .def_readwrite("position", &Element::position)
        .def_readwrite("member_of", &Element::member_of)
        .def_property_readonly("id", &Element::id)
        .def("__repr__", [](const Element& e) {
            return "Element(" + e.id() + ", " + std::to_string(e.member_of.size()) + " sets)";
        });

    py::class_<Batch>(m, "Batch")
        .def(py::init<>())
        .def_readwrite("elements", &Batch::elements);

    py::class_<SetSystem>(m, "SetSystem")
        .def(py::init<>())
        .def_readwrite("num_sets", &SetSystem::num_sets)
        .def_readwrite("costs", &SetSystem::costs)
        .def_readwrite("name", &SetSystem::name)
        .def_static("unweighted", &SetSystem::unweighted, py::arg("m"));

    py::class_<Instance>(m, "Instance")
        .def(py::init<>())
        .def_readwrite("system", &Instance::system)
        .def_readwrite("batches", &Instance::batches)
        .def_property_readonly("num_elements", &Instance::num_elements)
        .def("to_json", [](const Instance& inst) { return instance_to_json_string(inst); })
        .def_static("from_json",
                    [](const std::string& text) { return instance_from_json_string(text); },
                    py::arg("text"))
        .def("save", [](const Instance& inst, const std::string& path) {
            save_instance(inst, path);
        }, py::arg("path"))
        .def_static("load", [](const std::string& path) { return load_instance(path); },
                    py::arg("path"))
        .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

    py::class_<TracePoint>(m, "TracePoint")
        .def_readonly("batch", &TracePoint::batch)
        .def_readonly("primal_cost_after", &TracePoint::primal_cost_after);

    py::class_<RunResult>(m, "RunResult")
        .def_property_readonly("algorithm",
                               [](const RunResult& r) { return std::string(algorithm_name(r.algorithm)); })
        .def_readonly("primal_cost", &RunResult::primal_cost)
        .def_readonly("dual_value", &RunResult::dual_value)
        .def_readonly("opt_cost", &RunResult::opt_cost)
        .def_readonly("ratio", &RunResult::ratio)
        .def_readonly("per_batch_trace", &RunResult::per_batch_trace)
        .def_readonly("epsilon", &RunResult::epsilon)
        .def_readonly("d", &RunResult::d)
        .def("__repr__", [](const RunResult& r) {
            return "RunResult(" + std::string(algorithm_name(r.algorithm)) +
                   ", ratio=" + std::to_string(r.ratio) + ")";
        });

    m.def("harmonic", &harmonic, py::arg("r"), "Sum of 1/i for i in 1..r.");
    m.def("lower_bound", &lower_bound, py::arg("m"), py::arg("z"),
          "H_{m - 2^z + 1}: the batched competitive-ratio lower bound.");
    m.def("harmonic_split_inequality", &harmonic_split_inequality, py::arg("r"), py::arg("t"),
          "Whether H_r > (H_{r-t} + H_t)/2.");
    m.def("x_value", &x_value, py::arg("cost"), py::arg("d"), py::arg("dual_mass"),
          "Closed-form primal value of a set under the given dual mass.");
    m.def("covering_sets_of",
          [](const Batch& b) { return covering_sets_of(b); }, py::arg("batch"),
          "Sorted 0-based indices of the sets meeting the batch.");
    m.def("validate_instance", &validate_instance, py::arg("instance"),
          "One message per violated invariant; empty means well-formed.");

    m.def("is_shattered",
          [](const std::vector<Element>& subset, int num_sets) {
              return is_shattered(std::span<const Element>(subset.data(), subset.size()), num_sets);
          },
          py::arg("subset"), py::arg("num_sets"));
    m.def("vc_dimension", &vc_dimension, py::arg("batch"), py::arg("system"));
    m.def("check_adversary_restriction", &check_adversary_restriction, py::arg("instance"),
          py::arg("z"));

    m.def("gen_online_worst", &gen_online_worst, py::arg("m"));
    m.def("gen_batched_worst", &gen_batched_worst, py::arg("m"), py::arg("z"));

    m.def("run_trivial",
          [](const Instance& inst, double epsilon, const py::object& d,
             std::optional<std::uint64_t> seed) {
              return run_from_python(Algorithm::Trivial, inst, epsilon, d, seed);
          },
          py::arg("instance"), py::arg("epsilon") = 1e-3, py::arg("d") = py::none(),
          py::arg("seed") = py::none());
    m.def("run_dedicated",
          [](const Instance& inst, double epsilon, const py::object& d,
             std::optional<std::uint64_t> seed) {
              return run_from_python(Algorithm::Dedicated, inst, epsilon, d, seed);
          },
          py::arg("instance"), py::arg("epsilon") = 1e-3, py::arg("d") = py::none(),
          py::arg("seed") = py::none());
    m.def("offline_opt",
          [](const Instance& inst, bool allow_greedy_fallback) {
              const OptResult r = offline_opt(inst, allow_greedy_fallback);
              return py::make_tuple(r.cost, r.chosen_sets);
          },
          py::arg("instance"), py::arg("allow_greedy_fallback") = false,
          "Minimum integral cover cost and the 0-based chosen sets.");

    m.def("run_grid",
          [](const std::vector<int>& z_values, int m_min, int m_max, double epsilon,
             const std::vector<std::string>& algorithms, bool adaptive) {
              ExperimentGrid grid;
              grid.z_values = z_values;
              grid.m_min = m_min;
              grid.m_max = m_max;
              grid.epsilon = epsilon;
              grid.algorithms.clear();
              for (const std::string& name : algorithms) {
                  grid.algorithms.push_back(algorithm_from_name(name));
              }
              grid.adaptive = adaptive;
              const GridResult result = run_grid(grid);
              py::list rows;
              for (const GridRow& r : result.rows) {
                  py::dict row;
                  row["z"] = r.z;
                  row["m"] = r.m;
                  row["algorithm"] = std::string(algorithm_name(r.algorithm));
                  row["epsilon"] = r.epsilon;
                  row["alg_cost"] = r.alg_cost;
                  row["opt_cost"] = r.opt_cost;
                  row["ratio"] = r.ratio;
                  row["lower_bound"] = r.lower_bound;
                  rows.append(row);
              }
              return rows;
          },
          py::arg("z_values") = std::vector<int>{0, 1, 2, 3, 4}, py::arg("m_min") = 1,
          py::arg("m_max") = 30, py::arg("epsilon") = 1e-3,
          py::arg("algorithms") = std::vector<std::string>{"trivial", "dedicated"},
          py::arg("adaptive") = true);

    m.def("adversary_search",
          [](int m, const std::string& algorithm, double epsilon, int max_len) {
              const SearchResult r =
                  adversary_search(m, algorithm_from_name(algorithm), epsilon, max_len);
              return py::make_tuple(r.best_ratio, r.best_sequence);
          },
          py::arg("m"), py::arg("algorithm") = "trivial", py::arg("epsilon") = 1e-3,
          py::arg("max_len") = 3);
}
