#include "qdecomp/cutset.hpp"
#include "qdecomp/decompose.hpp"
#include "qdecomp/error.hpp"
#include "qdecomp/generate.hpp"
#include "qdecomp/io.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/subsolver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace qdecomp;

namespace {

WeightedGraph make_graph(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& [u, v, w] : edges) {
        out.push_back({u, v, w});
    }
    return WeightedGraph(n, std::move(out));
}

std::vector<std::tuple<int, int, double>> edge_tuples(const WeightedGraph& g) {
    std::vector<std::tuple<int, int, double>> out;
    for (const auto& e : g.edges()) {
        out.emplace_back(e.u, e.v, e.w);
    }
    return out;
}

QuboInstance make_qubo(int n, const std::vector<std::tuple<int, int, double>>& quad,
                       std::vector<double> lin, double offset) {
    std::vector<QuadTerm> terms;
    for (const auto& [i, j, J] : quad) {
        terms.push_back({i, j, J});
    }
    if (lin.empty()) {
        lin.assign(n, 0.0);
    }
    return QuboInstance(n, std::move(terms), std::move(lin), offset);
}

DecompConfig make_config(int max_cut, int min_vertices, int max_iterations,
                         const std::string& backend, const std::string& mode,
                         const std::string& strategy, std::uint64_t seed, int restarts) {
    DecompConfig cfg;
    cfg.max_cut = max_cut;
    cfg.min_vertices = min_vertices;
    cfg.max_iterations = max_iterations;
    cfg.backend.kind = parse_backend(backend);
    cfg.backend.qaoa_restarts = restarts;
    cfg.mode = parse_reweight_mode(mode);
    cfg.strategy = parse_cut_strategy(strategy);
    cfg.seed = seed;
    return cfg;
}

py::dict partition_dict(const CutPartition& p) {
    py::dict d;
    d["K"] = p.K;
    d["V1"] = p.V1;
    d["V2"] = p.V2;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cut-set decomposition of MaxCut and QUBO instances";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

    py::class_<WeightedGraph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &WeightedGraph::size)
        .def_property_readonly("edges", &edge_tuples)
        .def("degree", &WeightedGraph::degree)
        .def("cut_value",
             [](const WeightedGraph& g, const std::vector<std::uint8_t>& z) {
                 if (static_cast<int>(z.size()) != g.size()) {
                     throw InputError("assignment length does not match the graph");
                 }
                 double v = 0.0;
                 for (const auto& e : g.edges()) {
                     v += z[e.u] != z[e.v] ? e.w : 0.0;
                 }
                 return v;
             })
        .def("__repr__", [](const WeightedGraph& g) {
            return "Graph(n=" + std::to_string(g.size()) +
                   ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    py::class_<QuboInstance>(m, "Qubo")
        .def(py::init(&make_qubo), py::arg("n"), py::arg("quad"),
             py::arg("lin") = std::vector<double>{}, py::arg("offset") = 0.0)
        .def_property_readonly("n", &QuboInstance::size)
        .def_property_readonly("quad",
                               [](const QuboInstance& q) {
                                   std::vector<std::tuple<int, int, double>> out;
                                   for (const auto& t : q.quad()) {
                                       out.emplace_back(t.i, t.j, t.J);
                                   }
                                   return out;
                               })
        .def_property_readonly("lin", &QuboInstance::lin)
        .def_property_readonly("offset", &QuboInstance::offset)
        .def("evaluate", [](const QuboInstance& q, const std::vector<std::uint8_t>& z) {
            return evaluate(q, z);
        })
        .def("to_json", [](const QuboInstance& q) { return qubo_to_json(q).dump(); });

    py::class_<DecompositionResult>(m, "Decomposition")
        .def_property_readonly("original_n", [](const DecompositionResult& r) { return r.original_n; })
        .def_property_readonly("final_size", &DecompositionResult::final_size)
        .def_property_readonly("c_total", [](const DecompositionResult& r) { return r.c_total; })
        .def_property_readonly("iterations",
                               [](const DecompositionResult& r) { return r.iterations.size(); })
        .def_property_readonly("stop",
                               [](const DecompositionResult& r) { return std::string(to_string(r.stop)); })
        .def_property_readonly("to_original",
                               [](const DecompositionResult& r) { return r.to_original; })
        .def_property_readonly("all_exact", &DecompositionResult::all_exact)
        .def_property_readonly("error_budget", &DecompositionResult::error_budget)
        .def("total_instance", &DecompositionResult::total_instance)
        .def("reduced_graph",
             [](const DecompositionResult& r) -> std::optional<WeightedGraph> { return r.reduced_graph; })
        .def("lift",
             [](const DecompositionResult& r, const std::vector<std::uint8_t>& z) {
                 return lift_solution(r, z);
             })
        .def("trace_json",
             [](const DecompositionResult& r) { return result_to_json(r).dump(); });

    m.def("read_graph", &read_graph_file, py::arg("path"));
    m.def("write_graph", &write_graph_file, py::arg("path"), py::arg("graph"));
    m.def("read_qubo", &read_qubo_file, py::arg("path"));
    m.def("generate_regular", &generate_regular, py::arg("n"), py::arg("k"), py::arg("seed"));
    m.def("maxcut_to_qubo", &maxcut_to_qubo, py::arg("graph"));
    m.def(
        "exact_optimum",
        [](const QuboInstance& q, int limit) {
            const auto s = exact_optimum(q, limit);
            return py::make_tuple(s.value, s.witness, s.n_opt);
        },
        py::arg("qubo"), py::arg("limit") = kDefaultExactLimit);
    m.def(
        "min_vertex_cut", [](const WeightedGraph& g) { return partition_dict(min_vertex_cut(g)); },
        py::arg("graph"));
    m.def(
        "choose_cut",
        [](const WeightedGraph& g, const std::string& strategy) {
            return partition_dict(choose_cut(g, parse_cut_strategy(strategy)));
        },
        py::arg("graph"), py::arg("strategy") = "global-min");

    m.def(
        "decompose",
        [](const WeightedGraph& g, int max_cut, int min_vertices, int max_iterations,
           const std::string& backend, const std::string& mode, const std::string& strategy,
           std::uint64_t seed, int restarts) {
            return decompose(g, make_config(max_cut, min_vertices, max_iterations, backend, mode,
                                            strategy, seed, restarts));
        },
        py::arg("graph"), py::arg("max_cut") = 8, py::arg("min_vertices") = 2,
        py::arg("max_iterations") = 0, py::arg("backend") = "exact", py::arg("mode") = "cutform",
        py::arg("strategy") = "global-min", py::arg("seed") = 0, py::arg("restarts") = 100);
    m.def(
        "decompose_qubo",
        [](const QuboInstance& q, int max_cut, int min_vertices, int max_iterations,
           const std::string& backend, const std::string& mode, const std::string& strategy,
           std::uint64_t seed, int restarts) {
            return decompose(q, make_config(max_cut, min_vertices, max_iterations, backend, mode,
                                            strategy, seed, restarts));
        },
        py::arg("qubo"), py::arg("max_cut") = 8, py::arg("min_vertices") = 2,
        py::arg("max_iterations") = 0, py::arg("backend") = "exact", py::arg("mode") = "product",
        py::arg("strategy") = "global-min", py::arg("seed") = 0, py::arg("restarts") = 100);

    m.def(
        "expectation_p1",
        [](const QuboInstance& q, double gamma, double beta) {
            return expectation_p1(qubo_to_ising(q), QaoaParams::p1(gamma, beta)).total;
        },
        py::arg("qubo"), py::arg("gamma"), py::arg("beta"));
    m.def(
        "statevector_expectation",
        [](const QuboInstance& q, const std::vector<double>& gammas,
           const std::vector<double>& betas) {
            if (gammas.size() != betas.size()) {
                throw InputError("gammas and betas must have the same length");
            }
            const auto costs = cost_table(q);
            return expectation_from_state(statevector(q, {gammas, betas}), costs);
        },
        py::arg("qubo"), py::arg("gammas"), py::arg("betas"));
    m.def(
        "optimize_params",
        [](const QuboInstance& q, int restarts, std::uint64_t seed) {
            const auto r = optimize_params(qubo_to_ising(q), restarts, seed);
            return py::make_tuple(r.params.gammas[0], r.params.betas[0], r.value);
        },
        py::arg("qubo"), py::arg("restarts") = 100, py::arg("seed") = 0);
}
