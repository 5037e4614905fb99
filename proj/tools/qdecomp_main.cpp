#include "qdecomp/decompose.hpp"
#include "qdecomp/error.hpp"
#include "qdecomp/experiment.hpp"
#include "qdecomp/generate.hpp"
#include "qdecomp/io.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/rng.hpp"
#include "qdecomp/subsolver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qdecomp;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct CommonOptions {
    int n = 24;
    int k = 3;
    int count = 10;
    std::uint64_t seed = 1;
    int m_cut = 8;
    int min_vertices = 2;
    int max_iterations = 0;
    std::string backend = "exact";
    /// Empty: cutform for graphs, product for QUBO input.
    std::string mode;
    std::string strategy = "global-min";
    int shots = 500;
    int restarts = 100;
    std::vector<std::string> inputs;
    std::string out;
};

void add_instance_flags(CLI::App* app, CommonOptions& o) {
    app->add_option("--n", o.n, "Vertices per generated instance")->capture_default_str();
    app->add_option("--k", o.k, "Degree of generated regular graphs")->capture_default_str();
    app->add_option("--count", o.count, "Number of generated instances")->capture_default_str();
    app->add_option("--inputs", o.inputs, "Graph files to use instead of generated instances")
        ->check(CLI::ExistingFile);
}

void add_decomp_flags(CLI::App* app, CommonOptions& o, bool with_backend) {
    app->add_option("--m-cut", o.m_cut, "Stop when the smallest cut has at least this many vertices")
        ->capture_default_str();
    app->add_option("--min-vertices", o.min_vertices, "Stop at or below this many vertices")
        ->capture_default_str();
    app->add_option("--max-iterations", o.max_iterations, "Iteration cap (0: none)")
        ->capture_default_str();
    if (with_backend) {
        app->add_option("--backend", o.backend, "Subproblem solver")
            ->check(CLI::IsMember({"exact", "qaoa"}))
            ->capture_default_str();
    }
    app->add_option("--mode", o.mode,
                    "Replacement terms inside the cut set (default: cutform for graphs, "
                    "product for QUBO input)")
        ->check(CLI::IsMember({"cutform", "product"}));
    app->add_option("--strategy", o.strategy, "Cut selection")
        ->check(CLI::IsMember({"global-min", "min-degree-neighborhood"}))
        ->capture_default_str();
    app->add_option("--restarts", o.restarts, "BFGS restarts for p=1 QAOA optimization")
        ->capture_default_str();
}

DecompConfig make_config(const CommonOptions& o) {
    DecompConfig cfg;
    cfg.max_cut = o.m_cut;
    cfg.min_vertices = o.min_vertices;
    cfg.max_iterations = o.max_iterations;
    cfg.backend.kind = parse_backend(o.backend);
    cfg.backend.qaoa_restarts = o.restarts;
    cfg.mode = parse_reweight_mode(o.mode.empty() ? "cutform" : o.mode);
    cfg.strategy = parse_cut_strategy(o.strategy);
    cfg.seed = o.seed;
    return cfg;
}

ExperimentSpec make_spec(const CommonOptions& o) {
    ExperimentSpec spec;
    spec.n = o.n;
    spec.k = o.k;
    spec.count = o.count;
    spec.seed = o.seed;
    spec.cfg = make_config(o);
    spec.shots = o.shots;
    spec.restarts = o.restarts;
    for (const auto& p : o.inputs) {
        spec.inputs.emplace_back(p);
    }
    spec.out = o.out;
    return spec;
}

nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

/// Graph text file, QUBO JSON, or decomposition trace (its final instance with c_total).
QuboInstance load_instance(const fs::path& path, std::optional<WeightedGraph>* graph = nullptr) {
    if (path.extension() != ".json") {
        WeightedGraph g = read_graph_file(path);
        QuboInstance q = maxcut_to_qubo(g);
        if (graph) {
            *graph = std::move(g);
        }
        return q;
    }
    const nlohmann::json j = read_json_file(path);
    if (j.is_object() && j.value("format", "") == "qdecomp-trace") {
        return result_from_json(j).total_instance();
    }
    return qubo_from_json(j);
}

std::string bit_label(std::uint64_t index, int n) {
    std::string s(n, '0');
    for (int q = 0; q < n; ++q) {
        if ((index >> q) & 1U) {
            s[q] = '1';
        }
    }
    return s;
}

int cmd_generate(const CommonOptions& o) {
    if (o.count < 1) {
        throw InputError("--count must be >= 1");
    }
    for (int id = 0; id < o.count; ++id) {
        const WeightedGraph g =
            generate_regular(o.n, o.k, substream(o.seed, "instance", {std::uint64_t(id)}));
        std::ostringstream text;
        write_graph(text, g);
        std::ostringstream name;
        name << "instance_" << std::setw(3) << std::setfill('0') << id << ".txt";
        const fs::path path = fs::path(o.out) / name.str();
        write_text_file(path, text.str());
        std::cout << path.string() << "\n";
    }
    return 0;
}

int cmd_decompose(const CommonOptions& o, const std::string& input) {
    DecompConfig cfg = make_config(o);
    std::optional<WeightedGraph> graph;
    const QuboInstance inst = load_instance(input, &graph);
    if (o.mode.empty() && !graph) {
        cfg.mode = ReweightMode::QuboProduct;
    }
    const DecompositionResult res = graph ? decompose(*graph, cfg) : decompose(inst, cfg);
    const nlohmann::json trace = result_to_json(res);
    nlohmann::json summary = {{"input", input},
                              {"original_n", res.original_n},
                              {"final_n", res.final_size()},
                              {"iterations", res.iterations.size()},
                              {"c_total", res.c_total},
                              {"all_exact", res.all_exact()},
                              {"error_sum", res.error_budget()},
                              {"stop", to_string(res.stop)}};
    if (!o.out.empty()) {
        const fs::path out(o.out);
        write_text_file(out / "trace.json", trace.dump(1) + "\n");
        write_text_file(out / "reduced.json", qubo_to_json(res.total_instance()).dump(1) + "\n");
        if (res.reduced_graph) {
            std::ostringstream text;
            write_graph(text, *res.reduced_graph);
            write_text_file(out / "reduced.txt", text.str());
        }
        write_text_file(out / "summary.json", summary.dump(1) + "\n");
    }
    std::cout << summary.dump(1) << "\n";
    return 0;
}

int cmd_qaoa(const CommonOptions& o, const std::string& input) {
    const QuboInstance inst = load_instance(input);
    const OptimizeResult opt = optimize_params(qubo_to_ising(inst), o.restarts,
                                               substream(o.seed, "qaoa-params"));
    nlohmann::json rep = {{"input", input},
                          {"n", inst.size()},
                          {"gamma", opt.params.gammas[0]},
                          {"beta", opt.params.betas[0]},
                          {"expectation", opt.value},
                          {"optimizer_warning", opt.warning}};
    const bool exact_ok = inst.size() <= kOracleLimit;
    const bool state_ok = inst.size() <= kStatevectorMaxQubits;
    if (!exact_ok) {
        std::cerr << "note: n=" << inst.size() << " exceeds the brute-force limit; "
                  << "reporting the expectation only\n";
    }
    if (exact_ok) {
        const ExactSolution best = exact_optimum(inst, kOracleLimit);
        rep["c_max"] = best.value;
        rep["n_opt"] = best.n_opt;
        if (best.value > 0.0) {
            rep["approx_ratio"] = opt.value / best.value;
        }
        if (state_ok) {
            const SolveReport r = report(inst, opt.params, o.shots,
                                         substream(o.seed, "qaoa-shots"), best.value, best.n_opt);
            rep["p_opt_qaoa"] = r.p_opt_qaoa;
            rep["p_opt_empirical"] = r.p_opt_empirical;
            rep["p_opt_uniform"] = r.p_opt_uniform;
            rep["p_uniform_x_2pow_n_half"] = r.p_uniform_enhanced;
            rep["shots"] = r.shots;
            rep["optimal_hits"] = r.optimal_hits;
            if (!o.out.empty() && inst.size() <= kProbabilityMaxQubits) {
                const auto psi = statevector(inst, opt.params);
                std::vector<int> counts(psi.size(), 0);
                for (std::uint64_t idx : sample(psi, o.shots, substream(o.seed, "qaoa-shots"))) {
                    ++counts[idx];
                }
                std::ostringstream csv;
                csv << "bitstring,probability,count\n";
                for (std::size_t i = 0; i < psi.size(); ++i) {
                    csv << bit_label(i, inst.size()) << ',' << format_double(std::norm(psi[i]))
                        << ',' << counts[i] << '\n';
                }
                write_text_file(fs::path(o.out) / "histogram.csv", csv.str());
            }
        }
    }
    if (!o.out.empty()) {
        write_text_file(fs::path(o.out) / "report.json", rep.dump(1) + "\n");
    }
    std::cout << rep.dump(1) << "\n";
    return 0;
}

int cmd_experiment_ar(const CommonOptions& o, bool per_iteration, bool skip_qaoa_backend) {
    ExperimentSpec spec = make_spec(o);
    spec.per_iteration = per_iteration;
    spec.qaoa_backend = !skip_qaoa_backend;
    const ArReport rep = run_decompose(spec);
    double sum_orig = 0.0;
    double sum_exact = 0.0;
    double sum_qaoa = 0.0;
    int n_ok = 0;
    int n_qaoa = 0;
    for (const auto& r : rep.rows) {
        if (!r.error.empty() || !r.exact.ok) {
            std::cout << "instance " << r.instance << ": failed: "
                      << (r.error.empty() ? r.exact.error : r.error) << "\n";
            continue;
        }
        ++n_ok;
        sum_orig += r.ar_original;
        sum_exact += r.exact.approx_ratio;
        if (r.qaoa && r.qaoa->ok) {
            ++n_qaoa;
            sum_qaoa += r.qaoa->approx_ratio;
        }
    }
    std::cout << "instances: " << n_ok << "/" << rep.rows.size() << "\n";
    if (n_ok > 0) {
        std::cout << "mean A.R. original:             " << sum_orig / n_ok << "\n";
        std::cout << "mean A.R. decomposed (exact):   " << sum_exact / n_ok << "\n";
    }
    if (n_qaoa > 0) {
        std::cout << "mean A.R. decomposed (qaoa):    " << sum_qaoa / n_qaoa << "\n";
    }
    return n_ok == static_cast<int>(rep.rows.size()) ? 0 : kExitFailure;
}

int cmd_experiment_prob(const CommonOptions& o) {
    const auto rows = run_probability_study(make_spec(o));
    int measured = 0;
    int above = 0;
    int observed = 0;
    for (const auto& r : rows) {
        if (r.skipped) {
            std::cout << "instance " << r.instance << ": skipped: " << r.note << "\n";
            continue;
        }
        ++measured;
        above += r.p_qaoa > r.p_uniform ? 1 : 0;
        observed += r.observed ? 1 : 0;
    }
    std::cout << "measured: " << measured << "/" << rows.size() << "\n"
              << "P_opt(QAOA) > P_opt(uniform): " << above << "/" << measured << "\n"
              << "optimum observed in " << o.shots << " shots: " << observed << "/" << measured
              << "\n";
    return 0;
}

int cmd_verify(const CommonOptions& o) {
    const auto rows = run_verification(make_spec(o));
    int passed = 0;
    for (const auto& r : rows) {
        if (r.pass) {
            ++passed;
        } else {
            std::cout << "instance " << r.instance << " (" << r.source << "): FAIL "
                      << (r.error.empty() ? "optimum mismatch" : r.error) << "\n";
        }
    }
    std::cout << "verified " << passed << "/" << rows.size() << "\n";
    return passed == static_cast<int>(rows.size()) ? 0 : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertex-cut decomposition of MaxCut/QUBO instances with p=1 QAOA evaluation"};
    app.require_subcommand(1);
    CommonOptions o;
    std::string input;
    bool per_iteration = false;
    bool skip_qaoa_backend = false;

    auto* gen = app.add_subcommand("generate", "Write random connected k-regular graphs");
    add_instance_flags(gen, o);
    gen->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    gen->add_option("--out", o.out, "Output directory")->required();

    auto* dec = app.add_subcommand("decompose", "Decompose one graph or QUBO instance");
    dec->add_option("input", input, "Graph text file or QUBO .json")->required()->check(
        CLI::ExistingFile);
    add_decomp_flags(dec, o, true);
    dec->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    dec->add_option("--out", o.out, "Directory for trace.json, reduced.json, summary.json");

    auto* qa = app.add_subcommand("qaoa", "Optimize p=1 QAOA on one instance and report");
    qa->add_option("input", input, "Graph text file, QUBO .json, or decomposition trace .json")
        ->required()
        ->check(CLI::ExistingFile);
    qa->add_option("--restarts", o.restarts, "BFGS restarts")->capture_default_str();
    qa->add_option("--shots", o.shots, "Measurement shots")->capture_default_str();
    qa->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    qa->add_option("--out", o.out, "Directory for report.json and histogram.csv");

    auto* exp = app.add_subcommand("experiment", "Desk-scale experiments");
    exp->require_subcommand(1);
    auto* ar = exp->add_subcommand("ar", "Approximation ratio before and after decomposition");
    add_instance_flags(ar, o);
    add_decomp_flags(ar, o, false);
    ar->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    ar->add_flag("--per-iteration", per_iteration, "Record the A.R. after every iteration");
    ar->add_flag("--skip-qaoa-backend", skip_qaoa_backend,
                 "Only decompose with the exact subproblem backend");
    ar->add_option("--out", o.out, "Output directory");

    auto* prob = exp->add_subcommand("prob", "Optimal-solution probabilities on reduced instances");
    add_instance_flags(prob, o);
    add_decomp_flags(prob, o, false);
    prob->add_option("--shots", o.shots, "Measurement shots")->capture_default_str();
    prob->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    prob->add_option("--out", o.out, "Output directory");

    auto* ver = app.add_subcommand("verify", "Brute-force check that decomposition keeps the optimum");
    add_instance_flags(ver, o);
    add_decomp_flags(ver, o, false);
    ver->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    ver->add_option("--out", o.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*gen) {
            return cmd_generate(o);
        }
        if (*dec) {
            return cmd_decompose(o, input);
        }
        if (*qa) {
            return cmd_qaoa(o, input);
        }
        if (*ar) {
            return cmd_experiment_ar(o, per_iteration, skip_qaoa_backend);
        }
        if (*prob) {
            return cmd_experiment_prob(o);
        }
        if (*ver) {
            return cmd_verify(o);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NoCutError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource error: out of memory\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
