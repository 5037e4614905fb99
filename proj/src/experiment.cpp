#include "qdecomp/experiment.hpp"

#include "qdecomp/error.hpp"
#include "qdecomp/generate.hpp"
#include "qdecomp/io.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/rng.hpp"
#include "qdecomp/subsolver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdecomp {

namespace fs = std::filesystem;

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) { row(header); }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            text_ << (i ? "," : "") << csv_field(fields[i]);
        }
        text_ << '\n';
    }

    std::string str() const { return text_.str(); }

private:
    std::ostringstream text_;
};

std::string num(double v) { return format_double(v); }
std::string num(long long v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

std::string instance_name(int id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "instance_%03d", id);
    return buf;
}

DecompConfig instance_config(const ExperimentSpec& spec, int id, BackendChoice::Kind kind) {
    DecompConfig cfg = spec.cfg;
    cfg.backend.kind = kind;
    cfg.seed = substream(spec.seed, "decompose", {static_cast<std::uint64_t>(id)});
    return cfg;
}

void save_trace(const ExperimentSpec& spec, int id, std::string_view tag,
                const DecompositionResult& res) {
    if (spec.out.empty()) {
        return;
    }
    write_text_file(spec.out / "traces" / (instance_name(id) + "_" + std::string(tag) + ".json"),
                    result_to_json(res).dump(1) + "\n");
}

DecomposedScore score_decomposition(const ExperimentSpec& spec, const Instance& inst,
                                    double c_max, BackendChoice::Kind kind) {
    DecomposedScore score;
    const std::string tag(to_string(kind));
    try {
        const DecompositionResult res =
            decompose(inst.graph, instance_config(spec, inst.id, kind));
        save_trace(spec, inst.id, tag, res);
        score.final_n = res.final_size();
        score.iterations = static_cast<int>(res.iterations.size());
        score.c_total = res.c_total;
        score.all_exact = res.all_exact();
        score.error_budget = res.error_budget();
        score.approx_ratio =
            optimized_ratio(res.total_instance(), c_max, spec.restarts,
                            substream(spec.seed, "score-" + tag, {std::uint64_t(inst.id)}));
        score.ok = true;
    } catch (const Error& e) {
        score.error = e.what();
    }
    return score;
}

} // namespace

void ExperimentSpec::validate() const {
    if (inputs.empty()) {
        if (count < 1) {
            throw InputError("count must be >= 1");
        }
        if ((static_cast<long long>(n) * k) % 2 != 0) {
            throw InputError("n*k must be even for k-regular generation");
        }
    }
    if (shots < 0) {
        throw InputError("shots must be >= 0");
    }
    if (restarts < 1) {
        throw InputError("restarts must be >= 1");
    }
    cfg.validate();
}

std::vector<Instance> load_instances(const ExperimentSpec& spec) {
    std::vector<Instance> out;
    if (!spec.inputs.empty()) {
        for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
            out.push_back({static_cast<int>(i), spec.inputs[i].string(),
                           read_graph_file(spec.inputs[i])});
        }
        return out;
    }
    for (int id = 0; id < spec.count; ++id) {
        const std::uint64_t seed = substream(spec.seed, "instance", {std::uint64_t(id)});
        out.push_back({id, "regular:n=" + std::to_string(spec.n) + ":k=" + std::to_string(spec.k),
                       generate_regular(spec.n, spec.k, seed)});
    }
    if (!spec.out.empty()) {
        for (const auto& inst : out) {
            std::ostringstream text;
            write_graph(text, inst.graph);
            write_text_file(spec.out / "instances" / (instance_name(inst.id) + ".txt"),
                            text.str());
        }
    }
    return out;
}

double optimized_ratio(const QuboInstance& inst, double c_max, int restarts, std::uint64_t seed) {
    if (!(c_max > 0.0)) {
        throw InputError("approximation ratio needs a positive optimum");
    }
    return optimize_params(qubo_to_ising(inst), restarts, seed).value / c_max;
}

ArReport run_decompose(const ExperimentSpec& spec) {
    spec.validate();
    ArReport report;
    for (const Instance& inst : load_instances(spec)) {
        ArRow row;
        row.instance = inst.id;
        row.source = inst.source;
        row.n = inst.graph.size();
        row.edges = inst.graph.edge_count();
        try {
            const QuboInstance original = maxcut_to_qubo(inst.graph);
            row.c_max = exact_optimum(original, kOracleLimit).value;
            row.ar_original = optimized_ratio(
                original, row.c_max, spec.restarts,
                substream(spec.seed, "score-original", {std::uint64_t(inst.id)}));
            row.exact = score_decomposition(spec, inst, row.c_max, BackendChoice::Kind::Exact);
            if (spec.qaoa_backend) {
                row.qaoa =
                    score_decomposition(spec, inst, row.c_max, BackendChoice::Kind::QaoaP1);
            }
            if (spec.per_iteration) {
                report.iterations.push_back(
                    {inst.id, 0, row.n, 0, 0.0, row.ar_original});
                const IterationObserver observer = [&](const IterationRecord& rec,
                                                       const QuboInstance& current,
                                                       double c_total) {
                    const double ratio = optimized_ratio(
                        current.with_offset(current.offset() + c_total), row.c_max,
                        spec.restarts,
                        substream(spec.seed, "score-iteration",
                                  {std::uint64_t(inst.id), std::uint64_t(rec.index)}));
                    report.iterations.push_back({inst.id, rec.index + 1, rec.vertices_after,
                                                 static_cast<int>(rec.K.size()), c_total, ratio});
                };
                decompose(inst.graph, instance_config(spec, inst.id, BackendChoice::Kind::Exact),
                          observer);
            }
        } catch (const Error& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    if (!spec.out.empty()) {
        write_ar_csv(spec.out / "ar_summary.csv", report.rows);
        if (spec.per_iteration) {
            write_iteration_csv(spec.out / "ar_iterations.csv", report.iterations);
        }
    }
    return report;
}

std::vector<ProbRow> run_probability_study(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<ProbRow> rows;
    for (const Instance& inst : load_instances(spec)) {
        ProbRow row;
        row.instance = inst.id;
        row.source = inst.source;
        row.n_original = inst.graph.size();
        try {
            const DecompositionResult res =
                decompose(inst.graph, instance_config(spec, inst.id, BackendChoice::Kind::Exact));
            save_trace(spec, inst.id, "exact", res);
            row.n_reduced = res.final_size();
            if (row.n_reduced > kProbabilityMaxQubits) {
                row.skipped = true;
                row.note = "reduced instance has " + std::to_string(row.n_reduced) +
                           " variables, above " + std::to_string(kProbabilityMaxQubits);
                rows.push_back(std::move(row));
                continue;
            }
            const QuboInstance total = res.total_instance();
            const ExactSolution best = exact_optimum(total, kProbabilityMaxQubits);
            const OptimizeResult opt = optimize_params(
                qubo_to_ising(total), spec.restarts,
                substream(spec.seed, "score-reduced", {std::uint64_t(inst.id)}));
            const SolveReport rep =
                report(total, opt.params, spec.shots,
                       substream(spec.seed, "shots", {std::uint64_t(inst.id)}), best.value,
                       best.n_opt);
            row.n_opt = best.n_opt;
            row.c_max = best.value;
            row.gamma = opt.params.gammas[0];
            row.beta = opt.params.betas[0];
            row.p_qaoa = rep.p_opt_qaoa;
            row.p_qaoa_empirical = rep.p_opt_empirical;
            row.p_uniform = rep.p_opt_uniform;
            row.p_uniform_x_2pow_n_half = rep.p_uniform_enhanced;
            row.optimal_hits = rep.optimal_hits;
            row.observed = rep.optimal_hits > 0;
        } catch (const Error& e) {
            row.skipped = true;
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    }
    if (!spec.out.empty()) {
        write_prob_csv(spec.out / "prob_study.csv", rows);
    }
    return rows;
}

std::vector<VerifyRow> run_verification(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<VerifyRow> rows;
    for (const Instance& inst : load_instances(spec)) {
        VerifyRow row;
        row.instance = inst.id;
        row.source = inst.source;
        row.n = inst.graph.size();
        try {
            const QuboInstance original = maxcut_to_qubo(inst.graph);
            row.original_opt = exact_optimum(original, kOracleLimit).value;
            const DecompositionResult res =
                decompose(inst.graph, instance_config(spec, inst.id, BackendChoice::Kind::Exact));
            save_trace(spec, inst.id, "exact", res);
            row.final_n = res.final_size();
            row.iterations = static_cast<int>(res.iterations.size());
            row.all_exact = res.all_exact();
            row.error_budget = res.error_budget();
            const ExactSolution reduced = exact_optimum(res.total_instance(), kOracleLimit);
            row.reduced_opt_plus_c = reduced.value;
            row.lifted_value = evaluate(original, lift_solution(res, reduced.witness));
            const double tol = 1e-6 * std::max(1.0, std::abs(row.original_opt));
            const double gap = std::abs(row.reduced_opt_plus_c - row.original_opt);
            row.pass = row.all_exact
                           ? gap <= tol && std::abs(*row.lifted_value - row.original_opt) <= tol
                           : gap <= row.error_budget + tol;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    if (!spec.out.empty()) {
        write_verify_csv(spec.out / "verify.csv", rows);
    }
    return rows;
}

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw ResourceError("cannot create directory " + path.parent_path().string() + ": " +
                                ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ResourceError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw ResourceError("failed writing " + path.string());
    }
}

void write_ar_csv(const fs::path& path, const std::vector<ArRow>& rows) {
    CsvWriter csv({"instance",          "source",         "n",
                   "edges",             "c_max",          "ar_original",
                   "exact_final_n",     "exact_iterations", "exact_c_total",
                   "exact_all_exact",   "exact_error_sum", "exact_ar",
                   "qaoa_final_n",      "qaoa_iterations", "qaoa_c_total",
                   "qaoa_all_exact",    "qaoa_error_sum",  "qaoa_ar",
                   "error"});
    auto side = [](const std::optional<DecomposedScore>& s) -> std::vector<std::string> {
        if (!s || !s->ok) {
            return {"", "", "", "", "", ""};
        }
        return {num(static_cast<long long>(s->final_n)), num(static_cast<long long>(s->iterations)),
                num(s->c_total),  flag(s->all_exact),
                num(s->error_budget), num(s->approx_ratio)};
    };
    for (const auto& r : rows) {
        std::vector<std::string> f = {num(static_cast<long long>(r.instance)), r.source,
                                      num(static_cast<long long>(r.n)),
                                      num(static_cast<long long>(r.edges)), num(r.c_max),
                                      num(r.ar_original)};
        std::string error = r.error;
        for (const auto& s : {std::optional<DecomposedScore>(r.exact), r.qaoa}) {
            const auto cols = side(s);
            f.insert(f.end(), cols.begin(), cols.end());
            if (s && !s->ok && error.empty()) {
                error = s->error;
            }
        }
        f.push_back(error);
        csv.row(f);
    }
    write_text_file(path, csv.str());
}

void write_iteration_csv(const fs::path& path, const std::vector<IterationArRow>& rows) {
    CsvWriter csv({"instance", "iteration", "n_vertices", "cut_size", "c_total", "ar"});
    for (const auto& r : rows) {
        csv.row({num(static_cast<long long>(r.instance)), num(static_cast<long long>(r.iteration)),
                 num(static_cast<long long>(r.n_vertices)), num(static_cast<long long>(r.cut_size)),
                 num(r.c_total), num(r.approx_ratio)});
    }
    write_text_file(path, csv.str());
}

void write_prob_csv(const fs::path& path, const std::vector<ProbRow>& rows) {
    CsvWriter csv({"instance", "source", "n_original", "n_reduced", "n_opt", "c_max", "gamma",
                   "beta", "p_qaoa", "p_qaoa_empirical", "p_uniform", "p_uniform_x_2pow_n_half",
                   "optimal_hits", "observed", "skipped", "note"});
    for (const auto& r : rows) {
        csv.row({num(static_cast<long long>(r.instance)), r.source,
                 num(static_cast<long long>(r.n_original)),
                 num(static_cast<long long>(r.n_reduced)),
                 num(static_cast<long long>(r.n_opt)), num(r.c_max), num(r.gamma), num(r.beta),
                 num(r.p_qaoa), num(r.p_qaoa_empirical), num(r.p_uniform),
                 num(r.p_uniform_x_2pow_n_half), num(static_cast<long long>(r.optimal_hits)),
                 flag(r.observed), flag(r.skipped), r.note});
    }
    write_text_file(path, csv.str());
}

void write_verify_csv(const fs::path& path, const std::vector<VerifyRow>& rows) {
    CsvWriter csv({"instance", "source", "n", "final_n", "iterations", "all_exact",
                   "original_opt", "reduced_opt_plus_c", "error_sum", "lifted_value", "pass",
                   "error"});
    for (const auto& r : rows) {
        csv.row({num(static_cast<long long>(r.instance)), r.source,
                 num(static_cast<long long>(r.n)), num(static_cast<long long>(r.final_n)),
                 num(static_cast<long long>(r.iterations)), flag(r.all_exact),
                 num(r.original_opt), num(r.reduced_opt_plus_c), num(r.error_budget),
                 r.lifted_value ? num(*r.lifted_value) : "", flag(r.pass), r.error});
    }
    write_text_file(path, csv.str());
}

} // namespace qdecomp
