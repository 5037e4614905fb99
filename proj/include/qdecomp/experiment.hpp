#pragma once

#include "qdecomp/decompose.hpp"
#include "qdecomp/graph.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qdecomp {

/// Brute-force limit for original instances in experiments (above the subproblem default).
inline constexpr int kOracleLimit = 26;

struct ExperimentSpec {
    int n = 24;
    int k = 3;
    int count = 10;
    std::uint64_t seed = 1;
    DecompConfig cfg;
    int shots = 500;
    /// BFGS restarts when scoring instances with p = 1 QAOA.
    int restarts = 100;
    /// Graph files to use instead of generated k-regular instances.
    std::vector<std::filesystem::path> inputs;
    /// Output directory; nothing is written when empty.
    std::filesystem::path out;
    /// Also record the A.R. after every iteration (exact backend).
    bool per_iteration = false;
    /// Also decompose with the QAOA subproblem backend.
    bool qaoa_backend = true;

    void validate() const;
};

struct Instance {
    int id = 0;
    std::string source;
    WeightedGraph graph;
};

/// Generated or loaded instances, ordered by id.
std::vector<Instance> load_instances(const ExperimentSpec& spec);

struct DecomposedScore {
    bool ok = false;
    int final_n = 0;
    int iterations = 0;
    double c_total = 0.0;
    bool all_exact = false;
    double error_budget = 0.0;
    double approx_ratio = 0.0;
    std::string error;
};

struct ArRow {
    int instance = 0;
    std::string source;
    int n = 0;
    std::size_t edges = 0;
    double c_max = 0.0;
    double ar_original = 0.0;
    DecomposedScore exact;
    std::optional<DecomposedScore> qaoa;
    std::string error;
};

struct IterationArRow {
    int instance = 0;
    int iteration = 0; ///< 0 is the original instance
    int n_vertices = 0;
    int cut_size = 0;
    double c_total = 0.0;
    double approx_ratio = 0.0;
};

struct ArReport {
    std::vector<ArRow> rows;
    std::vector<IterationArRow> iterations;
};

/// Original versus decomposed p = 1 approximation ratios.
ArReport run_decompose(const ExperimentSpec& spec);

struct ProbRow {
    int instance = 0;
    std::string source;
    int n_original = 0;
    int n_reduced = 0;
    std::uint64_t n_opt = 0;
    double c_max = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    double p_qaoa = 0.0;
    double p_qaoa_empirical = 0.0;
    double p_uniform = 0.0;
    double p_uniform_x_2pow_n_half = 0.0;
    int optimal_hits = 0;
    bool observed = false;
    bool skipped = false;
    std::string note;
};

inline constexpr int kProbabilityMaxQubits = 16;

/// Optimal-solution probabilities of optimized p = 1 QAOA on exactly decomposed instances.
std::vector<ProbRow> run_probability_study(const ExperimentSpec& spec);

struct VerifyRow {
    int instance = 0;
    std::string source;
    int n = 0;
    int final_n = 0;
    int iterations = 0;
    bool all_exact = false;
    double original_opt = 0.0;
    double reduced_opt_plus_c = 0.0;
    double error_budget = 0.0;
    std::optional<double> lifted_value;
    bool pass = false;
    std::string error;
};

/// Brute-force check that decomposition preserves the optimum (exact subproblem backend).
std::vector<VerifyRow> run_verification(const ExperimentSpec& spec);

/// p = 1 approximation ratio of `inst` against `c_max` after optimizing the angles.
double optimized_ratio(const QuboInstance& inst, double c_max, int restarts, std::uint64_t seed);

void write_ar_csv(const std::filesystem::path& path, const std::vector<ArRow>& rows);
void write_iteration_csv(const std::filesystem::path& path,
                         const std::vector<IterationArRow>& rows);
void write_prob_csv(const std::filesystem::path& path, const std::vector<ProbRow>& rows);
void write_verify_csv(const std::filesystem::path& path, const std::vector<VerifyRow>& rows);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace qdecomp
