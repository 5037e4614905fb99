#pragma once

#include "qdecomp/qubo.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qdecomp {

/// Angles per layer: layer l applies exp(-i gammas[l] C) then exp(-i betas[l] sum_q X_q).
struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    static QaoaParams p1(double gamma, double beta) { return {{gamma}, {beta}}; }
    int layers() const { return static_cast<int>(gammas.size()); }
    /// Same angles wrapped into [0, 2 pi). Preserves the expectation only when every cost
    /// value is an integer; optimize_params returns unwrapped angles.
    QaoaParams canonical() const;
};

struct PairValue {
    int i = 0;
    int j = 0;
    double value = 0.0;
};

/// p = 1 expectation split into per-vertex <h_i s_i> and per-coupling <J_ij s_i s_j> terms.
struct ExpectationBreakdown {
    std::vector<double> vertex_terms;
    std::vector<PairValue> edge_terms;
    double total = 0.0;
};

/// Closed-form p = 1 evaluator for Ising costs. Neighbor structure (shared and exclusive
/// neighbors of every coupled pair) is precomputed so repeated evaluation during parameter
/// optimization costs O(sum of degrees) per call.
class P1Evaluator {
public:
    explicit P1Evaluator(const IsingInstance& ising);

    double operator()(double gamma, double beta) const;
    ExpectationBreakdown breakdown(double gamma, double beta) const;

private:
    struct Coupled {
        int i;
        int j;
        double J;
        std::vector<double> only_i;   ///< J_ik for neighbors k of i that are not neighbors of j
        std::vector<double> only_j;   ///< J_jk for neighbors k of j that are not neighbors of i
        std::vector<std::pair<double, double>> shared; ///< (J_ik, J_jk) for common neighbors k
    };

    double vertex_term(int i, double gamma, double beta) const;
    double edge_term(const Coupled& c, double gamma, double beta) const;

    int n_ = 0;
    std::vector<double> fields_;
    double offset_ = 0.0;
    std::vector<std::vector<double>> incident_; ///< J_ik over all neighbors k of i
    std::vector<Coupled> couplings_;
};

/// <C> for one QAOA layer via the closed form. Throws UnsupportedError unless params.layers() == 1.
ExpectationBreakdown expectation_p1(const IsingInstance& ising, const QaoaParams& params);

struct OptimizeResult {
    QaoaParams params;
    double value = 0.0;
    /// True when no restart converged (line search failures everywhere).
    bool warning = false;
};

/// Multi-start BFGS ascent of the p = 1 closed form from uniform starts in [0, 2 pi)^2.
/// Deterministic given the seed; ties between restarts go to the lowest restart index.
OptimizeResult optimize_params(const IsingInstance& ising, int restarts = 100,
                               std::uint64_t seed = 0);

inline constexpr int kStatevectorMaxQubits = 24;

/// Objective value of every basis state; bit q of the index is z_q.
std::vector<double> cost_table(const QuboInstance& inst);

/// Exact QAOA state from the uniform superposition. n <= 24.
std::vector<std::complex<double>> statevector(const QuboInstance& inst, const QaoaParams& params);

double expectation_from_state(std::span<const std::complex<double>> amplitudes,
                              std::span<const double> costs);

/// Born-rule samples (basis-state indices) by inverse CDF over |amplitude|^2.
std::vector<std::uint64_t> sample(std::span<const std::complex<double>> amplitudes, int shots,
                                  std::uint64_t seed);

struct SolveReport {
    int n = 0;
    double expectation = 0.0;
    double c_max = 0.0;
    std::optional<double> approx_ratio;
    double p_opt_qaoa = 0.0;
    double p_opt_empirical = 0.0;
    double p_opt_uniform = 0.0;
    /// p_opt_uniform * 2^(n/2), a reference column only.
    double p_uniform_enhanced = 0.0;
    std::uint64_t n_opt = 0;
    int shots = 0;
    int optimal_hits = 0;
};

/// Exact and sampled statistics of the QAOA state for `inst`, given the true optimum
/// `oracle_value` and the number of optimal bitstrings `n_opt`.
SolveReport report(const QuboInstance& inst, const QaoaParams& params, int shots,
                   std::uint64_t seed, double oracle_value, std::uint64_t n_opt);

} // namespace qdecomp
