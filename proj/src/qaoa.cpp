#include "qdecomp/qaoa.hpp"

#include "qdecomp/bfgs.hpp"
#include "qdecomp/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qdecomp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

} // namespace

QaoaParams QaoaParams::canonical() const {
    QaoaParams out = *this;
    for (auto& g : out.gammas) {
        g = wrap_angle(g);
    }
    for (auto& b : out.betas) {
        b = wrap_angle(b);
    }
    return out;
}

P1Evaluator::P1Evaluator(const IsingInstance& ising)
    : n_(ising.n), fields_(ising.fields), offset_(ising.offset), incident_(ising.n) {
    if (static_cast<int>(fields_.size()) != n_) {
        throw InputError("Ising field vector length does not match n");
    }
    std::vector<std::vector<std::pair<int, double>>> adj(n_);
    for (const auto& t : ising.couplings) {
        if (t.i < 0 || t.j < 0 || t.i >= n_ || t.j >= n_ || t.i == t.j) {
            throw InputError("invalid Ising coupling key");
        }
        if (!std::isfinite(t.J)) {
            throw InputError("non-finite Ising coupling");
        }
        adj[t.i].emplace_back(t.j, t.J);
        adj[t.j].emplace_back(t.i, t.J);
    }
    for (int i = 0; i < n_; ++i) {
        auto& list = adj[i];
        std::sort(list.begin(), list.end());
        for (std::size_t k = 1; k < list.size(); ++k) {
            if (list[k].first == list[k - 1].first) {
                throw InputError("duplicate Ising coupling");
            }
        }
        for (const auto& [k, J] : list) {
            incident_[i].push_back(J);
        }
    }
    for (const auto& t : ising.couplings) {
        Coupled c{t.i, t.j, t.J, {}, {}, {}};
        const auto& a = adj[t.i];
        const auto& b = adj[t.j];
        std::size_t x = 0;
        std::size_t y = 0;
        while (x < a.size() || y < b.size()) {
            if (x < a.size() && a[x].first == t.j) {
                ++x;
                continue;
            }
            if (y < b.size() && b[y].first == t.i) {
                ++y;
                continue;
            }
            if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
                c.only_i.push_back(a[x++].second);
            } else if (x == a.size() || b[y].first < a[x].first) {
                c.only_j.push_back(b[y++].second);
            } else {
                c.shared.emplace_back(a[x++].second, b[y++].second);
            }
        }
        couplings_.push_back(std::move(c));
    }
}

double P1Evaluator::vertex_term(int i, double gamma, double beta) const {
    const double h = fields_[i];
    if (h == 0.0) {
        return 0.0;
    }
    double prod = 1.0;
    for (double J : incident_[i]) {
        prod *= std::cos(2.0 * gamma * J);
    }
    return h * std::sin(2.0 * beta) * std::sin(2.0 * gamma * h) * prod;
}

double P1Evaluator::edge_term(const Coupled& c, double gamma, double beta) const {
    const double hi = fields_[c.i];
    const double hj = fields_[c.j];
    double only_i = 1.0;
    for (double J : c.only_i) {
        only_i *= std::cos(2.0 * gamma * J);
    }
    double only_j = 1.0;
    for (double J : c.only_j) {
        only_j *= std::cos(2.0 * gamma * J);
    }
    double shared_i = 1.0;
    double shared_j = 1.0;
    double shared_sum = 1.0;
    double shared_diff = 1.0;
    for (const auto& [Jik, Jjk] : c.shared) {
        shared_i *= std::cos(2.0 * gamma * Jik);
        shared_j *= std::cos(2.0 * gamma * Jjk);
        shared_sum *= std::cos(2.0 * gamma * (Jik + Jjk));
        shared_diff *= std::cos(2.0 * gamma * (Jik - Jjk));
    }
    const double first = 0.5 * c.J * std::sin(4.0 * beta) * std::sin(2.0 * gamma * c.J) *
                         (std::cos(2.0 * gamma * hi) * only_i * shared_i +
                          std::cos(2.0 * gamma * hj) * only_j * shared_j);
    const double s2b = std::sin(2.0 * beta);
    const double second = 0.5 * c.J * s2b * s2b * only_i * only_j *
                          (std::cos(2.0 * gamma * (hi + hj)) * shared_sum -
                           std::cos(2.0 * gamma * (hi - hj)) * shared_diff);
    return first - second;
}

double P1Evaluator::operator()(double gamma, double beta) const {
    double total = offset_;
    for (int i = 0; i < n_; ++i) {
        total += vertex_term(i, gamma, beta);
    }
    for (const auto& c : couplings_) {
        total += edge_term(c, gamma, beta);
    }
    return total;
}

ExpectationBreakdown P1Evaluator::breakdown(double gamma, double beta) const {
    ExpectationBreakdown out;
    out.total = offset_;
    out.vertex_terms.resize(n_);
    for (int i = 0; i < n_; ++i) {
        out.vertex_terms[i] = vertex_term(i, gamma, beta);
        out.total += out.vertex_terms[i];
    }
    for (const auto& c : couplings_) {
        const double v = edge_term(c, gamma, beta);
        out.edge_terms.push_back({c.i, c.j, v});
        out.total += v;
    }
    return out;
}

ExpectationBreakdown expectation_p1(const IsingInstance& ising, const QaoaParams& params) {
    if (params.layers() != 1 || params.betas.size() != 1) {
        throw UnsupportedError("closed-form expectation is only available for p = 1; got p = " +
                               std::to_string(params.layers()));
    }
    return P1Evaluator(ising).breakdown(params.gammas[0], params.betas[0]);
}

OptimizeResult optimize_params(const IsingInstance& ising, int restarts, std::uint64_t seed) {
    if (restarts < 1) {
        throw InputError("optimize_params: restarts must be >= 1");
    }
    const P1Evaluator eval(ising);
    OptimizeResult best;
    best.params = QaoaParams::p1(0.0, 0.0);
    best.value = eval(0.0, 0.0);

    const bool trivial =
        ising.couplings.empty() &&
        std::all_of(ising.fields.begin(), ising.fields.end(), [](double h) { return h == 0.0; });
    if (trivial) {
        return best;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const Objective negated = [&](std::span<const double> x) { return -eval(x[0], x[1]); };
    bool any_converged = false;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        const double g0 = angle(rng);
        const double b0 = angle(rng);
        BfgsResult res = minimize_bfgs(negated, {g0, b0});
        if (!std::isfinite(res.value)) {
            throw NumericError("QAOA objective became non-finite during optimization");
        }
        any_converged = any_converged || res.converged;
        const double value = -res.value;
        if (!have_best || value > best.value) {
            best.value = value;
            best.params = QaoaParams::p1(res.x[0], res.x[1]);
            have_best = true;
        }
    }
    best.warning = !any_converged;
    return best;
}

std::vector<double> cost_table(const QuboInstance& inst) {
    const int n = inst.size();
    if (n > kStatevectorMaxQubits) {
        throw ResourceError("cost table limited to " + std::to_string(kStatevectorMaxQubits) +
                            " variables; got " + std::to_string(n));
    }
    std::vector<std::vector<std::pair<int, double>>> lower(n);
    for (const auto& t : inst.quad()) {
        lower[t.j].emplace_back(t.i, t.J);
        lower[t.i].emplace_back(t.j, t.J);
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> costs(dim);
    costs[0] = inst.offset();
    for (std::size_t idx = 1; idx < dim; ++idx) {
        const int q = std::countr_zero(idx);
        const std::size_t rest = idx & (idx - 1);
        double v = costs[rest] + inst.lin()[q];
        for (const auto& [k, J] : lower[q]) {
            if ((rest >> k) & 1U) {
                v += J;
            }
        }
        costs[idx] = v;
    }
    return costs;
}

std::vector<std::complex<double>> statevector(const QuboInstance& inst, const QaoaParams& params) {
    if (params.gammas.size() != params.betas.size()) {
        throw InputError("gamma and beta lists must have equal length");
    }
    const int n = inst.size();
    const auto costs = cost_table(inst);
    const std::size_t dim = costs.size();
    std::vector<std::complex<double>> psi(dim, std::complex<double>(1.0 / std::sqrt(double(dim)), 0.0));
    for (int layer = 0; layer < params.layers(); ++layer) {
        const double gamma = params.gammas[layer];
        for (std::size_t idx = 0; idx < dim; ++idx) {
            psi[idx] *= std::polar(1.0, -gamma * costs[idx]);
        }
        const double c = std::cos(params.betas[layer]);
        const std::complex<double> ms(0.0, -std::sin(params.betas[layer]));
        for (int q = 0; q < n; ++q) {
            const std::size_t bit = std::size_t{1} << q;
            for (std::size_t idx = 0; idx < dim; ++idx) {
                if (idx & bit) {
                    continue;
                }
                const auto a0 = psi[idx];
                const auto a1 = psi[idx | bit];
                psi[idx] = c * a0 + ms * a1;
                psi[idx | bit] = ms * a0 + c * a1;
            }
        }
    }
    return psi;
}

double expectation_from_state(std::span<const std::complex<double>> amplitudes,
                              std::span<const double> costs) {
    if (amplitudes.size() != costs.size()) {
        throw InputError("amplitude and cost vectors differ in length");
    }
    double e = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        e += std::norm(amplitudes[i]) * costs[i];
    }
    return e;
}

std::vector<std::uint64_t> sample(std::span<const std::complex<double>> amplitudes, int shots,
                                  std::uint64_t seed) {
    if (shots < 0) {
        throw InputError("shot count must be non-negative");
    }
    if (amplitudes.empty()) {
        throw InputError("cannot sample from an empty state");
    }
    std::vector<double> cdf(amplitudes.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        acc += std::norm(amplitudes[i]);
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, acc);
    std::vector<std::uint64_t> out;
    out.reserve(shots);
    for (int s = 0; s < shots; ++s) {
        const double r = u(rng);
        // upper_bound never lands on a zero-probability entry: its cdf equals its predecessor's.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        if (it == cdf.end()) {
            // r rounded up to the total mass: take the last outcome with nonzero mass.
            it = std::lower_bound(cdf.begin(), cdf.end(), cdf.back());
        }
        out.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
    }
    return out;
}

SolveReport report(const QuboInstance& inst, const QaoaParams& params, int shots,
                   std::uint64_t seed, double oracle_value, std::uint64_t n_opt) {
    SolveReport rep;
    rep.n = inst.size();
    rep.shots = shots;
    rep.c_max = oracle_value;
    rep.n_opt = n_opt;
    const auto costs = cost_table(inst);
    const auto psi = statevector(inst, params);
    rep.expectation = expectation_from_state(psi, costs);
    const double tol = 1e-9 * std::max(1.0, std::abs(oracle_value));
    for (std::size_t i = 0; i < costs.size(); ++i) {
        if (costs[i] >= oracle_value - tol) {
            rep.p_opt_qaoa += std::norm(psi[i]);
        }
    }
    for (std::uint64_t idx : sample(psi, shots, seed)) {
        if (costs[idx] >= oracle_value - tol) {
            ++rep.optimal_hits;
        }
    }
    rep.p_opt_empirical = shots > 0 ? double(rep.optimal_hits) / shots : 0.0;
    rep.p_opt_uniform = double(n_opt) / std::ldexp(1.0, rep.n);
    rep.p_uniform_enhanced = rep.p_opt_uniform * std::pow(2.0, rep.n / 2.0);
    if (oracle_value > 0.0) {
        rep.approx_ratio = rep.expectation / oracle_value;
    }
    return rep;
}

} // namespace qdecomp
