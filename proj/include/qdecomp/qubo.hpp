#pragma once

#include "qdecomp/graph.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace qdecomp {

/// Assignment of 0/1 values, one entry per variable.
using Bitstring = std::vector<std::uint8_t>;

/// Coefficient of z_i z_j, stored once per unordered pair with i < j.
struct QuadTerm {
    int i = 0;
    int j = 0;
    double J = 0.0;

    friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

/// Maximization QUBO
///
///     C(z) = sum_{i<j} J_ij z_i z_j + sum_i J_ii z_i + offset.
///
/// Each pair is stored once. The symmetric double-sum form sum_i sum_{j!=i} J_ij z_i z_j
/// counts every pair twice; conversions here work at the level of objective values, so a
/// pair-once coefficient equals twice the symmetric-matrix entry.
class QuboInstance {
public:
    QuboInstance() = default;
    explicit QuboInstance(int n);
    /// Rejects out-of-range keys, i == j, duplicate pairs and non-finite values.
    QuboInstance(int n, std::vector<QuadTerm> quad, std::vector<double> lin, double offset = 0.0);

    int size() const { return n_; }
    const std::vector<QuadTerm>& quad() const { return quad_; }
    const std::vector<double>& lin() const { return lin_; }
    double offset() const { return offset_; }
    /// Coefficient of z_i z_j (0 when absent).
    double coupling(int i, int j) const;

    QuboInstance with_offset(double offset) const;

    friend bool operator==(const QuboInstance&, const QuboInstance&) = default;

private:
    int n_ = 0;
    std::vector<QuadTerm> quad_;
    std::vector<double> lin_;
    double offset_ = 0.0;
};

/// Accumulating constructor for QuboInstance: repeated pairs are summed, exact zeros dropped.
class QuboBuilder {
public:
    explicit QuboBuilder(int n);
    QuboBuilder& add_quad(int i, int j, double value);
    QuboBuilder& add_lin(int i, double value);
    QuboBuilder& add_offset(double value);
    QuboInstance build() const;

private:
    int n_;
    std::map<std::pair<int, int>, double> quad_;
    std::vector<double> lin_;
    double offset_ = 0.0;
};

/// E(sigma) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i + offset, spins s_i in {+1, -1}.
/// Spin s_i = 1 - 2 z_i, so bit 0 is spin up.
struct IsingInstance {
    int n = 0;
    std::vector<QuadTerm> couplings;
    std::vector<double> fields;
    double offset = 0.0;
};

struct Restriction {
    std::vector<int> fixed0;
    std::vector<int> fixed1;
};

/// Restriction of a parent instance: `sub` lives on `free_vars` (in order) and
/// parent(lift(z)) == sub(z) + constant.
struct RestrictedInstance {
    std::vector<int> free_vars;
    QuboInstance sub;
    double constant = 0.0;
};

/// Sub-instance on a vertex subset: quadratic terms inside the subset and the subset's linear
/// terms. The parent offset is not carried over.
struct InducedQubo {
    QuboInstance instance;
    std::vector<int> to_parent;
};

double evaluate(const QuboInstance& inst, std::span<const std::uint8_t> z);
double evaluate(const IsingInstance& inst, std::span<const std::int8_t> spins);

/// QUBO whose value at z is the weight of edges crossing the partition z.
QuboInstance maxcut_to_qubo(const WeightedGraph& g);
IsingInstance qubo_to_ising(const QuboInstance& inst);
QuboInstance ising_to_qubo(const IsingInstance& ising);

/// Graph whose edges are the nonzero quadratic terms (weight = coefficient).
WeightedGraph interaction_graph(const QuboInstance& inst);

RestrictedInstance restrict(const QuboInstance& inst, const Restriction& r);

InducedQubo induced_instance(const QuboInstance& inst, std::span<const int> subset);

/// Expands an assignment of the free variables into a full parent assignment.
Bitstring lift(const RestrictedInstance& r, const Restriction& fixing, int parent_size,
               std::span<const std::uint8_t> free_values);

} // namespace qdecomp
