#include "qdecomp/qubo.hpp"

#include "qdecomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qdecomp {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InputError(std::string("non-finite ") + what);
    }
}

} // namespace

QuboInstance::QuboInstance(int n) : QuboInstance(n, {}, std::vector<double>(n < 0 ? 0 : n), 0.0) {}

QuboInstance::QuboInstance(int n, std::vector<QuadTerm> quad, std::vector<double> lin,
                           double offset)
    : n_(n), quad_(std::move(quad)), lin_(std::move(lin)), offset_(offset) {
    if (n < 0) {
        throw InputError("variable count must be non-negative");
    }
    if (lin_.empty()) {
        lin_.assign(n, 0.0);
    }
    if (static_cast<int>(lin_.size()) != n) {
        throw InputError("linear coefficient vector has length " + std::to_string(lin_.size()) +
                         ", expected " + std::to_string(n));
    }
    for (double v : lin_) {
        require_finite(v, "linear coefficient");
    }
    require_finite(offset_, "offset");
    for (auto& t : quad_) {
        if (t.i < 0 || t.j < 0 || t.i >= n || t.j >= n || t.i == t.j) {
            throw InputError("invalid quadratic key (" + std::to_string(t.i) + ", " +
                             std::to_string(t.j) + ")");
        }
        require_finite(t.J, "quadratic coefficient");
        if (t.i > t.j) {
            std::swap(t.i, t.j);
        }
    }
    std::sort(quad_.begin(), quad_.end(), [](const QuadTerm& a, const QuadTerm& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    for (std::size_t k = 1; k < quad_.size(); ++k) {
        if (quad_[k].i == quad_[k - 1].i && quad_[k].j == quad_[k - 1].j) {
            throw InputError("duplicate quadratic key (" + std::to_string(quad_[k].i) + ", " +
                             std::to_string(quad_[k].j) + ")");
        }
    }
}

double QuboInstance::coupling(int i, int j) const {
    if (i > j) {
        std::swap(i, j);
    }
    auto it = std::lower_bound(quad_.begin(), quad_.end(), std::pair(i, j),
                               [](const QuadTerm& t, const std::pair<int, int>& key) {
                                   return std::pair(t.i, t.j) < key;
                               });
    return (it != quad_.end() && it->i == i && it->j == j) ? it->J : 0.0;
}

QuboInstance QuboInstance::with_offset(double offset) const {
    QuboInstance copy = *this;
    require_finite(offset, "offset");
    copy.offset_ = offset;
    return copy;
}

QuboBuilder::QuboBuilder(int n) : n_(n), lin_(n < 0 ? 0 : n, 0.0) {
    if (n < 0) {
        throw InputError("variable count must be non-negative");
    }
}

QuboBuilder& QuboBuilder::add_quad(int i, int j, double value) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw InputError("quadratic key out of range");
    }
    require_finite(value, "quadratic coefficient");
    if (i == j) {
        lin_[i] += value;
        return *this;
    }
    if (i > j) {
        std::swap(i, j);
    }
    quad_[{i, j}] += value;
    return *this;
}

QuboBuilder& QuboBuilder::add_lin(int i, double value) {
    if (i < 0 || i >= n_) {
        throw InputError("linear key out of range");
    }
    require_finite(value, "linear coefficient");
    lin_[i] += value;
    return *this;
}

QuboBuilder& QuboBuilder::add_offset(double value) {
    require_finite(value, "offset");
    offset_ += value;
    return *this;
}

QuboInstance QuboBuilder::build() const {
    std::vector<QuadTerm> quad;
    quad.reserve(quad_.size());
    for (const auto& [key, v] : quad_) {
        if (v != 0.0) {
            quad.push_back({key.first, key.second, v});
        }
    }
    return QuboInstance(n_, std::move(quad), lin_, offset_);
}

double evaluate(const QuboInstance& inst, std::span<const std::uint8_t> z) {
    if (static_cast<int>(z.size()) != inst.size()) {
        throw InputError("bitstring length " + std::to_string(z.size()) +
                         " does not match instance size " + std::to_string(inst.size()));
    }
    double value = inst.offset();
    for (const auto& t : inst.quad()) {
        if (z[t.i] && z[t.j]) {
            value += t.J;
        }
    }
    for (int i = 0; i < inst.size(); ++i) {
        if (z[i]) {
            value += inst.lin()[i];
        }
    }
    return value;
}

double evaluate(const IsingInstance& inst, std::span<const std::int8_t> spins) {
    if (static_cast<int>(spins.size()) != inst.n) {
        throw InputError("spin vector length does not match instance size");
    }
    double value = inst.offset;
    for (const auto& t : inst.couplings) {
        value += t.J * spins[t.i] * spins[t.j];
    }
    for (int i = 0; i < inst.n; ++i) {
        value += inst.fields[i] * spins[i];
    }
    return value;
}

QuboInstance maxcut_to_qubo(const WeightedGraph& g) {
    // w (z_i + z_j - 2 z_i z_j) is w exactly when the edge crosses the partition.
    QuboBuilder b(g.size());
    for (const auto& e : g.edges()) {
        b.add_quad(e.u, e.v, -2.0 * e.w);
        b.add_lin(e.u, e.w);
        b.add_lin(e.v, e.w);
    }
    return b.build();
}

IsingInstance qubo_to_ising(const QuboInstance& inst) {
    // z = (1 - s) / 2
    IsingInstance out;
    out.n = inst.size();
    out.fields.assign(inst.size(), 0.0);
    out.offset = inst.offset();
    for (const auto& t : inst.quad()) {
        const double q = t.J / 4.0;
        out.couplings.push_back({t.i, t.j, q});
        out.fields[t.i] -= q;
        out.fields[t.j] -= q;
        out.offset += q;
    }
    for (int i = 0; i < inst.size(); ++i) {
        const double h = inst.lin()[i] / 2.0;
        out.fields[i] -= h;
        out.offset += h;
    }
    return out;
}

QuboInstance ising_to_qubo(const IsingInstance& ising) {
    // s = 1 - 2 z
    QuboBuilder b(ising.n);
    b.add_offset(ising.offset);
    for (const auto& t : ising.couplings) {
        b.add_quad(t.i, t.j, 4.0 * t.J);
        b.add_lin(t.i, -2.0 * t.J);
        b.add_lin(t.j, -2.0 * t.J);
        b.add_offset(t.J);
    }
    for (int i = 0; i < ising.n; ++i) {
        b.add_lin(i, -2.0 * ising.fields[i]);
        b.add_offset(ising.fields[i]);
    }
    return b.build();
}

WeightedGraph interaction_graph(const QuboInstance& inst) {
    std::vector<Edge> edges;
    edges.reserve(inst.quad().size());
    for (const auto& t : inst.quad()) {
        if (t.J != 0.0) {
            edges.push_back({t.i, t.j, t.J});
        }
    }
    return WeightedGraph(inst.size(), std::move(edges));
}

RestrictedInstance restrict(const QuboInstance& inst, const Restriction& r) {
    enum : char { Free = 0, Zero = 1, One = 2 };
    std::vector<char> state(inst.size(), Free);
    auto mark = [&](const std::vector<int>& idx, char s) {
        for (int i : idx) {
            if (i < 0 || i >= inst.size()) {
                throw InputError("restriction index " + std::to_string(i) + " out of range");
            }
            if (state[i] != Free) {
                throw InputError("variable " + std::to_string(i) +
                                 " fixed more than once (F0 and F1 must be disjoint)");
            }
            state[i] = s;
        }
    };
    mark(r.fixed0, Zero);
    mark(r.fixed1, One);

    RestrictedInstance out;
    std::vector<int> local(inst.size(), -1);
    for (int i = 0; i < inst.size(); ++i) {
        if (state[i] == Free) {
            local[i] = static_cast<int>(out.free_vars.size());
            out.free_vars.push_back(i);
        }
    }
    QuboBuilder b(static_cast<int>(out.free_vars.size()));
    double constant = inst.offset();
    for (const auto& t : inst.quad()) {
        const char si = state[t.i];
        const char sj = state[t.j];
        if (si == Zero || sj == Zero) {
            continue;
        }
        if (si == Free && sj == Free) {
            b.add_quad(local[t.i], local[t.j], t.J);
        } else if (si == Free) {
            b.add_lin(local[t.i], t.J);
        } else if (sj == Free) {
            b.add_lin(local[t.j], t.J);
        } else {
            constant += t.J;
        }
    }
    for (int i = 0; i < inst.size(); ++i) {
        if (state[i] == Free) {
            b.add_lin(local[i], inst.lin()[i]);
        } else if (state[i] == One) {
            constant += inst.lin()[i];
        }
    }
    out.sub = b.build();
    out.constant = constant;
    return out;
}

InducedQubo induced_instance(const QuboInstance& inst, std::span<const int> subset) {
    std::vector<int> verts(subset.begin(), subset.end());
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
        throw InputError("induced_instance: repeated index");
    }
    std::vector<int> local(inst.size(), -1);
    for (std::size_t k = 0; k < verts.size(); ++k) {
        if (verts[k] < 0 || verts[k] >= inst.size()) {
            throw InputError("induced_instance: index out of range");
        }
        local[verts[k]] = static_cast<int>(k);
    }
    std::vector<QuadTerm> quad;
    for (const auto& t : inst.quad()) {
        if (local[t.i] >= 0 && local[t.j] >= 0) {
            quad.push_back({local[t.i], local[t.j], t.J});
        }
    }
    std::vector<double> lin(verts.size());
    for (std::size_t k = 0; k < verts.size(); ++k) {
        lin[k] = inst.lin()[verts[k]];
    }
    return {QuboInstance(static_cast<int>(verts.size()), std::move(quad), std::move(lin), 0.0),
            std::move(verts)};
}

Bitstring lift(const RestrictedInstance& r, const Restriction& fixing, int parent_size,
               std::span<const std::uint8_t> free_values) {
    if (free_values.size() != r.free_vars.size()) {
        throw InputError("free assignment has wrong length");
    }
    Bitstring z(parent_size, 0);
    for (int i : fixing.fixed1) {
        z[i] = 1;
    }
    for (std::size_t k = 0; k < r.free_vars.size(); ++k) {
        z[r.free_vars[k]] = free_values[k];
    }
    return z;
}

} // namespace qdecomp
