#include "qdecomp/io.hpp"

#include "qdecomp/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qdecomp {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') {
            continue;
        }
        return true;
    }
    return false;
}

double parse_finite(const std::string& token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw InputError("invalid or non-finite number '" + token + "'");
    }
    return v;
}

double json_finite(const nlohmann::json& v) {
    if (!v.is_number()) {
        throw InputError("expected a number in QUBO JSON");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw InputError("non-finite number in QUBO JSON");
    }
    return d;
}

int json_index(const nlohmann::json& v) {
    if (!v.is_number_integer()) {
        throw InputError("expected an integer index in QUBO JSON");
    }
    return v.get<int>();
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

WeightedGraph read_graph(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) {
        throw InputError("graph file is empty");
    }
    std::istringstream header(line);
    long long n = -1;
    long long m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0) {
        throw InputError("graph header must be `n m` with non-negative integers");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long k = 0; k < m; ++k) {
        if (!next_content_line(in, line)) {
            throw InputError("graph file ends after " + std::to_string(k) + " of " +
                             std::to_string(m) + " edges");
        }
        std::istringstream row(line);
        long long i = -1;
        long long j = -1;
        std::string wtok;
        if (!(row >> i >> j >> wtok)) {
            throw InputError("malformed edge line: '" + line + "'");
        }
        edges.push_back({static_cast<int>(i), static_cast<int>(j), parse_finite(wtok)});
    }
    if (next_content_line(in, line)) {
        throw InputError("trailing content after " + std::to_string(m) + " edges");
    }
    return WeightedGraph(static_cast<int>(n), std::move(edges));
}

WeightedGraph read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open graph file " + path.string());
    }
    return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << g.size() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
    }
}

void write_graph_file(const std::filesystem::path& path, const WeightedGraph& g) {
    std::ofstream out(path);
    if (!out) {
        throw ResourceError("cannot write graph file " + path.string());
    }
    write_graph(out, g);
}

nlohmann::json qubo_to_json(const QuboInstance& inst) {
    nlohmann::json quad = nlohmann::json::array();
    for (const auto& t : inst.quad()) {
        quad.push_back({t.i, t.j, t.J});
    }
    nlohmann::json lin = nlohmann::json::array();
    for (int i = 0; i < inst.size(); ++i) {
        if (inst.lin()[i] != 0.0) {
            lin.push_back({i, inst.lin()[i]});
        }
    }
    return {{"n", inst.size()}, {"quad", quad}, {"lin", lin}, {"offset", inst.offset()}};
}

QuboInstance qubo_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n")) {
        throw InputError("QUBO JSON must be an object with field `n`");
    }
    const int n = json_index(j.at("n"));
    if (n < 0) {
        throw InputError("QUBO JSON: n must be non-negative");
    }
    QuboBuilder b(n);
    if (j.contains("quad")) {
        for (const auto& t : j.at("quad")) {
            if (!t.is_array() || t.size() != 3) {
                throw InputError("QUBO JSON: quad entries are [i, j, J]");
            }
            const int a = json_index(t[0]);
            const int c = json_index(t[1]);
            if (a == c) {
                throw InputError("QUBO JSON: quad entry with i == j; use `lin`");
            }
            b.add_quad(a, c, json_finite(t[2]));
        }
    }
    if (j.contains("lin")) {
        for (const auto& t : j.at("lin")) {
            if (!t.is_array() || t.size() != 2) {
                throw InputError("QUBO JSON: lin entries are [i, J]");
            }
            b.add_lin(json_index(t[0]), json_finite(t[1]));
        }
    }
    if (j.contains("offset")) {
        b.add_offset(json_finite(j.at("offset")));
    }
    return b.build();
}

QuboInstance read_qubo_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open QUBO file " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("QUBO JSON parse error: ") + e.what());
    }
    return qubo_from_json(j);
}

void write_qubo_file(const std::filesystem::path& path, const QuboInstance& inst) {
    std::ofstream out(path);
    if (!out) {
        throw ResourceError("cannot write QUBO file " + path.string());
    }
    out << qubo_to_json(inst).dump(2) << '\n';
}

} // namespace qdecomp
