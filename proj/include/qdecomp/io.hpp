#pragma once

#include "qdecomp/graph.hpp"
#include "qdecomp/qubo.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace qdecomp {

// Graph text format: header line `n m`, then m lines `i j w` (0-based vertices).
// Blank lines and lines starting with '#' are ignored.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_graph_file(const std::filesystem::path& path, const WeightedGraph& g);

// QUBO JSON: {"n": int, "quad": [[i, j, J], ...], "lin": [[i, J], ...], "offset": real}.
nlohmann::json qubo_to_json(const QuboInstance& inst);
QuboInstance qubo_from_json(const nlohmann::json& j);
QuboInstance read_qubo_file(const std::filesystem::path& path);
void write_qubo_file(const std::filesystem::path& path, const QuboInstance& inst);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

} // namespace qdecomp
