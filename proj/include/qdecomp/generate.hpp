#pragma once

#include "qdecomp/graph.hpp"

#include <cstdint>

namespace qdecomp {

/// Random connected simple k-regular graph on n vertices with unit weights.
///
/// Stubs are paired one at a time, each pair drawn uniformly among the remaining stubs and
/// redrawn when it would create a loop or a repeated edge. A run that gets stuck or ends
/// disconnected is restarted; after 1000 restarts ResourceError is thrown.
/// Throws InputError when n k is odd, k >= n, k < 1, or k = 1 with n > 2.
WeightedGraph generate_regular(int n, int k, std::uint64_t seed);

} // namespace qdecomp
