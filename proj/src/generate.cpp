#include "qdecomp/generate.hpp"

#include "qdecomp/error.hpp"

#include <random>
#include <string>
#include <utility>

namespace qdecomp {

namespace {

constexpr int kMaxRestarts = 1000;
constexpr int kRedraws = 64;

/// One pairing attempt; empty when it got stuck.
std::vector<Edge> try_pairing(int n, int k, std::mt19937_64& rng) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * k);
    for (int v = 0; v < n; ++v) {
        stubs.insert(stubs.end(), k, v);
    }
    std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
    std::vector<Edge> edges;
    auto suitable = [&](int a, int b) { return a != b && !adjacent[a][b]; };
    auto take = [&](std::size_t x, std::size_t y) {
        const int a = stubs[x];
        const int b = stubs[y];
        adjacent[a][b] = adjacent[b][a] = 1;
        edges.push_back({std::min(a, b), std::max(a, b), 1.0});
        // Remove the higher index first so the lower one stays valid.
        for (std::size_t idx : {std::max(x, y), std::min(x, y)}) {
            stubs[idx] = stubs.back();
            stubs.pop_back();
        }
    };
    while (!stubs.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
        bool placed = false;
        for (int attempt = 0; attempt < kRedraws && !placed; ++attempt) {
            const std::size_t x = pick(rng);
            const std::size_t y = pick(rng);
            if (x != y && suitable(stubs[x], stubs[y])) {
                take(x, y);
                placed = true;
            }
        }
        if (placed) {
            continue;
        }
        // Random draws keep failing: fall back to the first suitable pair, if any.
        for (std::size_t x = 0; x < stubs.size() && !placed; ++x) {
            for (std::size_t y = x + 1; y < stubs.size(); ++y) {
                if (suitable(stubs[x], stubs[y])) {
                    take(x, y);
                    placed = true;
                    break;
                }
            }
        }
        if (!placed) {
            return {};
        }
    }
    return edges;
}

} // namespace

WeightedGraph generate_regular(int n, int k, std::uint64_t seed) {
    if (n < 1 || k < 1 || k >= n) {
        throw InputError("k-regular generation needs 1 <= k < n; got n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
    }
    if ((static_cast<long long>(n) * k) % 2 != 0) {
        throw InputError("n*k must be even for a k-regular graph");
    }
    if (k == 1 && n > 2) {
        throw InputError("no connected 1-regular graph has more than 2 vertices");
    }
    std::mt19937_64 rng(seed);
    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        std::vector<Edge> edges = try_pairing(n, k, rng);
        if (edges.empty()) {
            continue;
        }
        WeightedGraph g(n, std::move(edges));
        if (is_connected(g)) {
            return g;
        }
    }
    throw ResourceError("no connected " + std::to_string(k) + "-regular graph on " +
                        std::to_string(n) + " vertices after " + std::to_string(kMaxRestarts) +
                        " restarts");
}

} // namespace qdecomp
