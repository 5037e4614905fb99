#include "oracles.hpp"

#include "qdecomp/error.hpp"
#include "qdecomp/generate.hpp"

#include <doctest.h>

using namespace qdecomp;

TEST_CASE("small cases") {
    CHECK(generate_regular(4, 3, 1) == oracle::complete_graph(4));
    CHECK(generate_regular(2, 1, 1) == WeightedGraph(2, {{0, 1, 1.0}}));
    CHECK_THROWS_AS(generate_regular(5, 3, 1), InputError);
    CHECK_THROWS_AS(generate_regular(4, 4, 1), InputError);
    CHECK_THROWS_AS(generate_regular(6, 1, 1), InputError);
    CHECK_THROWS_AS(generate_regular(6, 0, 1), InputError);
}

TEST_CASE("generated graphs are connected and regular") {
    for (int k : {2, 3, 4, 5}) {
        for (int n : {10, 20, 31, 40}) {
            if ((n * k) % 2 != 0) {
                continue;
            }
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto g = generate_regular(n, k, seed);
                std::vector<bool> alive(n, true);
                CHECK(oracle::component_count(n, g.edges(), alive) == 1);
                for (int v = 0; v < n; ++v) {
                    CHECK(g.degree(v) == k);
                }
                for (const auto& e : g.edges()) {
                    CHECK(e.w == 1.0);
                }
            }
        }
    }
}

TEST_CASE("generation is deterministic per seed") {
    CHECK(generate_regular(24, 3, 7) == generate_regular(24, 3, 7));
    CHECK_FALSE(generate_regular(24, 3, 7) == generate_regular(24, 3, 8));
}
