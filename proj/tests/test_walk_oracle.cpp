#include <random>

#include "doctest.h"
#include "isozeta/walk_oracle.hpp"
#include "isozeta/zeta.hpp"
#include "support/oracles.hpp"

using namespace isozeta;

namespace {
AbstractIsogenyGraph g13_2() { return AbstractIsogenyGraph{1, {{0, 0}, {0, 0}, {0, 0}}, {0, 2, 1}, {0}}; }
}  // namespace

TEST_CASE("closed walk counts on G(13,2)") {
    CHECK(count_closed_nb_tailless(g13_2(), 1) == 2);
    CHECK(count_closed_nb_tailless(g13_2(), 2) == 6);
    CHECK(count_closed_nb_tailless(g13_2(), 3) == 8);
}

TEST_CASE("prime cycles reproduce N_r") {
    auto t = enumerate_primes(g13_2(), 4);
    CHECK(t.count(1) == 2);
    CHECK(t.count(2) == 2);
    for (int r = 1; r <= 4; ++r) CHECK(nr_from_primes(t.c, r) == count_closed_nb_tailless(g13_2(), r));
    for (const auto& [len, classes] : t.primes)
        for (const auto& pc : classes) CHECK(pc.length() == len);
}

TEST_CASE("walk enumeration matches the edge operator on random graphs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_abstract(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3), rng);
        auto traces = edge_zeta_series(g, 5);
        auto primes = enumerate_primes(g, 5);
        for (int r = 1; r <= 5; ++r) {
            CHECK(count_closed_nb_tailless(g, r) == traces[static_cast<std::size_t>(r - 1)]);
            CHECK(nr_from_primes(primes.c, r) == traces[static_cast<std::size_t>(r - 1)]);
        }
    }
}

TEST_CASE("budget guard") {
    CHECK(estimated_walk_nodes(g13_2(), 3) == 3 + 9 + 27);
    CHECK_THROWS_AS(count_closed_nb_tailless(g13_2(), 40), ResourceGuard);
    CHECK_THROWS_AS(enumerate_primes(g13_2(), 30, 1000), ResourceGuard);
    CHECK_THROWS(count_closed_nb_tailless(g13_2(), 0));
}
