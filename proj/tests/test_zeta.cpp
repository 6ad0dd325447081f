#include <random>
#include <sstream>

#include "doctest.h"
#include "isozeta/zeta.hpp"
#include "support/oracles.hpp"

using namespace isozeta;

namespace {

AbstractIsogenyGraph g13_2() { return AbstractIsogenyGraph{1, {{0, 0}, {0, 0}, {0, 0}}, {0, 2, 1}, {0}}; }

AbstractIsogenyGraph g11_3() {
    return AbstractIsogenyGraph{2,
                                {{0, 0}, {0, 1}, {0, 1}, {0, 1}, {1, 0}, {1, 0}, {1, 1}, {1, 1}},
                                {0, 4, 4, 4, 1, 1, 6, 6},
                                {0, 1}};
}

oracle::Poly to_oracle(const IntPoly& p) { return p.coeffs(); }

// I + s M_f, column b carrying s in row f(b).
std::vector<std::vector<oracle::Poly>> one_plus_sM(const std::vector<Index>& f) {
    const std::size_t n = f.size();
    std::vector<std::vector<oracle::Poly>> m(n, std::vector<oracle::Poly>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = {BigInt(1)};
    for (std::size_t b = 0; b < n; ++b) {
        auto& cell = m[static_cast<std::size_t>(f[b])][b];
        cell.resize(2, BigInt(0));
        cell[1] += 1;
        oracle::trim(cell);
    }
    return m;
}

IntPoly product_of(const FactoredRationalFunction& f) {
    CHECK(f.denominator().is_one());
    return f.numerator();
}

}  // namespace

TEST_CASE("associated permutation of a self-map") {
    // 0 -> 1 -> 2 -> 0 cycle, 3 -> 0 tail, 4 fixed, 5 -> 4 tail
    auto cc = associated_permutation({1, 2, 0, 0, 4, 4});
    CHECK(cc.count(3) == 1);
    CHECK(cc.count(1) == 1);
    CHECK(cc.domain == std::vector<Index>{0, 1, 2, 4});
    CHECK_THROWS(associated_permutation({}));
}

TEST_CASE("cycle blocks: det(I + sP) for a k-cycle is 1 - (-s)^k") {
    CHECK(cycle_block_det(1, 1) == IntPoly{1, 1});
    CHECK(cycle_block_det(1, 2) == IntPoly{1, 0, -1});
    CHECK(cycle_block_det(1, 3) == IntPoly{1, 0, 0, 1});
    CHECK(cycle_block_det(1, 4) == IntPoly{1, 0, 0, 0, -1});
    CHECK(cycle_block_det(-1, 2) == IntPoly{1, 0, -1});
    CHECK(cycle_block_det(-1, 3) == IntPoly{1, 0, 0, -1});
}

TEST_CASE("det(I + sF) against the Leibniz expansion") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + static_cast<int>(rng() % 6);
        std::vector<Index> f(static_cast<std::size_t>(n));
        for (auto& v : f) v = static_cast<Index>(rng() % static_cast<unsigned>(n));
        IntPoly fast = product_of(det_one_plus_sF(f));
        CHECK(to_oracle(fast) == oracle::leibniz_det(one_plus_sM(f)));
    }
}

TEST_CASE("map matrix convention") {
    auto m = map_matrix({1, 1, 0});
    CHECK(m[1][0] == 1);
    CHECK(m[1][1] == 1);
    CHECK(m[0][2] == 1);
    CHECK(m[0][0] == 0);
}

TEST_CASE("G(13,2): series 2, 6, 8") {
    auto z = ihara_zeta(g13_2());
    auto s = series_counts(z, 3);
    CHECK(s == std::vector<BigInt>{2, 6, 8});
    CHECK(edge_zeta_series(g13_2(), 3) == s);
    CHECK(z.equals(zeta_involution_form(g13_2())));
}

TEST_CASE("G(11,3): determinant and zeta") {
    auto g = g11_3();
    auto m = ihara_matrix(g);
    IntPoly det = poly_det(m);
    IntPoly expected = IntPoly{1, -1} * IntPoly{1, -3} * IntPoly{1, 1, 3};
    CHECK(det == expected);
    // (1-u) / ((1-u^2)(1-3u)(1+u+3u^2))
    FactoredRationalFunction closed_form({{IntPoly{1, -1}, 1}, {IntPoly{1, 0, -1}, -1}, {IntPoly{1, -3}, -1}, {IntPoly{1, 1, 3}, -1}});
    CHECK(ihara_zeta(g).equals(closed_form));
    CHECK(zeta_involution_form(g).equals(closed_form));
    CHECK(degree_matrix(g) == std::vector<std::vector<long long>>{{4, 0}, {0, 4}});
    CHECK(q_matrix(g) == std::vector<std::vector<long long>>{{3, 0}, {0, 3}});
}

TEST_CASE("three routes to N_r agree on random abstract graphs") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        auto g = oracle::random_abstract(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3), rng);
        REQUIRE(validate(g).ok());
        auto det_series = series_counts(ihara_zeta(g), 5);
        CHECK(det_series == edge_zeta_series(g, 5));
    }
}

TEST_CASE("classical Ihara zeta on an orientable graph") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        auto og = oracle::random_regular_orientable(4, 3, rng);
        auto g = og.as_abstract();
        const long long chi = static_cast<long long>(g.num_vertices) - g.num_edges() / 2;
        auto classical = FactoredRationalFunction::power(IntPoly{1, 0, -1}, static_cast<int>(chi)) /
                         FactoredRationalFunction::power(IntPoly(oracle::classical_ihara_det(adjacency_matrix(g), 2)), 1);
        CHECK(ihara_zeta(g).equals(classical));
    }
}

TEST_CASE("a non-commuting degree matrix is refused") {
    // The axioms hold but L sends vertex 1 (out-degree 2) to vertex 0 (out-degree 1).
    AbstractIsogenyGraph h{2, {{1, 0}, {0, 0}, {1, 0}}, {1, 1, 1}, {0, 0}};
    REQUIRE(validate(h).ok());
    CHECK_THROWS_AS(ihara_zeta(h), UnsupportedGraph);
}

TEST_CASE("empty graph has zeta 1") {
    AbstractIsogenyGraph g;
    CHECK(ihara_zeta(g).is_one());
    CHECK(series_counts(ihara_zeta(g), 3) == std::vector<BigInt>{0, 0, 0});
}

TEST_CASE("factored rational functions") {
    FactoredRationalFunction a({{IntPoly{1, -1}, 2}, {IntPoly{1, 1}, -1}, {IntPoly{1, -1}, -1}, {IntPoly{1}, 3}});
    CHECK(a.factors().size() == 2);
    CHECK((a * a.inverse()).is_one());
    FactoredRationalFunction b({{IntPoly{1, 0, -1}, 1}, {IntPoly{1, 1}, -2}});
    CHECK(a.equals(b));
    std::stringstream s;
    b.write(s);
    auto back = FactoredRationalFunction::read(s);
    CHECK(back.to_string() == b.to_string());
    std::istringstream junk("coeffs 1 x exp 1\n");
    CHECK_THROWS(FactoredRationalFunction::read(junk));
}

TEST_CASE("lowest terms") {
    CHECK(poly_gcd(IntPoly{-1, 0, 1}, IntPoly{2, -2}) == IntPoly{-1, 1});
    CHECK(poly_gcd(IntPoly{1, 1}, IntPoly{1, -3}) == IntPoly{1});
    CHECK(poly_gcd(IntPoly{6, 4}, IntPoly{}) == IntPoly{3, 2});
    CHECK(IntPoly{4, -6}.content() == 2);
    CHECK(IntPoly{4, -6}.primitive_part() == IntPoly{-2, 3});
    // (1-u)/((1-u^2)(1-3u)) = 1/((1+u)(1-3u))
    FactoredRationalFunction z({{IntPoly{1, -1}, 1}, {IntPoly{1, 0, -1}, -1}, {IntPoly{1, -3}, -1}});
    auto [num, den] = z.lowest_terms();
    CHECK(num == IntPoly{1});
    CHECK(den == IntPoly{1, -2, -3});
    FactoredRationalFunction w({{IntPoly{1, -2, -3}, -1}});
    CHECK(z.reduced_string() == w.reduced_string());
    CHECK(z.reduced_string() != FactoredRationalFunction().reduced_string());
    // G(11,3) reduces to 1/((1+u)(1-3u)(1+u+3u^2))
    auto [n11, d11] = ihara_zeta(g11_3()).lowest_terms();
    CHECK(n11 == IntPoly{1});
    CHECK(d11 == IntPoly{1, 1} * IntPoly{1, -3} * IntPoly{1, 1, 3});
}

TEST_CASE("series of a known rational function") {
    // u d/du log 1/(1-2u) = sum 2^r u^r
    auto z = FactoredRationalFunction::power(IntPoly{1, -2}, -1);
    CHECK(series_counts(z, 4) == std::vector<BigInt>{2, 4, 8, 16});
    auto bad = FactoredRationalFunction::power(IntPoly{2, 1}, 1);
    CHECK_THROWS(series_counts(bad, 2));
}
