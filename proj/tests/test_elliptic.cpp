#include <algorithm>
#include <random>

#include "doctest.h"
#include "isozeta/elliptic.hpp"

using namespace isozeta;

namespace {

std::vector<Point> all_points(const Curve& E) {
    std::vector<Point> pts{Point::at_infinity()};
    const auto& F = E.field();
    for (u128 i = 0; i < F.order(); ++i)
        for (u128 k = 0; k < F.order(); ++k) {
            auto x = F.from_index(i), y = F.from_index(k);
            if (y * y == E.rhs(x)) pts.push_back(Point::affine(x, y));
        }
    return pts;
}

// Number of supersingular j-invariants in characteristic p.
int supersingular_j_count(u64 p) {
    static const int extra[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
    return static_cast<int>(p / 12) + extra[p % 12];
}

}  // namespace

TEST_CASE("group law over a prime field") {
    FieldCtx F(13, 1);
    Curve E(F.from_int(2), F.from_int(3));
    auto pts = all_points(E);
    SquareTable sq(F);
    CHECK(count_points(E, sq) == pts.size());
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const Point& P = pts[rng() % pts.size()];
        const Point& Q = pts[rng() % pts.size()];
        const Point& R = pts[rng() % pts.size()];
        CHECK(E.contains(E.add(P, Q)));
        CHECK(E.add(P, Q) == E.add(Q, P));
        CHECK(E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R)));
        CHECK(E.add(P, E.negate(P)) == Point::at_infinity());
        Point acc = Point::at_infinity();
        for (int n = 0; n < 7; ++n) {
            CHECK(E.mul(static_cast<u128>(n), P) == acc);
            acc = E.add(acc, P);
        }
        CHECK(E.mul_signed(-3, P) == E.negate(E.mul(3, P)));
        CHECK(E.mul(pts.size(), P) == Point::at_infinity());
    }
}

TEST_CASE("singular curves are refused") {
    FieldCtx F(13, 1);
    CHECK_THROWS(Curve(F.zero(), F.zero()));
    CHECK_THROWS(Curve(F.from_int(-3), F.from_int(2)));  // x^3 - 3x + 2 = (x-1)^2 (x+2)
}

TEST_CASE("j-invariant of the standard models") {
    FieldCtx F(37, 2);
    for (long long jv : {0LL, 1728LL, 5LL, 17LL}) CHECK(curve_with_j(F.from_int(jv)).j_invariant() == F.from_int(jv));
}

TEST_CASE("supersingular models: count, group order, automorphisms") {
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 37ULL}) {
        CAPTURE(p);
        FieldCtx F(p, 2);
        SquareTable sq(F);
        auto models = supersingular_models(F);
        CHECK(static_cast<int>(models.size()) == supersingular_j_count(p));
        for (std::size_t i = 0; i < models.size(); ++i) {
            const auto& m = models[i];
            CHECK(m.curve.j_invariant() == m.j);
            CHECK(count_points(m.curve, sq) == static_cast<u128>((p + 1) * (p + 1)));
            CHECK(is_supersingular(m.curve, sq));
            if (i > 0) CHECK(models[i - 1].j < m.j);
            const std::size_t auts = automorphisms(m.curve).size();
            if (m.j.is_zero())
                CHECK(auts == 6);
            else if (m.j == F.from_int(1728))
                CHECK(auts == 4);
            else
                CHECK(auts == 2);
        }
    }
    FieldCtx F(13, 2);
    SquareTable sq(F);
    CHECK_FALSE(is_supersingular(Curve(F.from_int(2), F.from_int(3)), sq));
}

TEST_CASE("isomorphisms between scaled models") {
    FieldCtx F(11, 2);
    auto models = supersingular_models(F);
    for (const auto& m : models) {
        const auto u = F.generator() + F.from_int(3);
        Curve target = scaled_curve(u, m.curve);
        auto isos = isomorphisms(m.curve, target);
        CHECK(isos.size() == automorphisms(m.curve).size());
        CHECK(std::find(isos.begin(), isos.end(), u) != isos.end());
        PointStream s(m.curve, 9);
        for (int i = 0; i < 5; ++i) CHECK(target.contains(apply_scale(u, s.next())));
    }
}

TEST_CASE("torsion bases and coordinates") {
    FieldCtx F(11, 2);
    const Curve E = supersingular_models(F).front().curve;
    for (int M : {2, 3, 4, 6}) {
        CAPTURE(M);
        auto [P, Q] = torsion_basis(E, M, 12);
        TorsionCoordinates coords(E, P, Q, M);
        for (int a = 0; a < M; ++a)
            for (int b = 0; b < M; ++b) {
                Point R = coords.combine(a, b);
                CHECK(E.mul(static_cast<u128>(M), R) == Point::at_infinity());
                CHECK(coords(R) == std::pair<int, int>{a, b});
            }
    }
}

TEST_CASE("Velu isogenies and their duals") {
    FieldCtx F(11, 2);
    for (const auto& model : supersingular_models(F)) {
        const Curve& E = model.curve;
        for (int ell : {2, 3}) {
            CAPTURE(ell);
            auto [P, Q] = torsion_basis(E, ell, 12);
            Isogeny phi = velu_isogeny(E, P, ell);
            CHECK(phi.degree() == ell);
            CHECK(phi(P) == Point::at_infinity());
            CHECK(phi.in_kernel(E.mul(2, P)));
            CHECK_FALSE(phi.in_kernel(Q));
            CHECK(phi.kernel_polynomial().size() == 2);
            CHECK(phi.kernel_polynomial().front() == -P.x);
            PointStream s(E, 77);
            std::vector<Point> samples;
            for (int i = 0; i < 6; ++i) samples.push_back(s.next());
            for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
                CHECK(phi.codomain().contains(phi(samples[i])));
                CHECK(phi(E.add(samples[i], samples[i + 1])) == phi.codomain().add(phi(samples[i]), phi(samples[i + 1])));
            }
            Isogeny dual = dual_isogeny(phi, Q, samples);
            CHECK(dual.codomain() == E);
            for (const auto& R : samples) CHECK(dual(phi(R)) == E.mul(static_cast<u128>(ell), R));
            // the image is supersingular with the same group order
            SquareTable sq(F);
            CHECK(count_points(phi.codomain(), sq) == 144);
        }
    }
}
