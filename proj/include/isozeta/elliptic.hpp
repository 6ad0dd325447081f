#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isozeta/galois_field.hpp"

namespace isozeta {

struct Point {
    FieldElement x, y;
    bool infinity = true;

    static Point at_infinity() { return Point{}; }
    static Point affine(const FieldElement& x, const FieldElement& y) { return Point{x, y, false}; }
    bool operator==(const Point& o) const;
    std::string to_string() const;
};

// y^2 = x^3 + a x + b over some F_{p^k}.
struct Curve {
    FieldElement a, b;

    Curve() = default;
    Curve(FieldElement a_, FieldElement b_);

    const FieldCtx& field() const { return a.ctx(); }
    FieldElement discriminant_part() const;  // 4a^3 + 27b^2
    FieldElement j_invariant() const;
    bool contains(const Point& P) const;
    FieldElement rhs(const FieldElement& x) const;  // x^3 + a x + b

    Point negate(const Point& P) const;
    Point add(const Point& P, const Point& Q) const;
    Point dbl(const Point& P) const { return add(P, P); }
    Point mul(u128 n, const Point& P) const;
    Point mul_signed(long long n, const Point& P) const;

    bool operator==(const Curve& o) const { return a == o.a && b == o.b; }
    std::string to_string() const;  // "E(p,k): a=[..], b=[..]"
};

// The curve y^2 = x^3 + a x + b with the given j-invariant:
// j = 0 -> (0, 1), j = 1728 -> (1, 0), else (3j(1728-j), 2j(1728-j)^2).
Curve curve_with_j(const FieldElement& j);

// Indexed quadratic-character table for a small field (order <= 10^7).
class SquareTable {
public:
    explicit SquareTable(const FieldCtx& F);
    // 1 for a nonzero square, -1 for a non-square, 0 for zero.
    int chi(const FieldElement& a) const;

private:
    std::vector<signed char> chi_;
};

// Exact projective point count by sweeping x over the whole field.
u128 count_points(const Curve& E, const SquareTable& squares);

// Trace t = q + 1 - #E over the curve's own field.
long long frobenius_trace(const Curve& E, const SquareTable& squares);

// For a curve over F_{p^2}: true iff the Frobenius trace is divisible by p.
bool is_supersingular(const Curve& E, const SquareTable& squares);

struct SupersingularModel {
    FieldElement j;
    Curve curve;  // over F_{p^2}, with #E(F_{p^2}) = (p+1)^2
};

// One model per supersingular j-invariant in F_{p^2}, ordered by j in the
// canonical element order, each the twist on which Frobenius acts as -p.
std::vector<SupersingularModel> supersingular_models(const FieldCtx& Fp2);

// Roots of unity of order dividing gcd(12, q-1), canonically sorted.
std::vector<FieldElement> roots_of_unity_12(const FieldCtx& F);

// Scale factors u of automorphisms (x,y) -> (u^2 x, u^3 y).
std::vector<FieldElement> automorphisms(const Curve& E);
// All u with (x,y) -> (u^2 x, u^3 y) mapping `from` onto `to`, i.e.
// u^4 a_from = a_to and u^6 b_from = b_to; empty when none is defined over
// the common field.
std::vector<FieldElement> isomorphisms(const Curve& from, const Curve& to);

Point apply_scale(const FieldElement& u, const Point& P);
Curve scaled_curve(const FieldElement& u, const Curve& E);

// Separable isogeny with cyclic kernel of prime order, in Velu's
// normalization, followed by an isomorphism (x,y) -> (s^2 x, s^3 y).
class Isogeny {
public:
    const Curve& domain() const { return domain_; }
    const Curve& codomain() const { return codomain_; }
    const Curve& velu_codomain() const { return velu_codomain_; }
    const Point& generator() const { return generator_; }
    const FieldElement& post_scale() const { return scale_; }
    int degree() const { return degree_; }

    Point operator()(const Point& P) const;
    bool in_kernel(const Point& P) const;
    // prod over kernel x-coordinates (one per +-pair) of (x - x_Q),
    // constant term first; monic of degree (l-1)/2, or 1 for l = 2.
    std::vector<FieldElement> kernel_polynomial() const;

    Isogeny then_scale(const FieldElement& u) const;

    friend Isogeny velu_isogeny(const Curve& E, const Point& K, int ell);

private:
    struct Term {
        FieldElement xq, v, u;
    };
    Curve domain_, velu_codomain_, codomain_;
    Point generator_;
    int degree_ = 0;
    std::vector<Term> terms_;
    FieldElement scale_;
};

Isogeny velu_isogeny(const Curve& E, const Point& K, int ell);

// Dual of phi: the Velu isogeny with kernel phi(E[l]) (generated by
// phi(R) for R in E[l] outside ker phi), post-composed with the
// isomorphism to phi's domain that makes dual o phi = [l] on the samples.
Isogeny dual_isogeny(const Isogeny& phi, const Point& R_outside_kernel, const std::vector<Point>& samples);

// Deterministic stream of points on E: x drawn from a fixed-seed
// generator, y the canonical square root.
class PointStream {
public:
    PointStream(const Curve& E, u64 seed);
    Point next();

private:
    const Curve* E_;
    u64 state_;
};

// Basis (P, Q) of E[M] inside E(F) where E(F) is isomorphic to (Z/n)^2.
std::pair<Point, Point> torsion_basis(const Curve& E, int M, u128 group_exponent);

// Coordinates of points in the subgroup generated by a basis of E[M].
class TorsionCoordinates {
public:
    TorsionCoordinates(const Curve& E, const Point& P, const Point& Q, int M);
    std::pair<int, int> operator()(const Point& R) const;
    const Point& P() const { return P_; }
    const Point& Q() const { return Q_; }
    int modulus() const { return M_; }
    Point combine(int a, int b) const;

private:
    Point P_, Q_;
    int M_;
    std::vector<std::pair<Point, std::pair<int, int>>> table_;
};

}  // namespace isozeta
