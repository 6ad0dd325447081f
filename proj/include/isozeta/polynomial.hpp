#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace isozeta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Integer polynomial in one variable, constant term first, no trailing
// zeros; the zero polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long long> coeffs);
    explicit IntPoly(std::vector<BigInt> coeffs);

    static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
    static IntPoly monomial(const BigInt& c, int degree);

    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(int i) const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    BigInt evaluate(const BigInt& x) const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const BigInt& s) const;
    IntPoly pow(unsigned e) const;
    // Substitute u -> s*u^k.
    IntPoly scaled_power(long long s, int k) const;

    // Quotient when o divides *this exactly with integer quotient.
    std::optional<IntPoly> divide_exact(const IntPoly& o) const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    // gcd of the coefficients (zero for the zero polynomial), and the
    // quotient by it with positive leading coefficient.
    BigInt content() const;
    IntPoly primitive_part() const;

    // Degree first, then coefficients lexicographically from the constant term.
    bool canonical_less(const IntPoly& o) const;

    // "1 - 3u + 2u^2"
    std::string to_string(const std::string& var = "u") const;

private:
    void trim();
    std::vector<BigInt> c_;
};

using PolyMatrix = std::vector<std::vector<IntPoly>>;
using IntMatrix = std::vector<std::vector<BigInt>>;

// Primitive gcd with positive leading coefficient (gcd over Q, scaled).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Fraction-free Gaussian elimination.
BigInt bareiss_determinant(IntMatrix m);

// Exact determinant by evaluation at deg+1 integers 0, 1, -1, 2, -2, ...
// and interpolation over the rationals.
IntPoly poly_det(const PolyMatrix& m);

// Interpolating polynomial through (x_i, y_i); throws if a coefficient is
// not an integer.
IntPoly interpolate_integer(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys);

}  // namespace isozeta
