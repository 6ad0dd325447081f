#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace isozeta {

using Rational = boost::multiprecision::cpp_rational;

// Raised when the class-number route is asked for cycle lengths with
// l^r >= p, where cycles carry weights with no closed form.
class UnsupportedRegime : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

int kronecker(long long a, long long n);

std::vector<long long> prime_divisors(long long n);
int valuation(long long n, long long q);

// Binary quadratic form ax^2 + bxy + cy^2 of negative discriminant.
struct QuadForm {
    long long a = 1, b = 0, c = 0;

    long long discriminant() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    bool is_primitive() const;
    bool operator==(const QuadForm&) const = default;
};

QuadForm reduce(QuadForm f);
QuadForm principal_form(long long D);
QuadForm inverse(const QuadForm& f);
// Dirichlet composition of primitive forms, reduced.
QuadForm compose(const QuadForm& f, const QuadForm& g);

bool is_discriminant(long long D);
std::vector<QuadForm> reduced_forms(long long D);  // primitive, reduced
long long class_number(long long D);

struct QuadOrder {
    long long discriminant = 0;
    long long fundamental = 0;
    long long conductor = 1;
};

QuadOrder quad_order(long long D);

// Order of the class of a prime form above l, when l splits in the
// order of discriminant D and does not divide its conductor.
std::optional<int> form_order_of_ell(long long D, long long ell);

// Orders O with p non-split in Frac(O), p and l coprime to the conductor,
// (l) split, and the class of a prime above l of exact order r.
// Sorted by |D| ascending.
std::vector<QuadOrder> cycle_set_I(int r, long long p, long long ell);

// 2 * sum over n | r of sum_{O in I_n} h(O): the cycle count N_r predicted
// from class numbers (requires l^r < p).
long long cycle_count_from_class_numbers(int r, long long p, long long ell);

struct EulerCharReport {
    long long p = 0, ell = 0, level = 1;
    long long psi = 1;
    long long eps2 = 0, eps3 = 0, gamma = 0;
    long long delta4 = 0, delta3 = 0;
    std::optional<long long> nu_ell, nu_4ell;
    long long class_number_ell = 0;  // h(Q(sqrt(-l))), zero when unused
    long long self_dual = 0;         // r, the number of self-dual orbits
    Rational vertex_count;           // #X for the Borel level structure
    long long chi_plus = 0, chi_minus = 0;
};

long long psi_index(long long N);
long long delta4(long long ell);
long long delta3(long long ell);
std::optional<long long> nu_4ell(long long N, long long ell);
std::optional<long long> nu_ell(long long N, long long ell);

EulerCharReport euler_chars_borel(long long p, long long ell, long long N);

long long genus_X0(long long N);

long long point_count_X0(long long ell, int r, long long n_r, long long chi_plus, long long chi_minus);
long long point_count_relation(int r, long long n_r, long long chi_plus, long long chi_minus, long long count_X0_N,
                               long long count_X0_pN);

// General Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with integer coefficients; projective point count over F_{q^r} for a
// prime q of good reduction, via the count over F_q and the Frobenius
// recurrence.
struct IntegralWeierstrass {
    long long a1, a2, a3, a4, a6;
};
long long count_points(const IntegralWeierstrass& E, long long q, int r);

}  // namespace isozeta
