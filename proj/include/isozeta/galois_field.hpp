#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isozeta {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr int kMaxExtensionDegree = 16;

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("inversion of zero field element") {}
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n);

// Dense polynomial over F_p, constant term first, no trailing zeros
// (the zero polynomial is empty).
using PrimePoly = std::vector<u64>;

namespace fp_poly {
void trim(PrimePoly& f);
PrimePoly mul(const PrimePoly& f, const PrimePoly& g, u64 p);
PrimePoly mod(PrimePoly f, const PrimePoly& g, u64 p);
PrimePoly gcd(PrimePoly f, PrimePoly g, u64 p);
PrimePoly powmod_x(u128 e, const PrimePoly& f, u64 p);  // x^e mod f
}  // namespace fp_poly

// Rabin-style test: gcd(f, x^{p^i} - x) = 1 for all i <= deg/2.
bool is_irreducible(const PrimePoly& monic, u64 p);

// First monic irreducible of degree k, scanning the lower coefficients by
// increasing integer index sum c_i p^i.  For k = 1 this is x.
PrimePoly find_irreducible(u64 p, int k);

class FieldElement;

// F_{p^k} = F_p[t]/(modulus).  Immutable once built; elements keep a
// pointer to it, so a context must outlive its elements.
class FieldCtx {
public:
    FieldCtx(u64 p, int k);
    FieldCtx(u64 p, PrimePoly monic_modulus);

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    u64 characteristic() const { return p_; }
    int degree() const { return k_; }
    const PrimePoly& modulus() const { return modulus_; }
    u128 order() const { return q_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long v) const;
    FieldElement generator() const;  // the class of t
    FieldElement from_coeffs(const std::vector<u64>& c) const;
    // Element whose coefficient vector is the base-p expansion of idx.
    FieldElement from_index(u128 idx) const;

    // Smallest (canonical order) quadratic non-residue.
    FieldElement non_residue() const;

private:
    friend class FieldElement;
    void init();

    u64 p_;
    int k_;
    PrimePoly modulus_;
    u128 q_ = 0;
    // reduction_[i] = t^{k+i} mod modulus, for 0 <= i < k-1
    std::vector<std::array<u64, kMaxExtensionDegree>> reduction_;
    std::array<u64, kMaxExtensionDegree> non_residue_{};
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldCtx* ctx, const std::array<u64, kMaxExtensionDegree>& c) : ctx_(ctx), c_(c) {}

    const FieldCtx& ctx() const { return *ctx_; }
    const FieldCtx* ctx_ptr() const { return ctx_; }
    u64 coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::array<u64, kMaxExtensionDegree>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inv() const;
    FieldElement pow(u128 e) const;
    FieldElement frobenius(int e) const;

    // Euler criterion; zero counts as a square.
    bool is_square() const;
    // Root r with r^2 = *this, choosing the canonically smaller of +-r.
    std::optional<FieldElement> sqrt() const;

    // Integer index sum c_i p^i; orders elements by the highest
    // coefficient first, so F_p precedes everything with a t-term.
    u128 index() const;

    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    std::strong_ordering operator<=>(const FieldElement& o) const;

    std::string to_string() const;

private:
    const FieldCtx* ctx_ = nullptr;
    std::array<u64, kMaxExtensionDegree> c_{};
};

FieldElement operator*(long long s, const FieldElement& a);

// Embedding of a quadratic (or prime) subfield into a larger flattened field:
// the modulus of the small field is solved in the large one and the
// canonically least root is taken as the image of its generator.
class SubfieldEmbedding {
public:
    SubfieldEmbedding(const FieldCtx& small, const FieldCtx& large);
    FieldElement operator()(const FieldElement& a) const;
    const FieldCtx& source() const { return *small_; }
    const FieldCtx& target() const { return *large_; }

private:
    const FieldCtx* small_;
    const FieldCtx* large_;
    std::vector<FieldElement> powers_;  // images of t^i
};

// Roots of z^n = a for prime n dividing q-1 (Adleman-Manders-Miller);
// returns one root or nothing.
std::optional<FieldElement> prime_root(const FieldElement& a, u64 n);

std::string to_decimal(u128 v);

}  // namespace isozeta
