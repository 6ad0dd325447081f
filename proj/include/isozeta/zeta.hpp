#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "isozeta/core_graph.hpp"
#include "isozeta/polynomial.hpp"

namespace isozeta {

struct Factor {
    IntPoly poly;
    int exponent = 0;
};

// Formal product of integer polynomials with integer exponents, kept in a
// canonical order (degree, then coefficients) with equal bases merged and
// trivial factors dropped.
class FactoredRationalFunction {
public:
    FactoredRationalFunction() = default;
    explicit FactoredRationalFunction(std::vector<Factor> factors);
    static FactoredRationalFunction power(const IntPoly& p, int exponent);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    FactoredRationalFunction operator*(const FactoredRationalFunction& o) const;
    FactoredRationalFunction operator/(const FactoredRationalFunction& o) const;
    FactoredRationalFunction inverse() const;
    FactoredRationalFunction pow(int e) const;

    // Products of the positive-exponent and negative-exponent parts.
    IntPoly numerator() const;
    IntPoly denominator() const;

    // Numerator and denominator with no common factor, primitive as a
    // pair, denominator with positive constant term when nonzero.
    std::pair<IntPoly, IntPoly> lowest_terms() const;
    // "num / den" of lowest_terms(): equal strings iff equal functions.
    std::string reduced_string() const;

    // Cross-multiplied comparison, independent of how the factors are split.
    bool equals(const FactoredRationalFunction& o) const;

    std::string to_string() const;

    void write(std::ostream& out) const;
    static FactoredRationalFunction read(std::istream& in);

private:
    void canonicalize();
    std::vector<Factor> factors_;
};

class UnsupportedGraph : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Maximal subset Z on which a self-map restricts to a bijection, with the
// cycle-length histogram of that bijection.
struct CycleCounts {
    std::map<int, long long> counts;  // k -> C_k, nonzero only
    std::vector<Index> domain;        // Z, ascending

    long long count(int k) const {
        auto it = counts.find(k);
        return it == counts.end() ? 0 : it->second;
    }
};

CycleCounts associated_permutation(const std::vector<Index>& f);

// det(I + s P) for a single k-cycle P with s = scale * x, as a polynomial
// in x: 1 - (-scale x)^k.
IntPoly cycle_block_det(long long scale, int k);

// det(I + sF) = prod_k (1 - (-s)^k)^{C_k(F)}, as a polynomial in s.
FactoredRationalFunction det_one_plus_sF(const std::vector<Index>& f);

// Operator matrix of a self-map: column b has a single 1 in row f(b).
IntMatrix map_matrix(const std::vector<Index>& f);

std::vector<std::vector<long long>> degree_matrix(const AbstractIsogenyGraph& g);
std::vector<std::vector<long long>> q_matrix(const AbstractIsogenyGraph& g);

// I - A u + u^2 Q L, rows indexed by source vertex.
PolyMatrix ihara_matrix(const AbstractIsogenyGraph& g);

// The product of cycle factors coming from L and J in the determinant
// formula; the zeta function is this divided by det(ihara_matrix).
FactoredRationalFunction zeta_cycle_factor(const AbstractIsogenyGraph& g);

FactoredRationalFunction ihara_zeta(const AbstractIsogenyGraph& g);

// (1-u)^{chi(+)} (1+u)^{chi(-)} / det(I - uA + u^2 Q), valid when the
// induced permutation of J is an involution and s(J^2 y) = s(y).
FactoredRationalFunction zeta_involution_form(const AbstractIsogenyGraph& g);

// Coefficients N_1..N_R of u d/du log z.
std::vector<BigInt> series_counts(const FactoredRationalFunction& z, int R);

// Successor lists of the edge operator W_1: y -> y' with s(y') = t(y),
// y' != Jy.
std::vector<std::vector<Index>> edge_operator(const AbstractIsogenyGraph& g);

// Tr(W_1^r) for r = 1..R.
std::vector<BigInt> edge_zeta_series(const AbstractIsogenyGraph& g, int R);

}  // namespace isozeta
