#include "isozeta/zeta.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace isozeta {

FactoredRationalFunction::FactoredRationalFunction(std::vector<Factor> factors) : factors_(std::move(factors)) {
    canonicalize();
}

FactoredRationalFunction FactoredRationalFunction::power(const IntPoly& p, int exponent) {
    return FactoredRationalFunction({Factor{p, exponent}});
}

void FactoredRationalFunction::canonicalize() {
    for (const auto& f : factors_)
        if (f.poly.is_zero()) throw std::invalid_argument("zero polynomial in a factored rational function");
    std::stable_sort(factors_.begin(), factors_.end(),
                     [](const Factor& a, const Factor& b) { return a.poly.canonical_less(b.poly); });
    std::vector<Factor> merged;
    for (auto& f : factors_) {
        if (!merged.empty() && merged.back().poly == f.poly)
            merged.back().exponent += f.exponent;
        else
            merged.push_back(std::move(f));
    }
    std::erase_if(merged, [](const Factor& f) { return f.exponent == 0 || f.poly.is_one(); });
    factors_ = std::move(merged);
}

FactoredRationalFunction FactoredRationalFunction::operator*(const FactoredRationalFunction& o) const {
    std::vector<Factor> all = factors_;
    all.insert(all.end(), o.factors_.begin(), o.factors_.end());
    return FactoredRationalFunction(std::move(all));
}

FactoredRationalFunction FactoredRationalFunction::inverse() const { return pow(-1); }

FactoredRationalFunction FactoredRationalFunction::pow(int e) const {
    std::vector<Factor> all = factors_;
    for (auto& f : all) f.exponent *= e;
    return FactoredRationalFunction(std::move(all));
}

FactoredRationalFunction FactoredRationalFunction::operator/(const FactoredRationalFunction& o) const {
    return *this * o.inverse();
}

IntPoly FactoredRationalFunction::numerator() const {
    IntPoly r = IntPoly::constant(1);
    for (const auto& f : factors_)
        if (f.exponent > 0) r = r * f.poly.pow(static_cast<unsigned>(f.exponent));
    return r;
}

IntPoly FactoredRationalFunction::denominator() const {
    IntPoly r = IntPoly::constant(1);
    for (const auto& f : factors_)
        if (f.exponent < 0) r = r * f.poly.pow(static_cast<unsigned>(-f.exponent));
    return r;
}

bool FactoredRationalFunction::equals(const FactoredRationalFunction& o) const {
    return numerator() * o.denominator() == o.numerator() * denominator();
}

std::pair<IntPoly, IntPoly> FactoredRationalFunction::lowest_terms() const {
    IntPoly num = numerator(), den = denominator();
    const IntPoly g = poly_gcd(num, den);
    num = *num.divide_exact(g);
    den = *den.divide_exact(g);
    BigInt scale = boost::multiprecision::gcd(num.content(), den.content());
    const BigInt& sign_ref = den.coeff(0) != 0 ? den.coeffs().front() : den.coeffs().back();
    if (sign_ref < 0) scale = -scale;
    return {*num.divide_exact(IntPoly::constant(scale)), *den.divide_exact(IntPoly::constant(scale))};
}

std::string FactoredRationalFunction::reduced_string() const {
    auto [num, den] = lowest_terms();
    return "(" + num.to_string() + ") / (" + den.to_string() + ")";
}

std::string FactoredRationalFunction::to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& f : factors_) {
        if (!first) out << " * ";
        first = false;
        out << '(' << f.poly.to_string() << ')';
        if (f.exponent != 1) out << '^' << f.exponent;
    }
    return out.str();
}

void FactoredRationalFunction::write(std::ostream& out) const {
    for (const auto& f : factors_) {
        out << "coeffs";
        for (const auto& c : f.poly.coeffs()) out << ' ' << c;
        out << " exp " << f.exponent << '\n';
    }
}

FactoredRationalFunction FactoredRationalFunction::read(std::istream& in) {
    std::vector<Factor> factors;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto bad = [&](const std::string& why) {
            return std::invalid_argument("factor line " + std::to_string(line_no) + ": " + why);
        };
        if (tok.size() < 4 || tok[0] != "coeffs" || tok[tok.size() - 2] != "exp") throw bad("expected 'coeffs c0 .. ck exp e'");
        std::vector<BigInt> coeffs;
        try {
            for (std::size_t i = 1; i + 2 < tok.size(); ++i) coeffs.emplace_back(tok[i]);
            factors.push_back(Factor{IntPoly(std::move(coeffs)), std::stoi(tok.back())});
        } catch (const std::exception&) {
            throw bad("malformed integer");
        }
    }
    return FactoredRationalFunction(std::move(factors));
}

IntPoly cycle_block_det(long long scale, int k) {
    // det(I + s P) for a k-cycle P with s = scale * x is 1 - (-s)^k; the
    // Leibniz sign of the cycle is (-1)^{k-1}.
    BigInt lead = 1;
    for (int i = 0; i < k; ++i) lead *= -scale;
    return IntPoly{1} - IntPoly::monomial(lead, k);
}

CycleCounts associated_permutation(const std::vector<Index>& f) {
    const std::size_t n = f.size();
    if (n == 0) throw std::invalid_argument("associated_permutation: empty domain");
    for (Index v : f)
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::invalid_argument("associated_permutation: value out of range");
    std::vector<char> alive(n, 1);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<char> hit(n, 0);
        for (std::size_t b = 0; b < n; ++b)
            if (alive[b]) hit[static_cast<std::size_t>(f[b])] = 1;
        for (std::size_t b = 0; b < n; ++b)
            if (alive[b] && !hit[b]) {
                alive[b] = 0;
                changed = true;
            }
    }
    CycleCounts out;
    std::vector<char> seen(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
        if (!alive[b]) continue;
        out.domain.push_back(static_cast<Index>(b));
        if (seen[b]) continue;
        int len = 0;
        for (std::size_t c = b; !seen[c]; c = static_cast<std::size_t>(f[c])) {
            if (!alive[c]) throw std::logic_error("associated permutation left its domain");
            seen[c] = 1;
            ++len;
        }
        ++out.counts[len];
    }
    return out;
}

FactoredRationalFunction det_one_plus_sF(const std::vector<Index>& f) {
    CycleCounts cc = associated_permutation(f);
    std::vector<Factor> factors;
    for (const auto& [k, c] : cc.counts) factors.push_back(Factor{cycle_block_det(1, k), static_cast<int>(c)});
    return FactoredRationalFunction(std::move(factors));
}

IntMatrix map_matrix(const std::vector<Index>& f) {
    const std::size_t n = f.size();
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t b = 0; b < n; ++b) m[static_cast<std::size_t>(f[b])][b] = 1;
    return m;
}

std::vector<std::vector<long long>> degree_matrix(const AbstractIsogenyGraph& g) {
    auto d = out_degrees(g);
    std::vector<std::vector<long long>> m(d.size(), std::vector<long long>(d.size(), 0));
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return m;
}

std::vector<std::vector<long long>> q_matrix(const AbstractIsogenyGraph& g) {
    auto m = degree_matrix(g);
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= 1;
    return m;
}

namespace {

void require_commuting(const AbstractIsogenyGraph& g) {
    auto d = out_degrees(g);
    for (Index x = 0; x < g.num_vertices; ++x) {
        if (d[static_cast<std::size_t>(g.l_map[static_cast<std::size_t>(x)])] != d[static_cast<std::size_t>(x)])
            throw UnsupportedGraph("the determinant formula needs the degree operator D to commute with L; it fails at vertex " +
                                   std::to_string(x));
    }
}

}  // namespace

PolyMatrix ihara_matrix(const AbstractIsogenyGraph& g) {
    const std::size_t n = static_cast<std::size_t>(g.num_vertices);
    auto a = adjacency_matrix(g);
    auto d = out_degrees(g);
    PolyMatrix m(n, std::vector<IntPoly>(n));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<BigInt> c(3, 0);
            if (x == y) c[0] = 1;
            c[1] = -a[x][y];
            m[x][y] = IntPoly(std::move(c));
        }
        std::size_t lx = static_cast<std::size_t>(g.l_map[x]);
        m[x][lx] = m[x][lx] + IntPoly::monomial(d[lx] - 1, 2);
    }
    return m;
}

FactoredRationalFunction zeta_cycle_factor(const AbstractIsogenyGraph& g) {
    std::vector<Factor> factors;
    if (g.num_vertices > 0) {
        CycleCounts cl = associated_permutation(g.l_map);
        // det(I - u^2 L): each k-cycle contributes 1 - u^{2k}
        for (const auto& [k, c] : cl.counts)
            factors.push_back(Factor{cycle_block_det(-1, k).scaled_power(1, 2), static_cast<int>(c)});
    }
    if (g.num_edges() > 0) {
        // det(I + u J)^{-1}: each k-cycle contributes 1 - (-u)^k
        CycleCounts cj = associated_permutation(g.j_map);
        for (const auto& [k, c] : cj.counts) factors.push_back(Factor{cycle_block_det(1, k), -static_cast<int>(c)});
    }
    return FactoredRationalFunction(std::move(factors));
}

FactoredRationalFunction ihara_zeta(const AbstractIsogenyGraph& g) {
    require_valid(g);
    require_commuting(g);
    IntPoly det = poly_det(ihara_matrix(g));
    return zeta_cycle_factor(g) / FactoredRationalFunction::power(det, 1);
}

FactoredRationalFunction zeta_involution_form(const AbstractIsogenyGraph& g) {
    require_valid(g);
    if (g.num_edges() > 0) {
        CycleCounts cj = associated_permutation(g.j_map);
        for (const auto& [k, c] : cj.counts)
            if (k > 2) throw UnsupportedGraph("the permutation induced by J is not an involution");
    }
    for (Index y = 0; y < g.num_edges(); ++y) {
        Index jj = g.j_map[static_cast<std::size_t>(g.j_map[static_cast<std::size_t>(y)])];
        if (g.edges[static_cast<std::size_t>(jj)].source != g.edges[static_cast<std::size_t>(y)].source)
            throw UnsupportedGraph("s(J^2 y) differs from s(y) at edge " + std::to_string(y));
    }
    OrientablePair pair = orientable_graphs(g);
    const std::size_t n = static_cast<std::size_t>(g.num_vertices);
    auto a = adjacency_matrix(g);
    auto d = out_degrees(g);
    PolyMatrix m(n, std::vector<IntPoly>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<BigInt> c(3, 0);
            if (x == y) {
                c[0] = 1;
                c[2] = d[x] - 1;
            }
            c[1] = -a[x][y];
            m[x][y] = IntPoly(std::move(c));
        }
    std::vector<Factor> factors{
        Factor{IntPoly{1, -1}, static_cast<int>(euler_characteristic(pair.plus))},
        Factor{IntPoly{1, 1}, static_cast<int>(euler_characteristic(pair.minus))},
        Factor{poly_det(m), -1},
    };
    return FactoredRationalFunction(std::move(factors));
}

std::vector<BigInt> series_counts(const FactoredRationalFunction& z, int R) {
    std::vector<Rational> total(static_cast<std::size_t>(R) + 1, Rational(0));
    Rational value_at_zero = 1;
    for (const auto& f : z.factors()) {
        const BigInt c0 = f.poly.coeff(0);
        if (c0 == 0) throw std::invalid_argument("series_counts: factor vanishes at u = 0");
        Rational c0r(c0);
        for (int i = 0; i < std::abs(f.exponent); ++i) {
            if (f.exponent > 0)
                value_at_zero *= c0r;
            else
                value_at_zero /= c0r;
        }
        // h = u f'/f as a power series
        std::vector<Rational> h(static_cast<std::size_t>(R) + 1, Rational(0));
        for (int n = 1; n <= R; ++n) {
            Rational acc = Rational(f.poly.coeff(n) * n);
            for (int i = 1; i < n; ++i) acc -= Rational(f.poly.coeff(i)) * h[static_cast<std::size_t>(n - i)];
            h[static_cast<std::size_t>(n)] = acc / c0r;
        }
        for (int n = 1; n <= R; ++n) total[static_cast<std::size_t>(n)] += h[static_cast<std::size_t>(n)] * f.exponent;
    }
    if (value_at_zero != 1) throw std::invalid_argument("series_counts: the function is not 1 at u = 0");
    std::vector<BigInt> out;
    for (int n = 1; n <= R; ++n) {
        const Rational& v = total[static_cast<std::size_t>(n)];
        if (denominator(v) != 1) throw std::logic_error("non-integral cycle count at degree " + std::to_string(n));
        out.push_back(numerator(v));
    }
    return out;
}

std::vector<std::vector<Index>> edge_operator(const AbstractIsogenyGraph& g) {
    std::vector<std::vector<Index>> out_of(static_cast<std::size_t>(g.num_vertices));
    for (Index y = 0; y < g.num_edges(); ++y) out_of[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(y)].source)].push_back(y);
    std::vector<std::vector<Index>> succ(static_cast<std::size_t>(g.num_edges()));
    for (Index y = 0; y < g.num_edges(); ++y) {
        Index back = g.j_map[static_cast<std::size_t>(y)];
        for (Index z : out_of[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(y)].target)])
            if (z != back) succ[static_cast<std::size_t>(y)].push_back(z);
    }
    return succ;
}

std::vector<BigInt> edge_zeta_series(const AbstractIsogenyGraph& g, int R) {
    auto succ = edge_operator(g);
    const std::size_t m = succ.size();
    std::vector<BigInt> traces(static_cast<std::size_t>(R), 0);
    std::vector<BigInt> cur(m), next(m);
    for (std::size_t start = 0; start < m; ++start) {
        std::fill(cur.begin(), cur.end(), BigInt(0));
        cur[start] = 1;
        for (int r = 1; r <= R; ++r) {
            std::fill(next.begin(), next.end(), BigInt(0));
            for (std::size_t y = 0; y < m; ++y) {
                if (cur[y] == 0) continue;
                for (Index z : succ[y]) next[static_cast<std::size_t>(z)] += cur[y];
            }
            std::swap(cur, next);
            traces[static_cast<std::size_t>(r - 1)] += cur[start];
        }
    }
    return traces;
}

}  // namespace isozeta
