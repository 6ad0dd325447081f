#include "isozeta/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace isozeta {

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const BigInt& c, int degree) {
    std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

BigInt IntPoly::evaluate(const BigInt& x) const {
    BigInt r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    std::vector<BigInt> r = c_;
    for (auto& v : r) v = -v;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const BigInt& s) const {
    std::vector<BigInt> r = c_;
    for (auto& v : r) v *= s;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::pow(unsigned e) const {
    IntPoly r = constant(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

IntPoly IntPoly::scaled_power(long long s, int k) const {
    if (is_zero()) return {};
    std::vector<BigInt> r(static_cast<std::size_t>(degree() * k) + 1, 0);
    BigInt sp = 1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        r[i * static_cast<std::size_t>(k)] = c_[i] * sp;
        sp *= s;
    }
    return IntPoly(std::move(r));
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& o) const {
    if (o.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (is_zero()) return IntPoly{};
    if (degree() < o.degree()) return std::nullopt;
    std::vector<BigInt> rem = c_;
    std::vector<BigInt> q(static_cast<std::size_t>(degree() - o.degree()) + 1, 0);
    const BigInt& lead = o.c_.back();
    for (int i = degree(); i >= o.degree(); --i) {
        const BigInt& top = rem[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        if (top % lead != 0) return std::nullopt;
        BigInt f = top / lead;
        q[static_cast<std::size_t>(i - o.degree())] = f;
        for (int j = 0; j <= o.degree(); ++j) rem[static_cast<std::size_t>(i - o.degree() + j)] -= f * o.c_[static_cast<std::size_t>(j)];
    }
    if (std::any_of(rem.begin(), rem.end(), [](const BigInt& v) { return v != 0; })) return std::nullopt;
    return IntPoly(std::move(q));
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const auto& c : c_) g = boost::multiprecision::gcd(g, c);
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return {};
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> out;
    for (const auto& c : c_) out.push_back(c / g);
    return IntPoly(std::move(out));
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    IntPoly x = a.primitive_part(), y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        // primitive pseudo-remainder of x by y
        IntPoly r = x;
        const BigInt lead = y.coeffs().back();
        while (!r.is_zero() && r.degree() >= y.degree()) {
            r = (r * lead - y * IntPoly::monomial(r.coeffs().back(), r.degree() - y.degree())).primitive_part();
        }
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

bool IntPoly::canonical_less(const IntPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const BigInt& c = c_[i];
        if (c == 0) continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) out << mag;
        if (i >= 1) out << var;
        if (i >= 2) out << '^' << i;
    }
    return out.str();
}

BigInt bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

IntPoly interpolate_integer(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
    const std::size_t n = xs.size();
    // Newton divided differences
    std::vector<Rational> coef(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) coef[i] = (coef[i] - coef[i - 1]) / Rational(xs[i] - xs[i - level]);
    // expand to monomial basis
    std::vector<Rational> poly(n, Rational(0));
    for (std::size_t i = n; i-- > 0;) {
        // poly = poly * (u - xs[i]) + coef[i]
        std::vector<Rational> next(n, Rational(0));
        for (std::size_t d = 0; d < n; ++d) {
            if (poly[d] == 0) continue;
            if (d + 1 < n) next[d + 1] += poly[d];
            next[d] -= poly[d] * Rational(xs[i]);
        }
        next[0] += coef[i];
        poly = std::move(next);
    }
    std::vector<BigInt> out;
    for (const auto& r : poly) {
        if (denominator(r) != 1) throw std::logic_error("interpolated determinant has a non-integer coefficient");
        out.push_back(numerator(r));
    }
    return IntPoly(std::move(out));
}

IntPoly poly_det(const PolyMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return IntPoly::constant(1);
    int max_deg = 0;
    for (const auto& row : m) {
        if (row.size() != n) throw std::invalid_argument("poly_det: matrix is not square");
        for (const auto& e : row) max_deg = std::max(max_deg, e.degree());
    }
    const std::size_t points = static_cast<std::size_t>(max_deg) * n + 1;
    std::vector<BigInt> xs, ys;
    for (std::size_t i = 0; xs.size() < points; ++i) {
        long long v = static_cast<long long>((i + 1) / 2);
        xs.emplace_back(i % 2 == 1 ? v : -v);
    }
    for (const auto& x : xs) {
        IntMatrix values(n, std::vector<BigInt>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) values[i][j] = m[i][j].evaluate(x);
        ys.push_back(bareiss_determinant(std::move(values)));
    }
    return interpolate_integer(xs, ys);
}

}  // namespace isozeta
