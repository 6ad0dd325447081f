#include "isozeta/elliptic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace isozeta {

namespace {

u64 splitmix(u64& s) {
    u64 z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool point_less(const Point& a, const Point& b) {
    if (a.infinity != b.infinity) return a.infinity;
    if (a.infinity) return false;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

std::vector<u64> small_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Some z with z^n = a for prime n, or nothing.
std::optional<FieldElement> root_of_prime_degree(const FieldElement& a, u64 n) {
    if (a.is_zero()) return a;
    const u128 qm1 = a.ctx().order() - 1;
    if (qm1 % n != 0) {
        // n-th powering is a bijection; invert n modulo q-1.
        u128 k = 1;
        while ((k * qm1 + 1) % n != 0) ++k;
        return a.pow((k * qm1 + 1) / n);
    }
    return prime_root(a, n);
}

void sort_unique(std::vector<FieldElement>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool Point::operator==(const Point& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
}

std::string Point::to_string() const {
    if (infinity) return "O";
    return "(" + x.to_string() + ", " + y.to_string() + ")";
}

Curve::Curve(FieldElement a_, FieldElement b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.ctx_ptr() != b.ctx_ptr()) throw std::invalid_argument("curve coefficients live in different fields");
    if (discriminant_part().is_zero()) throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0");
}

FieldElement Curve::discriminant_part() const { return 4 * (a * a * a) + 27 * (b * b); }

FieldElement Curve::j_invariant() const { return 1728 * (4 * (a * a * a)) / discriminant_part(); }

FieldElement Curve::rhs(const FieldElement& x) const { return (x * x + a) * x + b; }

bool Curve::contains(const Point& P) const { return P.infinity || P.y * P.y == rhs(P.x); }

Point Curve::negate(const Point& P) const {
    if (P.infinity) return P;
    return Point::affine(P.x, -P.y);
}

Point Curve::add(const Point& P, const Point& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    FieldElement lambda;
    if (P.x == Q.x) {
        if (P.y == -Q.y) return Point::at_infinity();
        lambda = (3 * (P.x * P.x) + a) / (2 * P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    FieldElement x3 = lambda * lambda - P.x - Q.x;
    FieldElement y3 = lambda * (P.x - x3) - P.y;
    return Point::affine(x3, y3);
}

Point Curve::mul(u128 n, const Point& P) const {
    Point acc = Point::at_infinity();
    Point base = P;
    while (n > 0) {
        if (n & 1) acc = add(acc, base);
        n >>= 1;
        if (n > 0) base = add(base, base);
    }
    return acc;
}

Point Curve::mul_signed(long long n, const Point& P) const {
    if (n < 0) return negate(mul(static_cast<u128>(-(n + 1)) + 1, P));
    return mul(static_cast<u128>(n), P);
}

std::string Curve::to_string() const {
    return "y^2 = x^3 + " + a.to_string() + " x + " + b.to_string() + " over F_" + std::to_string(field().characteristic()) + "^" +
           std::to_string(field().degree());
}

Curve curve_with_j(const FieldElement& j) {
    const FieldCtx& F = j.ctx();
    if (j.is_zero()) return Curve(F.zero(), F.one());
    FieldElement k = F.from_int(1728) - j;
    if (k.is_zero()) return Curve(F.one(), F.zero());
    return Curve(3 * (j * k), 2 * (j * k * k));
}

SquareTable::SquareTable(const FieldCtx& F) {
    if (F.order() > 10000000) throw std::invalid_argument("square table limited to fields of order <= 10^7");
    const auto q = static_cast<std::size_t>(F.order());
    chi_.assign(q, -1);
    chi_[0] = 0;
    for (std::size_t i = 1; i < q; ++i) {
        FieldElement x = F.from_index(i);
        chi_[static_cast<std::size_t>((x * x).index())] = 1;
    }
}

int SquareTable::chi(const FieldElement& a) const { return chi_[static_cast<std::size_t>(a.index())]; }

u128 count_points(const Curve& E, const SquareTable& squares) {
    const FieldCtx& F = E.field();
    u128 total = 1;
    for (u128 i = 0; i < F.order(); ++i) total += static_cast<u128>(1 + squares.chi(E.rhs(F.from_index(i))));
    return total;
}

long long frobenius_trace(const Curve& E, const SquareTable& squares) {
    const u128 q = E.field().order();
    return static_cast<long long>(q + 1) - static_cast<long long>(count_points(E, squares));
}

bool is_supersingular(const Curve& E, const SquareTable& squares) {
    const auto p = static_cast<long long>(E.field().characteristic());
    return frobenius_trace(E, squares) % p == 0;
}

std::vector<SupersingularModel> supersingular_models(const FieldCtx& Fp2) {
    if (Fp2.degree() != 2) throw std::invalid_argument("supersingular models are built over F_{p^2}");
    const auto p = static_cast<long long>(Fp2.characteristic());
    const long long target = -2 * p;
    SquareTable squares(Fp2);
    std::vector<SupersingularModel> out;
    const FieldElement j0 = Fp2.zero();
    const FieldElement j1728 = Fp2.from_int(1728);

    for (u128 i = 0; i < Fp2.order(); ++i) {
        FieldElement j = Fp2.from_index(i);
        if (j == j0 || j == j1728) {
            // Sweep the one free coefficient until the twist has trace -2p.
            bool special_ss = is_supersingular(curve_with_j(j), squares);
            if (!special_ss) continue;
            bool found = false;
            for (u128 c = 1; c < Fp2.order() && !found; ++c) {
                FieldElement v = Fp2.from_index(c);
                Curve E = j == j0 ? Curve(Fp2.zero(), v) : Curve(v, Fp2.zero());
                if (frobenius_trace(E, squares) == target) {
                    out.push_back({j, E});
                    found = true;
                }
            }
            if (!found) throw std::logic_error("no twist with trace -2p for j = " + j.to_string());
            continue;
        }
        Curve E = curve_with_j(j);
        // Cheap filter: on a supersingular curve with Aut = {+-1} every point
        // is killed by p+1 or by p-1 (depending on the twist).
        PointStream stream(E, 0x55aa + static_cast<u64>(i));
        bool candidate = true;
        for (int t = 0; t < 3 && candidate; ++t) {
            Point P = stream.next();
            candidate = E.mul(static_cast<u128>(p + 1), P).infinity || E.mul(static_cast<u128>(p - 1), P).infinity;
        }
        if (!candidate) continue;
        long long tr = frobenius_trace(E, squares);
        if (tr % p != 0) continue;
        if (tr == target) {
            out.push_back({j, E});
        } else if (tr == -target) {
            FieldElement d = Fp2.non_residue();
            out.push_back({j, Curve(d * d * E.a, d * d * d * E.b)});
        } else {
            throw std::logic_error("unexpected supersingular trace " + std::to_string(tr));
        }
    }
    return out;
}

std::vector<FieldElement> roots_of_unity_12(const FieldCtx& F) {
    const u128 qm1 = F.order() - 1;
    const u64 g = std::gcd<u64>(12, static_cast<u64>(qm1 % 12));
    const auto primes = small_prime_factors(g);
    FieldElement w = F.one();
    if (g > 1) {
        bool found = false;
        for (u128 i = 2; i < F.order() && !found; ++i) {
            FieldElement z = F.from_index(i).pow(qm1 / g);
            found = std::all_of(primes.begin(), primes.end(), [&](u64 r) { return !z.pow(g / r).is_one(); });
            if (found) w = z;
        }
    }
    std::vector<FieldElement> out;
    FieldElement cur = F.one();
    for (u64 i = 0; i < g; ++i, cur *= w) out.push_back(cur);
    sort_unique(out);
    return out;
}

std::vector<FieldElement> automorphisms(const Curve& E) {
    std::vector<FieldElement> out;
    for (const auto& u : roots_of_unity_12(E.field())) {
        FieldElement u2 = u * u;
        if (u2 * u2 * E.a == E.a && u2 * u2 * u2 * E.b == E.b) out.push_back(u);
    }
    return out;
}

Point apply_scale(const FieldElement& u, const Point& P) {
    if (P.infinity) return P;
    FieldElement u2 = u * u;
    return Point::affine(u2 * P.x, u2 * u * P.y);
}

Curve scaled_curve(const FieldElement& u, const Curve& E) {
    FieldElement u2 = u * u;
    FieldElement u4 = u2 * u2;
    return Curve(u4 * E.a, u4 * u2 * E.b);
}

std::vector<FieldElement> isomorphisms(const Curve& from, const Curve& to) {
    if (from.field().order() != to.field().order() || from.j_invariant() != to.j_invariant()) return {};
    std::optional<FieldElement> u0;
    if (!from.a.is_zero() && !from.b.is_zero()) {
        u0 = ((to.b * from.a) / (from.b * to.a)).sqrt();
    } else if (from.a.is_zero()) {
        auto s = (to.b / from.b).sqrt();
        if (s)
            for (const FieldElement& sign : {*s, -*s})
                if (!u0) u0 = root_of_prime_degree(sign, 3);
    } else {
        auto s = (to.a / from.a).sqrt();
        if (s)
            for (const FieldElement& sign : {*s, -*s})
                if (!u0) u0 = sign.sqrt();
    }
    if (!u0) return {};
    std::vector<FieldElement> out;
    for (const auto& zeta : automorphisms(from)) {
        FieldElement u = *u0 * zeta;
        if (scaled_curve(u, from) == to) out.push_back(u);
    }
    sort_unique(out);
    return out;
}

Point Isogeny::operator()(const Point& P) const {
    if (in_kernel(P)) return Point::at_infinity();
    FieldElement X = P.x;
    FieldElement slope = P.x.ctx().one();
    for (const auto& t : terms_) {
        FieldElement inv = (P.x - t.xq).inv();
        FieldElement inv2 = inv * inv;
        X += t.v * inv + t.u * inv2;
        slope -= t.v * inv2 + 2 * (t.u * inv2 * inv);
    }
    return apply_scale(scale_, Point::affine(X, P.y * slope));
}

bool Isogeny::in_kernel(const Point& P) const {
    if (P.infinity) return true;
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.xq == P.x; });
}

std::vector<FieldElement> Isogeny::kernel_polynomial() const {
    const FieldCtx& F = domain_.field();
    std::vector<FieldElement> poly{F.one()};
    for (const auto& t : terms_) {
        std::vector<FieldElement> next(poly.size() + 1, F.zero());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= t.xq * poly[i];
        }
        poly = std::move(next);
    }
    return poly;
}

Isogeny Isogeny::then_scale(const FieldElement& u) const {
    Isogeny out = *this;
    out.scale_ = scale_ * u;
    out.codomain_ = scaled_curve(u, codomain_);
    return out;
}

Isogeny velu_isogeny(const Curve& E, const Point& K, int ell) {
    if (ell < 2 || !is_prime(static_cast<u64>(ell))) throw std::invalid_argument("isogeny degree must be prime");
    if (!E.contains(K)) throw std::invalid_argument("kernel generator not on the curve");
    std::vector<Point> multiples;
    Point cur = K;
    for (int i = 1; i < ell; ++i) {
        if (cur.infinity) throw std::invalid_argument("kernel generator has order below " + std::to_string(ell));
        multiples.push_back(cur);
        cur = E.add(cur, K);
    }
    if (!cur.infinity) throw std::invalid_argument("kernel generator does not have order " + std::to_string(ell));

    Isogeny phi;
    phi.domain_ = E;
    phi.generator_ = K;
    phi.degree_ = ell;
    phi.scale_ = E.field().one();
    const std::size_t reps = ell == 2 ? 1 : static_cast<std::size_t>((ell - 1) / 2);
    FieldElement v = E.field().zero(), w = E.field().zero();
    for (std::size_t i = 0; i < reps; ++i) {
        const Point& Q = multiples[i];
        FieldElement gx = 3 * (Q.x * Q.x) + E.a;
        FieldElement gy = -2 * Q.y;
        FieldElement vq = Q.y.is_zero() ? gx : 2 * gx;
        FieldElement uq = gy * gy;
        v += vq;
        w += uq + Q.x * vq;
        phi.terms_.push_back({Q.x, vq, uq});
    }
    phi.velu_codomain_ = Curve(E.a - 5 * v, E.b - 7 * w);
    phi.codomain_ = phi.velu_codomain_;
    return phi;
}

Isogeny dual_isogeny(const Isogeny& phi, const Point& R_outside_kernel, const std::vector<Point>& samples) {
    if (phi.in_kernel(R_outside_kernel)) throw std::invalid_argument("dual: auxiliary point lies in the kernel");
    Isogeny psi = velu_isogeny(phi.codomain(), phi(R_outside_kernel), phi.degree());
    const Curve& E = phi.domain();
    for (const auto& u : isomorphisms(psi.codomain(), E)) {
        Isogeny cand = psi.then_scale(u);
        bool ok = std::all_of(samples.begin(), samples.end(), [&](const Point& S) {
            return cand(phi(S)) == E.mul(static_cast<u128>(phi.degree()), S);
        });
        if (ok) return cand;
    }
    throw std::logic_error("dual: no isomorphism makes the composite equal to multiplication by the degree");
}

PointStream::PointStream(const Curve& E, u64 seed) : E_(&E), state_(seed) {}

Point PointStream::next() {
    const FieldCtx& F = E_->field();
    const u64 p = F.characteristic();
    std::vector<u64> c(static_cast<std::size_t>(F.degree()));
    for (int guard = 0; guard < 1000000; ++guard) {
        for (auto& ci : c) ci = splitmix(state_) % p;
        FieldElement x = F.from_coeffs(c);
        if (auto y = E_->rhs(x).sqrt()) return Point::affine(x, *y);
    }
    throw std::logic_error("point stream exhausted");
}

std::pair<Point, Point> torsion_basis(const Curve& E, int M, u128 group_exponent) {
    if (M < 1 || group_exponent % static_cast<u128>(M) != 0)
        throw std::invalid_argument("E[" + std::to_string(M) + "] is not rational over the working field");
    if (M == 1) return {Point::at_infinity(), Point::at_infinity()};
    const u128 cofactor = group_exponent / static_cast<u128>(M);
    const auto primes = small_prime_factors(static_cast<u64>(M));
    auto has_exact_order = [&](const Point& R) {
        if (!E.mul(static_cast<u128>(M), R).infinity) return false;
        return std::all_of(primes.begin(), primes.end(), [&](u64 r) { return !E.mul(static_cast<u128>(M) / r, R).infinity; });
    };
    PointStream stream(E, 0x7011 + static_cast<u64>(M));
    std::optional<Point> first;
    for (int tries = 0; tries < 10000; ++tries) {
        Point R = E.mul(cofactor, stream.next());
        if (!has_exact_order(R)) continue;
        if (!first) {
            first = R;
            continue;
        }
        std::set<Point, decltype(&point_less)> span(&point_less);
        Point row = Point::at_infinity();
        for (int a = 0; a < M; ++a, row = E.add(row, *first)) {
            Point cur = row;
            for (int b = 0; b < M; ++b, cur = E.add(cur, R)) span.insert(cur);
        }
        if (span.size() == static_cast<std::size_t>(M) * static_cast<std::size_t>(M)) return {*first, R};
    }
    throw std::logic_error("failed to find a basis of E[" + std::to_string(M) + "]");
}

TorsionCoordinates::TorsionCoordinates(const Curve& E, const Point& P, const Point& Q, int M) : P_(P), Q_(Q), M_(M) {
    Point row = Point::at_infinity();
    for (int a = 0; a < M; ++a, row = E.add(row, P)) {
        Point cur = row;
        for (int b = 0; b < M; ++b, cur = E.add(cur, Q)) table_.push_back({cur, {a, b}});
    }
    std::sort(table_.begin(), table_.end(), [](const auto& l, const auto& r) { return point_less(l.first, r.first); });
    for (std::size_t i = 1; i < table_.size(); ++i)
        if (table_[i].first == table_[i - 1].first) throw std::invalid_argument("torsion points are not a basis");
}

std::pair<int, int> TorsionCoordinates::operator()(const Point& R) const {
    auto it = std::lower_bound(table_.begin(), table_.end(), R, [](const auto& e, const Point& key) { return point_less(e.first, key); });
    if (it == table_.end() || !(it->first == R)) throw std::invalid_argument("point is not in the torsion subgroup");
    return it->second;
}

Point TorsionCoordinates::combine(int a, int b) const {
    for (const auto& e : table_)
        if (e.second == std::make_pair(((a % M_) + M_) % M_, ((b % M_) + M_) % M_)) return e.first;
    throw std::logic_error("combine: table incomplete");
}

}  // namespace isozeta
