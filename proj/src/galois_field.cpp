#include "isozeta/galois_field.hpp"

#include <algorithm>
#include <utility>

namespace isozeta {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr != 0) {
        long long q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw DivisionByZero();
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<u64>(t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

namespace fp_poly {

void trim(PrimePoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PrimePoly mul(const PrimePoly& f, const PrimePoly& g, u64 p) {
    if (f.empty() || g.empty()) return {};
    PrimePoly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = (r[i + j] + mulmod(f[i], g[j], p)) % p;
    trim(r);
    return r;
}

static std::pair<PrimePoly, PrimePoly> divmod(PrimePoly f, const PrimePoly& g, u64 p) {
    if (g.empty()) throw DivisionByZero();
    trim(f);
    if (f.size() < g.size()) return {{}, f};
    PrimePoly q(f.size() - g.size() + 1, 0);
    u64 lead_inv = invmod(g.back(), p);
    for (std::size_t i = f.size(); i-- >= g.size();) {
        u64 c = mulmod(f[i], lead_inv, p);
        q[i - (g.size() - 1)] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            std::size_t pos = i - (g.size() - 1) + j;
            f[pos] = (f[pos] + p - mulmod(c, g[j], p)) % p;
        }
    }
    trim(f);
    trim(q);
    return {q, f};
}

PrimePoly mod(PrimePoly f, const PrimePoly& g, u64 p) { return divmod(std::move(f), g, p).second; }

PrimePoly gcd(PrimePoly f, PrimePoly g, u64 p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        PrimePoly r = mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        u64 inv = invmod(f.back(), p);
        for (auto& c : f) c = mulmod(c, inv, p);
    }
    return f;
}

static PrimePoly powmod_poly(PrimePoly base, u128 e, const PrimePoly& f, u64 p) {
    PrimePoly r{1};
    base = mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = mod(mul(r, base, p), f, p);
        base = mod(mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

PrimePoly powmod_x(u128 e, const PrimePoly& f, u64 p) { return powmod_poly(PrimePoly{0, 1}, e, f, p); }

}  // namespace fp_poly

bool is_irreducible(const PrimePoly& monic, u64 p) {
    int k = static_cast<int>(monic.size()) - 1;
    if (k < 1) return false;
    if (k == 1) return true;
    PrimePoly h{0, 1};
    for (int i = 1; i <= k / 2; ++i) {
        h = fp_poly::powmod_poly(h, p, monic, p);
        PrimePoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_poly::trim(diff);
        PrimePoly g = fp_poly::gcd(monic, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

PrimePoly find_irreducible(u64 p, int k) {
    if (k < 1) throw std::invalid_argument("extension degree must be positive");
    if (k == 1) return PrimePoly{0, 1};
    PrimePoly f(static_cast<std::size_t>(k) + 1, 0);
    f[static_cast<std::size_t>(k)] = 1;
    for (;;) {
        if (is_irreducible(f, p)) return f;
        // next candidate: increment the base-p counter in the lower coefficients
        std::size_t i = 0;
        while (i < static_cast<std::size_t>(k) && ++f[i] == p) f[i++] = 0;
        if (i == static_cast<std::size_t>(k)) throw std::logic_error("no irreducible polynomial found");
    }
}

FieldCtx::FieldCtx(u64 p, int k) : p_(p), k_(k) {
    if (k < 1 || k > kMaxExtensionDegree) throw std::invalid_argument("extension degree out of range 1..16");
    if (!is_prime(p) || p <= 3) throw std::invalid_argument("field characteristic must be a prime > 3");
    modulus_ = find_irreducible(p, k);
    init();
}

FieldCtx::FieldCtx(u64 p, PrimePoly monic_modulus) : p_(p), modulus_(std::move(monic_modulus)) {
    fp_poly::trim(modulus_);
    k_ = static_cast<int>(modulus_.size()) - 1;
    if (k_ < 1 || k_ > kMaxExtensionDegree) throw std::invalid_argument("extension degree out of range 1..16");
    if (!is_prime(p) || p <= 3) throw std::invalid_argument("field characteristic must be a prime > 3");
    if (modulus_.back() != 1 || !is_irreducible(modulus_, p)) throw std::invalid_argument("modulus is not monic irreducible");
    init();
}

void FieldCtx::init() {
    if (p_ >= (u64{1} << 60)) throw std::invalid_argument("field characteristic too large");
    q_ = 1;
    for (int i = 0; i < k_; ++i) {
        if (q_ > (u128{1} << 126) / p_) throw std::invalid_argument("field order exceeds 2^126");
        q_ *= p_;
    }
    std::array<u64, kMaxExtensionDegree> r{};
    for (int j = 0; j < k_; ++j) r[static_cast<std::size_t>(j)] = (p_ - modulus_[static_cast<std::size_t>(j)]) % p_;
    for (int i = 0; i + 1 < k_; ++i) {
        reduction_.push_back(r);
        // multiply r by t and reduce
        u64 top = r[static_cast<std::size_t>(k_ - 1)];
        for (int j = k_ - 1; j > 0; --j) r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j - 1)];
        r[0] = 0;
        for (int j = 0; j < k_; ++j) {
            u64 sub = mulmod(top, modulus_[static_cast<std::size_t>(j)], p_);
            r[static_cast<std::size_t>(j)] = (r[static_cast<std::size_t>(j)] + p_ - sub) % p_;
        }
    }
    for (u128 idx = 1;; ++idx) {
        FieldElement z = from_index(idx);
        if (!z.is_square()) {
            non_residue_ = z.coeffs();
            break;
        }
    }
}

FieldElement FieldCtx::zero() const { return FieldElement(this, {}); }

FieldElement FieldCtx::one() const { return from_int(1); }

FieldElement FieldCtx::from_int(long long v) const {
    std::array<u64, kMaxExtensionDegree> c{};
    long long m = static_cast<long long>(p_);
    long long r = v % m;
    if (r < 0) r += m;
    c[0] = static_cast<u64>(r);
    return FieldElement(this, c);
}

FieldElement FieldCtx::generator() const {
    if (k_ == 1) return FieldElement(this, {}) - from_int(static_cast<long long>(modulus_[0]));
    std::array<u64, kMaxExtensionDegree> c{};
    c[1] = 1;
    return FieldElement(this, c);
}

FieldElement FieldCtx::from_coeffs(const std::vector<u64>& v) const {
    if (v.size() > static_cast<std::size_t>(k_)) throw std::invalid_argument("too many coefficients for field degree");
    std::array<u64, kMaxExtensionDegree> c{};
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] % p_;
    return FieldElement(this, c);
}

FieldElement FieldCtx::from_index(u128 idx) const {
    std::array<u64, kMaxExtensionDegree> c{};
    for (int i = 0; i < k_; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<u64>(idx % p_);
        idx /= p_;
    }
    return FieldElement(this, c);
}

FieldElement FieldCtx::non_residue() const { return FieldElement(this, non_residue_); }

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

bool FieldElement::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](u64 v) { return v == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    const u64 p = ctx_->p_;
    std::array<u64, kMaxExtensionDegree> r{};
    for (int i = 0; i < ctx_->k_; ++i) {
        u64 s = c_[static_cast<std::size_t>(i)] + o.c_[static_cast<std::size_t>(i)];
        r[static_cast<std::size_t>(i)] = s >= p ? s - p : s;
    }
    return FieldElement(ctx_, r);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    const u64 p = ctx_->p_;
    std::array<u64, kMaxExtensionDegree> r{};
    for (int i = 0; i < ctx_->k_; ++i) {
        u64 a = c_[static_cast<std::size_t>(i)], b = o.c_[static_cast<std::size_t>(i)];
        r[static_cast<std::size_t>(i)] = a >= b ? a - b : a + p - b;
    }
    return FieldElement(ctx_, r);
}

FieldElement FieldElement::operator-() const { return ctx_->zero() - *this; }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    const u64 p = ctx_->p_;
    const int k = ctx_->k_;
    if (k == 1) return FieldElement(ctx_, {mulmod(c_[0], o.c_[0], p)});
    std::array<u128, 2 * kMaxExtensionDegree> raw{};
    for (int i = 0; i < k; ++i) {
        u64 a = c_[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        for (int j = 0; j < k; ++j) raw[static_cast<std::size_t>(i + j)] += static_cast<u128>(a) * o.c_[static_cast<std::size_t>(j)];
    }
    for (int i = k; i < 2 * k - 1; ++i) {
        u64 c = static_cast<u64>(raw[static_cast<std::size_t>(i)] % p);
        if (c == 0) continue;
        const auto& red = ctx_->reduction_[static_cast<std::size_t>(i - k)];
        for (int j = 0; j < k; ++j) raw[static_cast<std::size_t>(j)] += static_cast<u128>(c) * red[static_cast<std::size_t>(j)];
    }
    std::array<u64, kMaxExtensionDegree> r{};
    for (int j = 0; j < k; ++j) r[static_cast<std::size_t>(j)] = static_cast<u64>(raw[static_cast<std::size_t>(j)] % p);
    return FieldElement(ctx_, r);
}

FieldElement operator*(long long s, const FieldElement& a) { return a.ctx().from_int(s) * a; }

FieldElement FieldElement::inv() const {
    if (is_zero()) throw DivisionByZero();
    const u64 p = ctx_->p_;
    PrimePoly a(c_.begin(), c_.begin() + ctx_->k_);
    fp_poly::trim(a);
    PrimePoly r0 = ctx_->modulus_, r1 = a;
    PrimePoly s0{}, s1{1};
    while (!r1.empty()) {
        auto [q, r] = fp_poly::divmod(r0, r1, p);
        PrimePoly qs = fp_poly::mul(q, s1, p);
        PrimePoly ns(std::max(s0.size(), qs.size()), 0);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            u64 x = i < s0.size() ? s0[i] : 0;
            u64 y = i < qs.size() ? qs[i] : 0;
            ns[i] = (x + p - y) % p;
        }
        fp_poly::trim(ns);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(ns);
    }
    u64 c_inv = invmod(r0[0], p);
    std::array<u64, kMaxExtensionDegree> out{};
    for (std::size_t i = 0; i < s0.size(); ++i) out[i] = mulmod(s0[i], c_inv, p);
    return FieldElement(ctx_, out);
}

FieldElement FieldElement::pow(u128 e) const {
    FieldElement r = ctx_->one();
    FieldElement b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::frobenius(int e) const {
    int k = ctx_->k_;
    e %= k;
    if (e < 0) e += k;
    FieldElement r = *this;
    for (int i = 0; i < e; ++i) r = r.pow(ctx_->p_);
    return r;
}

bool FieldElement::is_square() const {
    if (is_zero()) return true;
    return pow((ctx_->q_ - 1) / 2).is_one();
}

std::optional<FieldElement> FieldElement::sqrt() const {
    auto r = prime_root(*this, 2);
    if (!r) return std::nullopt;
    FieldElement neg = -*r;
    return neg < *r ? neg : *r;
}

u128 FieldElement::index() const {
    u128 v = 0;
    for (int i = ctx_->k_ - 1; i >= 0; --i) v = v * ctx_->p_ + c_[static_cast<std::size_t>(i)];
    return v;
}

std::strong_ordering FieldElement::operator<=>(const FieldElement& o) const {
    for (int i = kMaxExtensionDegree - 1; i >= 0; --i) {
        auto a = c_[static_cast<std::size_t>(i)], b = o.c_[static_cast<std::size_t>(i)];
        if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
}

std::string FieldElement::to_string() const {
    std::string s = "[";
    for (int i = 0; i < ctx_->k_; ++i) {
        if (i) s += ',';
        s += std::to_string(c_[static_cast<std::size_t>(i)]);
    }
    return s + "]";
}

SubfieldEmbedding::SubfieldEmbedding(const FieldCtx& small, const FieldCtx& large) : small_(&small), large_(&large) {
    if (small.characteristic() != large.characteristic() || large.degree() % small.degree() != 0)
        throw std::invalid_argument("no embedding between these fields");
    powers_.push_back(large.one());
    if (small.degree() == 1) return;
    FieldElement root;
    if (small.degree() == large.degree() && small.modulus() == large.modulus()) {
        root = large.generator();
    } else if (small.degree() == 2) {
        const auto& m = small.modulus();
        FieldElement b = large.from_int(static_cast<long long>(m[1]));
        FieldElement c = large.from_int(static_cast<long long>(m[0]));
        auto s = (b * b - 4 * c).sqrt();
        if (!s) throw std::logic_error("quadratic subfield modulus has no root in the extension");
        FieldElement half = large.from_int(2).inv();
        FieldElement r1 = (-b + *s) * half, r2 = (-b - *s) * half;
        root = std::min(r1, r2);
    } else {
        throw std::invalid_argument("embedding supported only for subfields of degree 1 or 2");
    }
    for (int i = 1; i < small.degree(); ++i) powers_.push_back(powers_.back() * root);
}

FieldElement SubfieldEmbedding::operator()(const FieldElement& a) const {
    FieldElement r = large_->zero();
    for (int i = 0; i < small_->degree(); ++i) r += large_->from_int(static_cast<long long>(a.coeff(i))) * powers_[static_cast<std::size_t>(i)];
    return r;
}

static u128 inverse_mod_u128(u128 a, u128 m) {
    // extended Euclid on signed 128-bit values; m < 2^126 so no overflow
    using i128 = __int128;
    i128 t = 0, nt = 1, r = static_cast<i128>(m), nr = static_cast<i128>(a % m);
    while (nr != 0) {
        i128 q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw std::logic_error("exponent not invertible");
    if (t < 0) t += static_cast<i128>(m);
    return static_cast<u128>(t);
}

std::optional<FieldElement> prime_root(const FieldElement& a, u64 n) {
    if (a.is_zero()) return a;
    const FieldCtx& F = a.ctx();
    const u128 order = F.order() - 1;
    if (order % n != 0) return a.pow(inverse_mod_u128(n, order));
    if (!a.pow(order / n).is_one()) return std::nullopt;
    u128 t = order;
    int s = 0;
    while (t % n == 0) {
        t /= n;
        ++s;
    }
    FieldElement z;
    if (n == 2) {
        z = F.non_residue();
    } else {
        for (u128 idx = 2;; ++idx) {
            z = F.from_index(idx);
            if (!z.is_zero() && !z.pow(order / n).is_one()) break;
        }
    }
    FieldElement g = z.pow(t);  // generates the Sylow n-subgroup, order n^s
    u128 k = t == 1 ? 0 : inverse_mod_u128(n % t, t);
    FieldElement x0 = a.pow(k);
    FieldElement w = x0.pow(n) / a;  // lies in the subgroup of n-th powers of <g>
    FieldElement target = w.inv();
    // discrete log of target in base g, digit by digit
    std::vector<FieldElement> top_powers;  // (g^{n^{s-1}})^d
    FieldElement gtop = g;
    for (int i = 0; i + 1 < s; ++i) gtop = gtop.pow(n);
    top_powers.push_back(F.one());
    for (u64 d = 1; d < n; ++d) top_powers.push_back(top_powers.back() * gtop);
    u128 e = 0, npow = 1;
    FieldElement g_inv = g.inv();
    for (int i = 0; i < s; ++i) {
        FieldElement h = target * g_inv.pow(e);
        for (int j = 0; j < s - 1 - i; ++j) h = h.pow(n);
        u64 digit = 0;
        while (digit < n && !(top_powers[digit] == h)) ++digit;
        if (digit == n) throw std::logic_error("discrete log failed in root extraction");
        e += digit * npow;
        npow *= n;
    }
    if (e % n != 0) throw std::logic_error("root extraction: target is not an n-th power in the Sylow subgroup");
    FieldElement root = x0 * g.pow(e / n);
    if (!(root.pow(n) == a)) throw std::logic_error("root extraction self-check failed");
    return root;
}

}  // namespace isozeta
