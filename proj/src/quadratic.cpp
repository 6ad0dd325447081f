#include "isozeta/quadratic.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace isozeta {

namespace {

long long floor_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int jacobi(long long a, long long n) {
    // n odd positive
    a = floor_mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        long long r = floor_mod(a, 8);
        if ((v & 1) && (r == 3 || r == 5)) result = -result;
    }
    if (n == 1) return result;
    return result * jacobi(a, n);
}

std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> out;
    n = std::llabs(n);
    for (long long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

int valuation(long long n, long long q) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % q == 0) {
        n /= q;
        ++v;
    }
    return v;
}

bool QuadForm::is_reduced() const {
    if (!(std::llabs(b) <= a && a <= c)) return false;
    if ((std::llabs(b) == a || a == c) && b < 0) return false;
    return true;
}

bool QuadForm::is_primitive() const { return std::gcd(std::gcd(a, std::llabs(b)), c) == 1; }

QuadForm reduce(QuadForm f) {
    if (f.a <= 0 || f.discriminant() >= 0) throw std::invalid_argument("reduce: form must be positive definite");
    for (;;) {
        // normalize b into (-a, a]
        long long two_a = 2 * f.a;
        long long k = (f.a - f.b) >= 0 ? (f.a - f.b) / two_a : -((f.b - f.a + two_a - 1) / two_a);
        if (k != 0) {
            __int128 nc = static_cast<__int128>(f.a) * k * k + static_cast<__int128>(f.b) * k + f.c;
            f.b += two_a * k;
            f.c = static_cast<long long>(nc);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

QuadForm principal_form(long long D) {
    if (!is_discriminant(D)) throw std::invalid_argument("not a negative discriminant");
    long long b = floor_mod(D, 2);
    return QuadForm{1, b, (b * b - D) / 4};
}

QuadForm inverse(const QuadForm& f) { return reduce(QuadForm{f.a, -f.b, f.c}); }

namespace {

struct Egcd {
    long long g, x, y;
};

Egcd egcd(long long a, long long b) {
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long long q = a / b;
        a = std::exchange(b, a - q * b);
        x0 = std::exchange(x1, x0 - q * x1);
        y0 = std::exchange(y1, y0 - q * y1);
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

}  // namespace

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    if (f1.discriminant() != f2.discriminant()) throw std::invalid_argument("compose: discriminants differ");
    const long long D = f1.discriminant();
    QuadForm x = f1, y = f2;
    if (x.a > y.a) std::swap(x, y);
    long long s = (x.b + y.b) / 2;
    long long n = y.b - s;
    long long y1, d;
    if (y.a % x.a == 0) {
        y1 = 0;
        d = x.a;
    } else {
        Egcd e = egcd(y.a, x.a);  // u*a2 + v*a1 = d
        d = e.g;
        y1 = e.x;
    }
    long long x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Egcd e = egcd(s, d);  // x2*s + y2*d = d1
        d1 = e.g;
        x2 = e.x;
        y2 = -e.y;
    }
    long long v1 = x.a / d1, v2 = y.a / d1;
    __int128 rr = (static_cast<__int128>(y1) * y2 % v1 * n - static_cast<__int128>(x2) * y.c) % v1;
    if (rr < 0) rr += v1;
    long long r = static_cast<long long>(rr);
    long long b3 = y.b + 2 * v2 * r;
    long long a3 = v1 * v2;
    __int128 num = static_cast<__int128>(b3) * b3 - D;
    long long c3 = static_cast<long long>(num / (4 * static_cast<__int128>(a3)));
    return reduce(QuadForm{a3, b3, c3});
}

bool is_discriminant(long long D) { return D < 0 && (floor_mod(D, 4) == 0 || floor_mod(D, 4) == 1); }

std::vector<QuadForm> reduced_forms(long long D) {
    if (!is_discriminant(D)) throw std::invalid_argument("class_number: D must be negative and 0 or 1 mod 4");
    std::vector<QuadForm> out;
    const long long absD = -D;
    for (long long a = 1; 3 * a * a <= absD; ++a) {
        for (long long b = -a + 1; b <= a; ++b) {
            long long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            QuadForm f{a, b, num / (4 * a)};
            if (f.is_reduced() && f.is_primitive()) out.push_back(f);
        }
    }
    return out;
}

long long class_number(long long D) { return static_cast<long long>(reduced_forms(D).size()); }

QuadOrder quad_order(long long D) {
    if (!is_discriminant(D)) throw std::invalid_argument("not a negative discriminant");
    long long core = -1;  // squarefree part of D, with sign
    long long m = -D;
    for (long long q = 2; q * q <= m; ++q) {
        while (m % (q * q) == 0) m /= q * q;
        if (m % q == 0) {
            m /= q;
            core *= q;
        }
    }
    core *= m;
    long long fundamental = floor_mod(core, 4) == 1 ? core : 4 * core;
    long long f2 = D / fundamental;
    long long f = 1;
    while (f * f < f2) ++f;
    return QuadOrder{D, fundamental, f};
}

std::optional<int> form_order_of_ell(long long D, long long ell) {
    QuadOrder O = quad_order(D);
    if (O.conductor % ell == 0 || kronecker(D, ell) != 1) return std::nullopt;
    long long b = 0;
    while (floor_mod(b * b - D, 4 * ell) != 0) ++b;
    QuadForm base = reduce(QuadForm{ell, b, (b * b - D) / (4 * ell)});
    const QuadForm identity = principal_form(D);
    QuadForm acc = base;
    int order = 1;
    while (!(acc == identity)) {
        acc = compose(acc, base);
        ++order;
        if (order > 1'000'000) throw std::logic_error("form order search did not terminate");
    }
    return order;
}

std::vector<QuadOrder> cycle_set_I(int r, long long p, long long ell) {
    if (r < 1) throw std::invalid_argument("cycle length must be positive");
    long long bound = 4 * ipow(ell, r);
    if (ipow(ell, r) >= p)
        throw UnsupportedRegime("l^r >= p: cycles may be counted with weights that have no closed form, so the "
                                "class-number route is unavailable");
    std::vector<QuadOrder> out;
    for (long long absD = 3; absD <= bound; ++absD) {
        long long D = -absD;
        if (!is_discriminant(D)) continue;
        QuadOrder O = quad_order(D);
        if (kronecker(O.fundamental, p) == 1) continue;
        if (O.conductor % p == 0 || O.conductor % ell == 0) continue;
        auto ord = form_order_of_ell(D, ell);
        if (ord && *ord == r) out.push_back(O);
    }
    return out;
}

long long cycle_count_from_class_numbers(int r, long long p, long long ell) {
    long long total = 0;
    for (int n = 1; n <= r; ++n) {
        if (r % n != 0) continue;
        for (const auto& O : cycle_set_I(n, p, ell)) total += 2 * class_number(O.discriminant);
    }
    return total;
}

long long psi_index(long long N) {
    long long v = N;
    for (long long q : prime_divisors(N)) v = v / q * (q + 1);
    return v;
}

long long delta4(long long ell) { return ell == 2 ? 1 : (ell - kronecker(-1, ell)) / 2; }

long long delta3(long long ell) { return ell == 2 ? 2 : 2 * (ell - kronecker(-3, ell)) / 3; }

std::optional<long long> nu_4ell(long long N, long long ell) {
    int v = valuation(N, 2);
    if (v == 0) return 1;
    if (v == 1) return floor_mod(ell, 4) == 1 ? 1 : 2;
    if (floor_mod(ell, 4) == 1) return 0;
    if (floor_mod(ell, 8) == 7) return 4;
    if (floor_mod(ell, 8) == 3) return v == 2 ? 2 : 0;
    return std::nullopt;
}

std::optional<long long> nu_ell(long long N, long long ell) {
    int v = valuation(N, 2);
    if (v == 0) return 1;
    if (floor_mod(ell, 8) == 3) return 0;
    if (floor_mod(ell, 8) == 7) return 2;
    return std::nullopt;
}

EulerCharReport euler_chars_borel(long long p, long long ell, long long N) {
    if (p <= 3 || std::gcd(N, p * ell) != 1) throw std::invalid_argument("euler_chars_borel requires p > 3 and gcd(N, p*l) = 1");
    EulerCharReport rep;
    rep.p = p;
    rep.ell = ell;
    rep.level = N;
    rep.psi = psi_index(N);
    const auto primes = prime_divisors(N);

    rep.eps2 = 0;
    if (N % 4 != 0) {
        rep.eps2 = 1 - kronecker(-4, p);
        for (long long q : primes) rep.eps2 *= 1 + kronecker(-4, q);
    }
    rep.eps3 = 0;
    if (N % 9 != 0) {
        rep.eps3 = 1 - kronecker(-3, p);
        for (long long q : primes) rep.eps3 *= 1 + kronecker(-3, q);
    }
    rep.gamma = 1 - kronecker(-ell, p);
    for (long long q : primes)
        if (q % 2 == 1) rep.gamma *= 1 + kronecker(-ell, q);
    rep.delta4 = delta4(ell);
    rep.delta3 = delta3(ell);

    Rational r2;  // twice the self-dual count
    if (ell == 2) {
        long long twist = 1 - kronecker(-2, p);
        for (long long q : primes) twist *= 1 + kronecker(-2, q);
        r2 = Rational(rep.eps2) + Rational(twist);
    } else {
        rep.nu_ell = nu_ell(N, ell);
        rep.nu_4ell = nu_4ell(N, ell);
        long long disc = floor_mod(ell, 4) == 3 ? -ell : -4 * ell;
        rep.class_number_ell = class_number(disc);
        auto need = [&](const std::optional<long long>& v, const char* what) {
            if (!v) throw std::invalid_argument(std::string("self-dual count undefined: ") + what + " has no value for this (N, l)");
            return *v;
        };
        long long h = rep.class_number_ell;
        if (ell == 3) {
            r2 = Rational(h * (need(rep.nu_ell, "nu_l") + need(rep.nu_4ell, "nu_4l")) * rep.gamma);
        } else if (floor_mod(ell, 4) == 1) {
            r2 = Rational(h * rep.gamma * need(rep.nu_4ell, "nu_4l"));
        } else if (floor_mod(ell, 8) == 3) {
            r2 = Rational(h * (need(rep.nu_ell, "nu_l") + 3 * need(rep.nu_4ell, "nu_4l")) * rep.gamma);
        } else {
            r2 = Rational(h * (need(rep.nu_ell, "nu_l") + need(rep.nu_4ell, "nu_4l")) * rep.gamma);
        }
    }
    if (denominator(r2) != 1 || numerator(r2) % 2 != 0) throw std::logic_error("self-dual orbit count is not an integer");
    rep.self_dual = static_cast<long long>(numerator(r2) / 2);

    Rational chi = Rational((1 - ell) * (p - 1) * rep.psi, 24) + Rational((1 - ell + 2 * rep.delta4) * rep.eps2, 8) +
                   Rational((2 - 2 * ell + 3 * rep.delta3) * rep.eps3, 12) + Rational(rep.self_dual, 2);
    if (denominator(chi) != 1) throw std::logic_error("Euler characteristic formula produced a non-integer");
    rep.chi_plus = static_cast<long long>(numerator(chi));
    rep.chi_minus = rep.chi_plus - rep.self_dual;
    rep.vertex_count = Rational((p - 1) * rep.psi, 12) + Rational(rep.eps2, 4) + Rational(rep.eps3, 3);
    return rep;
}

long long genus_X0(long long N) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    const auto primes = prime_divisors(N);
    long long mu = psi_index(N);
    long long nu2 = 0, nu3 = 0;
    if (N % 4 != 0) {
        nu2 = 1;
        for (long long q : primes) nu2 *= 1 + kronecker(-4, q);
    }
    if (N % 9 != 0) {
        nu3 = 1;
        for (long long q : primes) nu3 *= 1 + kronecker(-3, q);
    }
    long long cusps = 0;
    for (long long d = 1; d <= N; ++d) {
        if (N % d != 0) continue;
        long long g = std::gcd(d, N / d);
        long long phi = g;
        for (long long q : prime_divisors(g)) phi = phi / q * (q - 1);
        cusps += phi;
    }
    Rational g = 1 + Rational(mu, 12) - Rational(nu2, 4) - Rational(nu3, 3) - Rational(cusps, 2);
    if (denominator(g) != 1) throw std::logic_error("genus formula produced a non-integer");
    return static_cast<long long>(numerator(g));
}

long long point_count_X0(long long ell, int r, long long n_r, long long chi_plus, long long chi_minus) {
    long long sign = (r % 2 == 1) ? 1 : -1;  // (-1)^{r-1}
    return 2 * (1 + ipow(ell, r)) - chi_plus + sign * chi_minus - n_r;
}

long long point_count_relation(int r, long long n_r, long long chi_plus, long long chi_minus, long long count_X0_N,
                               long long count_X0_pN) {
    long long sign = (r % 2 == 1) ? 1 : -1;
    return count_X0_pN - 2 * count_X0_N + n_r + chi_plus - sign * chi_minus;
}

long long count_points(const IntegralWeierstrass& E, long long q, int r) {
    auto m = [q](long long v) { return floor_mod(v, q); };
    long long affine = 0;
    for (long long x = 0; x < q; ++x)
        for (long long y = 0; y < q; ++y) {
            long long lhs = m(y * y + m(E.a1 * x) * y + E.a3 * y);
            long long rhs = m(m(x * x) * x + m(E.a2 * m(x * x)) + m(E.a4 * x) + E.a6);
            if (lhs == rhs) ++affine;
        }
    long long trace = q + 1 - (affine + 1);
    // s_n = alpha^n + beta^n with s_0 = 2, s_1 = trace
    long long s_prev = 2, s_cur = trace;
    for (int i = 1; i < r; ++i) {
        long long s_next = trace * s_cur - q * s_prev;
        s_prev = s_cur;
        s_cur = s_next;
    }
    return ipow(q, r) + 1 - s_cur;
}

}  // namespace isozeta
