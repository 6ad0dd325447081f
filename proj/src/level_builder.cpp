#include "isozeta/level_builder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "isozeta/elliptic.hpp"

namespace isozeta {

namespace {

int mod(long long v, int N) { return static_cast<int>(((v % N) + N) % N); }

int multiplicative_order(long long a, int N) {
    if (N == 1) return 1;
    const int base = mod(a, N);
    if (std::gcd(base, N) != 1) throw std::invalid_argument("order of a non-unit");
    int k = 1;
    for (long long cur = base; cur != 1 % N; cur = cur * base % N) ++k;
    return k;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}

constexpr int kMaxLevel = 30;

void check_level(int N) {
    if (N < 1 || N > kMaxLevel) throw std::invalid_argument("level N must lie in [1, " + std::to_string(kMaxLevel) + "]");
}

std::vector<std::string> field_strings(const std::vector<FieldElement>& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.to_string());
    return out;
}

// Kernel line through (x, y) in (Z/l)^2: kappa < l for <R + kappa S>, l for <S>.
int kernel_index(std::pair<int, int> xy, int ell) {
    auto [x, y] = xy;
    if (x % ell == 0) {
        if (y % ell == 0) throw std::logic_error("zero vector has no kernel line");
        return ell;
    }
    return mod(static_cast<long long>(y) * static_cast<long long>(invmod(static_cast<u64>(x), static_cast<u64>(ell))), ell);
}

std::pair<int, int> kernel_vector(int kappa, int ell) { return kappa < ell ? std::make_pair(1, kappa) : std::make_pair(0, 1); }

Mat2 matrix_on_basis(const TorsionCoordinates& coords, const Point& imgP, const Point& imgQ) {
    auto [a, c] = coords(imgP);
    auto [b, d] = coords(imgQ);
    return Mat2{a, b, c, d};
}

std::pair<int, int> apply(const Mat2& m, std::pair<int, int> v, int N) {
    return {mod(static_cast<long long>(m.a) * v.first + static_cast<long long>(m.b) * v.second, N),
            mod(static_cast<long long>(m.c) * v.first + static_cast<long long>(m.d) * v.second, N)};
}

struct CurveData {
    Curve curve;
    std::optional<TorsionCoordinates> level_coords, ell_coords;
    std::vector<FieldElement> auts;
    std::vector<Mat2> aut_level, aut_ell;
};

struct DraftEdge {
    int kappa = 0;
    Index target = 0;
    std::vector<FieldElement> kernel_poly;
    int dual_kappa = 0;
};

}  // namespace

Mat2 Mat2::mul(const Mat2& o, int N) const {
    return Mat2{mod(static_cast<long long>(a) * o.a + static_cast<long long>(b) * o.c, N),
                mod(static_cast<long long>(a) * o.b + static_cast<long long>(b) * o.d, N),
                mod(static_cast<long long>(c) * o.a + static_cast<long long>(d) * o.c, N),
                mod(static_cast<long long>(c) * o.b + static_cast<long long>(d) * o.d, N)};
}

Mat2 Mat2::scaled(int s, int N) const {
    return Mat2{mod(static_cast<long long>(s) * a, N), mod(static_cast<long long>(s) * b, N), mod(static_cast<long long>(s) * c, N),
                mod(static_cast<long long>(s) * d, N)};
}

int Mat2::det(int N) const { return mod(static_cast<long long>(a) * d - static_cast<long long>(b) * c, N); }

std::optional<Mat2> Mat2::inverse(int N) const {
    const int dt = det(N);
    if (std::gcd(dt, N) != 1) return std::nullopt;
    if (N == 1) return Mat2{0, 0, 0, 0};
    const int di = static_cast<int>(invmod(static_cast<u64>(dt), static_cast<u64>(N)));
    return Mat2{d, -b, -c, a}.scaled(di, N);
}

int Mat2::code(int N) const { return ((mod(a, N) * N + mod(b, N)) * N + mod(c, N)) * N + mod(d, N); }

Mat2 Mat2::decode(int code, int N) {
    Mat2 m;
    m.d = code % N;
    code /= N;
    m.c = code % N;
    code /= N;
    m.b = code % N;
    m.a = code / N;
    return m;
}

long long gl2_order(int N) {
    check_level(N);
    long long order = 1;
    int n = N;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        int k = 0;
        while (n % q == 0) {
            n /= q;
            ++k;
        }
        // |GL_2(Z/q^k)| = q^{4(k-1)} (q^2-1)(q^2-q)
        long long part = (static_cast<long long>(q) * q - 1) * (static_cast<long long>(q) * q - q);
        for (int i = 1; i < k; ++i) part *= static_cast<long long>(q) * q * q * q;
        order *= part;
    }
    return order;
}

std::vector<Mat2> gl2_elements(int N) {
    check_level(N);
    std::vector<Mat2> out;
    const int total = N * N * N * N;
    for (int code = 0; code < total; ++code) {
        Mat2 m = Mat2::decode(code, N);
        if (std::gcd(m.det(N), N) == 1) out.push_back(m);
    }
    return out;
}

LevelSubgroup::LevelSubgroup(int N, std::vector<Mat2> elements, std::string spec)
    : N_(N), elements_(std::move(elements)), spec_(std::move(spec)) {
    member_.assign(static_cast<std::size_t>(N) * N * N * N, 0);
    std::sort(elements_.begin(), elements_.end(), [N](const Mat2& l, const Mat2& r) { return l.code(N) < r.code(N); });
    for (const auto& m : elements_) member_[static_cast<std::size_t>(m.code(N))] = 1;
}

LevelSubgroup LevelSubgroup::full(int N) { return LevelSubgroup(N, gl2_elements(N), "full:" + std::to_string(N)); }

LevelSubgroup LevelSubgroup::borel0(int N) {
    std::vector<Mat2> el;
    for (const auto& m : gl2_elements(N))
        if (m.c == 0) el.push_back(m);
    return LevelSubgroup(N, std::move(el), "borel0:" + std::to_string(N));
}

LevelSubgroup LevelSubgroup::borel1(int N) {
    std::vector<Mat2> el;
    for (const auto& m : gl2_elements(N))
        if (m.c == 0 && m.a == 1 % N) el.push_back(m);
    return LevelSubgroup(N, std::move(el), "borel1:" + std::to_string(N));
}

LevelSubgroup LevelSubgroup::generated(int N, const std::vector<Mat2>& gens) {
    check_level(N);
    std::string spec = "gens:" + std::to_string(N) + ":";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const Mat2& g = gens[i];
        if (std::gcd(g.det(N), N) != 1) throw std::invalid_argument("generator " + std::to_string(i + 1) + " is not invertible mod N");
        spec += (i ? ";" : "") + std::to_string(mod(g.a, N)) + "," + std::to_string(mod(g.b, N)) + "," +
                std::to_string(mod(g.c, N)) + "," + std::to_string(mod(g.d, N));
    }
    std::vector<char> seen(static_cast<std::size_t>(N) * N * N * N, 0);
    const Mat2 id = Mat2{1, 0, 0, 1}.scaled(1, N);
    std::vector<Mat2> el{id};
    seen[static_cast<std::size_t>(id.code(N))] = 1;
    std::deque<Mat2> queue{id};
    while (!queue.empty()) {
        Mat2 cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Mat2 next = cur.mul(g, N);
            auto& flag = seen[static_cast<std::size_t>(next.code(N))];
            if (flag) continue;
            flag = 1;
            el.push_back(next);
            queue.push_back(next);
        }
    }
    return LevelSubgroup(N, std::move(el), spec);
}

LevelSubgroup LevelSubgroup::parse(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty level spec");
    const std::string& kind = parts[0];
    if (kind == "full" && parts.size() == 1) return full(1);
    if ((kind == "full" || kind == "borel0" || kind == "borel1") && parts.size() == 2) {
        int N = parse_int(parts[1], "level");
        check_level(N);
        if (kind == "full") return full(N);
        return kind == "borel0" ? borel0(N) : borel1(N);
    }
    if (kind == "gens" && (parts.size() == 2 || parts.size() == 3)) {
        int N = parse_int(parts[1], "level");
        check_level(N);
        std::vector<Mat2> gens;
        if (parts.size() == 3 && !parts[2].empty()) {
            for (const auto& g : split(parts[2], ';')) {
                auto e = split(g, ',');
                if (e.size() != 4) throw std::invalid_argument("generator '" + g + "' needs four entries a,b,c,d");
                gens.push_back(Mat2{parse_int(e[0], "entry"), parse_int(e[1], "entry"), parse_int(e[2], "entry"), parse_int(e[3], "entry")});
            }
        }
        return generated(N, gens);
    }
    throw std::invalid_argument("unknown level spec '" + spec + "' (expected full, full:N, borel0:N, borel1:N or gens:N:a,b,c,d;...)");
}

bool LevelSubgroup::is_sandwiched() const {
    for (const auto& m : elements_)
        if (m.c != 0) return false;
    const LevelSubgroup b1 = borel1(N_);
    for (const auto& m : b1.elements())
        if (!contains(m)) return false;
    return true;
}

int m_index(int ell, const LevelSubgroup& H) {
    const int N = H.level();
    if (std::gcd(ell, N) != 1) throw std::invalid_argument("l must be coprime to N");
    const int k = multiplicative_order(ell, N);
    int hits = 0;
    long long s = 1 % N;
    for (int i = 0; i < k; ++i, s = s * ell % N) {
        Mat2 scalar = Mat2{1, 0, 0, 1}.scaled(static_cast<int>(s), N);
        if (H.contains(scalar) || H.contains(scalar.scaled(-1, N))) ++hits;
    }
    return k / hits;
}

Index BuiltGraph::diamond(Index v, int d) const {
    if (std::gcd(d, level) != 1) throw std::invalid_argument("diamond operator needs a unit mod N");
    const LevelVertex& x = vertices.at(static_cast<std::size_t>(v));
    return class_of[static_cast<std::size_t>(x.curve)][static_cast<std::size_t>(x.level_matrix.scaled(d, level).code(level))];
}

int torsion_field_degree(u64 p, int N, int ell) {
    const long long minus_p = -static_cast<long long>(p);
    const int a = multiplicative_order(minus_p, N);
    const int b = multiplicative_order(minus_p, ell);
    return 2 * std::lcm(a, b);
}

BuiltGraph build_supersingular_graph(const BuildOptions& opts) {
    const u64 p = opts.p;
    const int ell = opts.ell;
    const LevelSubgroup& H = opts.level;
    const int N = H.level();
    if (p <= 3 || !is_prime(p)) throw std::invalid_argument("p must be a prime greater than 3");
    if (ell != 2 && ell != 3 && ell != 5 && ell != 7) throw std::invalid_argument("l must be one of 2, 3, 5, 7");
    if (p == static_cast<u64>(ell)) throw std::invalid_argument("l must differ from p");
    if (std::gcd(static_cast<u64>(N), p * static_cast<u64>(ell)) != 1) throw std::invalid_argument("N must be coprime to p and l");
    if (N > 12) throw BuildGuard("level N = " + std::to_string(N) + " exceeds the supported bound 12");
    if (p > 3000) throw BuildGuard("p = " + std::to_string(p) + " too large: the j-invariant sweep over F_{p^2} is limited to p <= 3000");

    const int degree = torsion_field_degree(p, N, ell);
    if (degree > kMaxExtensionDegree)
        throw BuildGuard("E[" + std::to_string(N) + "] and E[" + std::to_string(ell) + "] need F_{p^" + std::to_string(degree) +
                         "}, beyond the supported degree " + std::to_string(kMaxExtensionDegree) +
                         "; choose N with a smaller order of -p modulo N");
    if (static_cast<double>(degree) * std::log2(static_cast<double>(p)) >= 125.0)
        throw BuildGuard("torsion field F_{p^" + std::to_string(degree) + "} does not fit in 126 bits");

    FieldCtx Fp2(p, 2);
    FieldCtx Fq(p, degree);
    SubfieldEmbedding embed(Fp2, Fq);
    const auto models = supersingular_models(Fp2);

    const int half = degree / 2;
    u128 pm = 1;
    for (int i = 0; i < half; ++i) pm *= p;
    const u128 exponent = half % 2 == 0 ? pm - 1 : pm + 1;  // |(-p)^m - 1|

    std::vector<CurveData> curves(models.size());
    std::map<FieldElement, int> curve_by_j;
    for (std::size_t c = 0; c < models.size(); ++c) {
        CurveData& cd = curves[c];
        cd.curve = Curve(embed(models[c].curve.a), embed(models[c].curve.b));
        curve_by_j[cd.curve.j_invariant()] = static_cast<int>(c);
        auto [P, Q] = torsion_basis(cd.curve, N, exponent);
        cd.level_coords.emplace(cd.curve, P, Q, N);
        auto [R, S] = torsion_basis(cd.curve, ell, exponent);
        cd.ell_coords.emplace(cd.curve, R, S, ell);
        cd.auts = automorphisms(cd.curve);
        for (const auto& u : cd.auts) {
            cd.aut_level.push_back(matrix_on_basis(*cd.level_coords, apply_scale(u, P), apply_scale(u, Q)));
            cd.aut_ell.push_back(matrix_on_basis(*cd.ell_coords, apply_scale(u, R), apply_scale(u, S)));
        }
    }

    BuiltGraph out;
    out.level = N;
    out.ell = ell;
    out.working_degree = degree;
    out.m = m_index(ell, H);
    out.sandwiched = H.is_sandwiched();

    // Vertices: Aut(E) \ GL_2(Z/N) / H per curve, smallest code first.
    const auto gl = gl2_elements(N);
    const std::size_t codes = static_cast<std::size_t>(N) * N * N * N;
    out.class_of.assign(curves.size(), std::vector<Index>(codes, -1));
    for (std::size_t c = 0; c < curves.size(); ++c) {
        auto& cls = out.class_of[c];
        for (const auto& g : gl) {
            if (cls[static_cast<std::size_t>(g.code(N))] >= 0) continue;
            const auto v = static_cast<Index>(out.vertices.size());
            for (const auto& Mu : curves[c].aut_level) {
                Mat2 ug = Mu.mul(g, N);
                for (const auto& h : H.elements()) cls[static_cast<std::size_t>(ug.mul(h, N).code(N))] = v;
            }
            out.vertices.push_back(LevelVertex{static_cast<int>(c), g, 0});
        }
    }
    const auto V = static_cast<Index>(out.vertices.size());

    auto stabilizer = [&](const LevelVertex& x) {
        std::vector<std::size_t> idx;
        const Mat2 ginv = *x.level_matrix.inverse(N);
        const auto& auts = curves[static_cast<std::size_t>(x.curve)].aut_level;
        for (std::size_t w = 0; w < auts.size(); ++w)
            if (H.contains(ginv.mul(auts[w], N).mul(x.level_matrix, N))) idx.push_back(w);
        return idx;
    };
    for (auto& x : out.vertices) x.aut_size = static_cast<int>(stabilizer(x).size());

    // Edges: one per cyclic subgroup of order l at each vertex.
    std::vector<std::vector<DraftEdge>> drafts(static_cast<std::size_t>(V));
    for (Index v = 0; v < V; ++v) {
        const LevelVertex& x = out.vertices[static_cast<std::size_t>(v)];
        const CurveData& cd = curves[static_cast<std::size_t>(x.curve)];
        for (int kappa = 0; kappa <= ell; ++kappa) {
            auto [kx, ky] = kernel_vector(kappa, ell);
            Isogeny alpha = velu_isogeny(cd.curve, cd.ell_coords->combine(kx, ky), ell);
            auto found = curve_by_j.find(alpha.codomain().j_invariant());
            if (found == curve_by_j.end()) throw std::logic_error("isogenous curve has a j-invariant outside the supersingular list");
            const int c2 = found->second;
            const CurveData& cd2 = curves[static_cast<std::size_t>(c2)];
            auto isos = isomorphisms(alpha.codomain(), cd2.curve);
            if (isos.empty()) throw std::logic_error("codomain is not isomorphic to its model over the working field");
            Isogeny beta = alpha.then_scale(isos.front());
            const Mat2 T = matrix_on_basis(*cd2.level_coords, beta(cd.level_coords->P()), beta(cd.level_coords->Q()));
            const Mat2 Tg = T.mul(x.level_matrix, N);
            const Index target = out.class_of[static_cast<std::size_t>(c2)][static_cast<std::size_t>(Tg.code(N))];
            const Mat2 gjinv = *out.vertices[static_cast<std::size_t>(target)].level_matrix.inverse(N);
            std::optional<Isogeny> morphism;
            for (std::size_t w = 0; w < cd2.auts.size() && !morphism; ++w)
                if (H.contains(gjinv.mul(cd2.aut_level[w], N).mul(Tg, N))) morphism = beta.then_scale(cd2.auts[w]);
            if (!morphism) throw std::logic_error("no automorphism carries the pushed level structure into its class");
            auto [ox, oy] = kernel_vector(kappa == ell ? 0 : ell, ell);  // a point outside the kernel
            const Point image = (*morphism)(cd.ell_coords->combine(ox, oy));
            const int dual_kappa = kernel_index((*cd2.ell_coords)(image), ell);
            drafts[static_cast<std::size_t>(v)].push_back(DraftEdge{kappa, target, alpha.kernel_polynomial(), dual_kappa});
        }
        std::sort(drafts[static_cast<std::size_t>(v)].begin(), drafts[static_cast<std::size_t>(v)].end(),
                  [](const DraftEdge& l, const DraftEdge& r) {
                      if (l.target != r.target) return l.target < r.target;
                      return l.kernel_poly < r.kernel_poly;
                  });
    }

    // Global edge numbering and per-vertex kernel lookup.
    AbstractIsogenyGraph& g = out.graph;
    g.num_vertices = V;
    std::vector<Index> first_edge(static_cast<std::size_t>(V) + 1, 0);
    std::vector<std::vector<Index>> edge_of_kappa(static_cast<std::size_t>(V), std::vector<Index>(static_cast<std::size_t>(ell) + 1, -1));
    for (Index v = 0; v < V; ++v) {
        first_edge[static_cast<std::size_t>(v) + 1] = first_edge[static_cast<std::size_t>(v)] + static_cast<Index>(drafts[static_cast<std::size_t>(v)].size());
        for (std::size_t i = 0; i < drafts[static_cast<std::size_t>(v)].size(); ++i) {
            const DraftEdge& d = drafts[static_cast<std::size_t>(v)][i];
            const Index y = first_edge[static_cast<std::size_t>(v)] + static_cast<Index>(i);
            edge_of_kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(d.kappa)] = y;
            g.edges.push_back(Edge{v, d.target});
        }
    }

    // Aut(x)-orbits of edges and their representatives.
    std::vector<Index> representative(g.edges.size(), -1);
    std::optional<std::mt19937_64> rng;
    if (opts.shuffle_seed) rng.emplace(*opts.shuffle_seed);
    for (Index v = 0; v < V; ++v) {
        const LevelVertex& x = out.vertices[static_cast<std::size_t>(v)];
        const CurveData& cd = curves[static_cast<std::size_t>(x.curve)];
        const auto stab = stabilizer(x);
        for (Index y = first_edge[static_cast<std::size_t>(v)]; y < first_edge[static_cast<std::size_t>(v) + 1]; ++y) {
            if (representative[static_cast<std::size_t>(y)] >= 0) continue;
            const int kappa = drafts[static_cast<std::size_t>(v)][static_cast<std::size_t>(y - first_edge[static_cast<std::size_t>(v)])].kappa;
            std::vector<Index> orbit;
            for (std::size_t w : stab) {
                int moved = kernel_index(apply(cd.aut_ell[w], kernel_vector(kappa, ell), ell), ell);
                orbit.push_back(edge_of_kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(moved)]);
            }
            std::sort(orbit.begin(), orbit.end());
            orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
            Index rep = orbit.front();
            if (rng) {
                std::vector<Index> shuffled = orbit;
                std::shuffle(shuffled.begin(), shuffled.end(), *rng);
                rep = shuffled.front();
            }
            for (Index z : orbit) representative[static_cast<std::size_t>(z)] = rep;
        }
    }

    g.j_map.assign(g.edges.size(), -1);
    for (Index y = 0; y < g.num_edges(); ++y) {
        const Index rep = representative[static_cast<std::size_t>(y)];
        const Index v = g.edges[static_cast<std::size_t>(rep)].source;
        const DraftEdge& d = drafts[static_cast<std::size_t>(v)][static_cast<std::size_t>(rep - first_edge[static_cast<std::size_t>(v)])];
        const Index dual_edge = edge_of_kappa[static_cast<std::size_t>(d.target)][static_cast<std::size_t>(d.dual_kappa)];
        g.j_map[static_cast<std::size_t>(y)] = representative[static_cast<std::size_t>(dual_edge)];
    }

    g.l_map.resize(static_cast<std::size_t>(V));
    for (Index v = 0; v < V; ++v) g.l_map[static_cast<std::size_t>(v)] = out.diamond(v, ell % N);

    ValidationReport report = validate(g);
    if (!report.ok()) {
        Index bad = report.source_axiom_failures.empty() ? report.target_axiom_failures.front() : report.source_axiom_failures.front();
        throw std::logic_error("internal error: built graph violates the isogeny-graph axioms at edge " + std::to_string(bad));
    }

    // Provenance sidecar.
    nlohmann::ordered_json prov;
    prov["format"] = "isozeta-provenance v1";
    prov["p"] = p;
    prov["ell"] = ell;
    prov["level"] = {{"spec", H.spec()}, {"N", N}, {"order", H.order()}, {"borel_sandwich", out.sandwiched}};
    prov["m_index"] = out.m;
    auto modulus_json = [](const FieldCtx& F) {
        std::vector<u64> m(F.modulus().begin(), F.modulus().end());
        return m;
    };
    prov["model_field"] = {{"degree", 2}, {"modulus", modulus_json(Fp2)}};
    prov["torsion_field"] = {{"degree", degree}, {"modulus", modulus_json(Fq)}};
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (Index v = 0; v < V; ++v) {
        const LevelVertex& x = out.vertices[static_cast<std::size_t>(v)];
        const auto& model = models[static_cast<std::size_t>(x.curve)];
        const Mat2& m = x.level_matrix;
        verts.push_back({{"index", v},
                         {"j", model.j.to_string()},
                         {"a", model.curve.a.to_string()},
                         {"b", model.curve.b.to_string()},
                         {"level_matrix", {{m.a, m.b}, {m.c, m.d}}},
                         {"aut_size", x.aut_size},
                         {"diamond_l", g.l_map[static_cast<std::size_t>(v)]}});
    }
    prov["vertices"] = std::move(verts);
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (Index v = 0; v < V; ++v) {
        for (std::size_t i = 0; i < drafts[static_cast<std::size_t>(v)].size(); ++i) {
            const DraftEdge& d = drafts[static_cast<std::size_t>(v)][i];
            const Index y = first_edge[static_cast<std::size_t>(v)] + static_cast<Index>(i);
            edges.push_back({{"index", y},
                             {"source", v},
                             {"target", d.target},
                             {"dual", g.j_map[static_cast<std::size_t>(y)]},
                             {"representative", representative[static_cast<std::size_t>(y)]},
                             {"kernel_polynomial", field_strings(d.kernel_poly)}});
        }
    }
    prov["edges"] = std::move(edges);
    prov["adjacency"] = adjacency_matrix(g);
    out.provenance = std::move(prov);
    return out;
}

}  // namespace isozeta
