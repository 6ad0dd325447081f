#include "isozeta/core_graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace isozeta {

namespace {

class UnionFind {
public:
    explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
    Index find(Index x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
    }
    // Dense class ids numbered by smallest member.
    std::vector<Index> labels(Index& count) {
        std::vector<Index> root_label(parent_.size(), -1), out(parent_.size());
        count = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            Index r = find(static_cast<Index>(i));
            if (root_label[static_cast<std::size_t>(r)] < 0) root_label[static_cast<std::size_t>(r)] = count++;
            out[i] = root_label[static_cast<std::size_t>(r)];
        }
        return out;
    }

private:
    std::vector<Index> parent_;
};

template <class T>
const T& at(const std::vector<T>& v, Index i) {
    return v[static_cast<std::size_t>(i)];
}

}  // namespace

AbstractIsogenyGraph OrientableGraph::as_abstract() const {
    AbstractIsogenyGraph g;
    g.num_vertices = num_vertices;
    g.edges = edges;
    g.j_map = involution;
    g.l_map.resize(static_cast<std::size_t>(num_vertices));
    std::iota(g.l_map.begin(), g.l_map.end(), 0);
    return g;
}

ValidationReport validate(const AbstractIsogenyGraph& g) {
    const Index n = g.num_vertices, m = g.num_edges();
    if (n < 0) throw MalformedGraph("negative vertex count");
    if (static_cast<Index>(g.j_map.size()) != m) throw MalformedGraph("dual map size differs from edge count");
    if (static_cast<Index>(g.l_map.size()) != n) throw MalformedGraph("vertex map size differs from vertex count");
    for (Index y = 0; y < m; ++y) {
        const Edge& e = at(g.edges, y);
        if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
            throw MalformedGraph("edge " + std::to_string(y) + " has an endpoint out of range");
        Index jy = at(g.j_map, y);
        if (jy < 0 || jy >= m) throw MalformedGraph("dual of edge " + std::to_string(y) + " out of range");
    }
    for (Index x = 0; x < n; ++x) {
        Index lx = at(g.l_map, x);
        if (lx < 0 || lx >= n) throw MalformedGraph("L of vertex " + std::to_string(x) + " out of range");
    }
    ValidationReport rep;
    rep.out_degrees = out_degrees(g);
    for (Index y = 0; y < m; ++y) {
        const Edge& e = at(g.edges, y);
        const Edge& d = at(g.edges, at(g.j_map, y));
        if (d.source != e.target) rep.source_axiom_failures.push_back(y);
        if (d.target != at(g.l_map, e.source)) rep.target_axiom_failures.push_back(y);
    }
    if (!rep.out_degrees.empty()) {
        rep.degree = rep.out_degrees.front();
        rep.regular = std::all_of(rep.out_degrees.begin(), rep.out_degrees.end(), [&](int d) { return d == rep.degree; });
    }
    return rep;
}

void require_valid(const AbstractIsogenyGraph& g) {
    ValidationReport rep = validate(g);
    if (rep.ok()) return;
    std::ostringstream msg;
    std::vector<Index> bad = rep.source_axiom_failures;
    bad.insert(bad.end(), rep.target_axiom_failures.begin(), rep.target_axiom_failures.end());
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    msg << "graph axioms violated at edge(s)";
    for (Index y : bad) msg << ' ' << y;
    throw AxiomViolation(msg.str(), bad);
}

void validate_orientable(const OrientableGraph& g) {
    require_valid(g.as_abstract());
    for (Index y = 0; y < g.num_edges(); ++y) {
        Index jy = at(g.involution, y);
        if (jy == y) throw std::logic_error("orientable graph: involution has a fixed point");
        if (at(g.involution, jy) != y) throw std::logic_error("orientable graph: map is not an involution");
    }
}

std::vector<int> out_degrees(const AbstractIsogenyGraph& g) {
    std::vector<int> d(static_cast<std::size_t>(g.num_vertices), 0);
    for (const Edge& e : g.edges) ++d[static_cast<std::size_t>(e.source)];
    return d;
}

QuotientData quotients(const AbstractIsogenyGraph& g) {
    QuotientData q;
    UnionFind vx(g.num_vertices), ey(g.num_edges());
    for (Index x = 0; x < g.num_vertices; ++x) vx.unite(x, at(g.l_map, x));
    for (Index y = 0; y < g.num_edges(); ++y) ey.unite(y, at(g.j_map, at(g.j_map, y)));
    q.vertex_class = vx.labels(q.num_vertex_classes);
    q.edge_class = ey.labels(q.num_edge_classes);

    const std::size_t classes = static_cast<std::size_t>(q.num_edge_classes);
    q.class_edges.assign(classes, Edge{-1, -1});
    q.class_dual.assign(classes, -1);
    for (Index y = 0; y < g.num_edges(); ++y) {
        Index c = at(q.edge_class, y);
        Edge induced{at(q.vertex_class, at(g.edges, y).source), at(q.vertex_class, at(g.edges, y).target)};
        Index dual = at(q.edge_class, at(g.j_map, y));
        auto& slot = q.class_edges[static_cast<std::size_t>(c)];
        if (slot.source < 0) {
            slot = induced;
            q.class_dual[static_cast<std::size_t>(c)] = dual;
        } else if (!(slot == induced) || q.class_dual[static_cast<std::size_t>(c)] != dual) {
            throw std::logic_error("quotient maps are not well defined on edge class " + std::to_string(c));
        }
    }
    for (Index c = 0; c < q.num_edge_classes; ++c) {
        Index d = at(q.class_dual, c);
        if (at(q.class_dual, d) != c) throw std::logic_error("induced dual map is not an involution");
        if (d == c) q.self_dual_classes.push_back(c);
    }
    return q;
}

OrientablePair orientable_graphs(const AbstractIsogenyGraph& g) {
    QuotientData q = quotients(g);
    OrientablePair out;
    out.plus.num_vertices = out.minus.num_vertices = q.num_vertex_classes;

    std::vector<Index> plus_id(static_cast<std::size_t>(q.num_edge_classes), -1);
    for (Index c = 0; c < q.num_edge_classes; ++c) {
        if (at(q.class_dual, c) == c) continue;
        plus_id[static_cast<std::size_t>(c)] = out.plus.num_edges();
        out.plus.edges.push_back(at(q.class_edges, c));
    }
    for (Index c = 0; c < q.num_edge_classes; ++c) {
        if (at(q.class_dual, c) == c) continue;
        out.plus.involution.push_back(at(plus_id, at(q.class_dual, c)));
    }

    out.minus.edges = q.class_edges;
    out.minus.involution = q.class_dual;
    for (Index c : q.self_dual_classes) {
        Index twin = out.minus.num_edges();
        out.minus.edges.push_back(at(q.class_edges, c));
        out.minus.involution.push_back(c);
        out.minus.involution[static_cast<std::size_t>(c)] = twin;
    }
    validate_orientable(out.plus);
    validate_orientable(out.minus);
    return out;
}

long long euler_characteristic(const OrientableGraph& g) {
    if (g.num_edges() % 2 != 0) throw std::logic_error("orientable graph with an odd number of directed edges");
    return static_cast<long long>(g.num_vertices) - g.num_edges() / 2;
}

std::vector<std::vector<Index>> components(const OrientableGraph& g) {
    UnionFind uf(g.num_vertices);
    for (const Edge& e : g.edges) uf.unite(e.source, e.target);
    Index count = 0;
    std::vector<Index> label = uf.labels(count);
    std::vector<std::vector<Index>> out(static_cast<std::size_t>(count));
    for (Index x = 0; x < g.num_vertices; ++x) out[static_cast<std::size_t>(at(label, x))].push_back(x);
    return out;
}

long long homotopy_rank(const AbstractIsogenyGraph& g) {
    OrientablePair pair = orientable_graphs(g);
    auto comps = components(pair.plus);
    if (comps.size() > 1) {
        std::ostringstream msg;
        msg << "the orientable graph is disconnected; components:";
        for (const auto& c : comps) {
            msg << " {";
            for (std::size_t i = 0; i < c.size(); ++i) msg << (i ? "," : "") << c[i];
            msg << '}';
        }
        throw DisconnectedGraph(msg.str());
    }
    return 1 - euler_characteristic(pair.plus);
}

bool is_connected(const AbstractIsogenyGraph& g) {
    const Index n = g.num_vertices;
    if (n <= 1) return true;
    auto reach = [&](bool forward) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<Index> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            Index x = stack.back();
            stack.pop_back();
            for (const Edge& e : g.edges) {
                Index from = forward ? e.source : e.target, to = forward ? e.target : e.source;
                if (from == x && !seen[static_cast<std::size_t>(to)]) {
                    seen[static_cast<std::size_t>(to)] = 1;
                    stack.push_back(to);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    return reach(true) && reach(false);
}

std::vector<std::vector<long long>> adjacency_matrix(const AbstractIsogenyGraph& g) {
    const std::size_t n = static_cast<std::size_t>(g.num_vertices);
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
    for (const Edge& e : g.edges) ++a[static_cast<std::size_t>(e.source)][static_cast<std::size_t>(e.target)];
    return a;
}

void write_graph(std::ostream& out, const AbstractIsogenyGraph& g) {
    out << "AIG v1\n";
    out << "vertices " << g.num_vertices << '\n';
    out << "edges " << g.num_edges() << '\n';
    for (Index y = 0; y < g.num_edges(); ++y)
        out << y << ' ' << at(g.edges, y).source << ' ' << at(g.edges, y).target << ' ' << at(g.j_map, y) << '\n';
    out << 'L';
    for (Index x : g.l_map) out << ' ' << x;
    out << '\n';
}

namespace {

struct LineReader {
    std::istream& in;
    int line = 0;

    // Next non-blank line split into tokens; false at end of input.
    bool next(std::vector<std::string>& tokens) {
        std::string text;
        while (std::getline(in, text)) {
            ++line;
            std::istringstream ss(text);
            tokens.clear();
            for (std::string t; ss >> t;) tokens.push_back(t);
            if (!tokens.empty()) return true;
        }
        return false;
    }
    std::vector<std::string> expect(const char* what) {
        std::vector<std::string> t;
        if (!next(t)) throw GraphParseError(line + 1, std::string("unexpected end of input, expected ") + what);
        return t;
    }
    long long number(const std::string& s) const {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw GraphParseError(line, "not an integer: '" + s + "'");
        }
        if (used != s.size()) throw GraphParseError(line, "not an integer: '" + s + "'");
        return v;
    }
};

}  // namespace

AbstractIsogenyGraph read_graph(std::istream& in) {
    LineReader r{in};
    auto header = r.expect("header");
    if (header.size() != 2 || header[0] != "AIG" || header[1] != "v1") throw GraphParseError(r.line, "expected header 'AIG v1'");
    auto vline = r.expect("vertex count");
    if (vline.size() != 2 || vline[0] != "vertices") throw GraphParseError(r.line, "expected 'vertices N'");
    long long n = r.number(vline[1]);
    auto eline = r.expect("edge count");
    if (eline.size() != 2 || eline[0] != "edges") throw GraphParseError(r.line, "expected 'edges M'");
    long long m = r.number(eline[1]);
    if (n < 0 || m < 0 || n > 50'000'000 || m > 50'000'000) throw GraphParseError(r.line, "count out of range");

    AbstractIsogenyGraph g;
    g.num_vertices = static_cast<Index>(n);
    g.edges.assign(static_cast<std::size_t>(m), Edge{-1, -1});
    g.j_map.assign(static_cast<std::size_t>(m), -1);
    std::vector<int> edge_line(static_cast<std::size_t>(m), 0);
    for (long long i = 0; i < m; ++i) {
        auto t = r.expect("edge record");
        if (t.size() != 4) throw GraphParseError(r.line, "edge record must be 'y s t Jy'");
        long long y = r.number(t[0]), s = r.number(t[1]), tg = r.number(t[2]), jy = r.number(t[3]);
        if (y < 0 || y >= m) throw GraphParseError(r.line, "edge index out of range");
        if (edge_line[static_cast<std::size_t>(y)] != 0) throw GraphParseError(r.line, "edge " + std::to_string(y) + " listed twice");
        if (s < 0 || s >= n || tg < 0 || tg >= n) throw GraphParseError(r.line, "vertex index out of range");
        if (jy < 0 || jy >= m) throw GraphParseError(r.line, "dual edge index out of range");
        edge_line[static_cast<std::size_t>(y)] = r.line;
        g.edges[static_cast<std::size_t>(y)] = Edge{static_cast<Index>(s), static_cast<Index>(tg)};
        g.j_map[static_cast<std::size_t>(y)] = static_cast<Index>(jy);
    }
    auto lline = r.expect("L line");
    if (lline.empty() || lline[0] != "L") throw GraphParseError(r.line, "expected 'L x0 ... x_{N-1}'");
    if (static_cast<long long>(lline.size()) != n + 1) throw GraphParseError(r.line, "L line must list exactly N vertices");
    const int l_line = r.line;
    for (long long x = 0; x < n; ++x) {
        long long lx = r.number(lline[static_cast<std::size_t>(x + 1)]);
        if (lx < 0 || lx >= n) throw GraphParseError(l_line, "L value out of range");
        g.l_map.push_back(static_cast<Index>(lx));
    }
    std::vector<std::string> extra;
    if (r.next(extra)) throw GraphParseError(r.line, "trailing content after L line");

    ValidationReport rep = validate(g);
    if (!rep.source_axiom_failures.empty()) {
        Index y = rep.source_axiom_failures.front();
        throw GraphParseError(edge_line[static_cast<std::size_t>(y)],
                              "axiom s(Jy) = t(y) fails for edge " + std::to_string(y));
    }
    if (!rep.target_axiom_failures.empty()) {
        Index y = rep.target_axiom_failures.front();
        throw GraphParseError(edge_line[static_cast<std::size_t>(y)],
                              "axiom t(Jy) = L s(y) fails for edge " + std::to_string(y));
    }
    return g;
}

}  // namespace isozeta
