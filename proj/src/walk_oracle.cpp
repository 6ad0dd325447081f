#include "isozeta/walk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace isozeta {

namespace {

struct Walker {
    const AbstractIsogenyGraph& g;
    std::vector<std::vector<Index>> out_of;

    explicit Walker(const AbstractIsogenyGraph& graph) : g(graph), out_of(static_cast<std::size_t>(graph.num_vertices)) {
        require_valid(g);
        for (Index y = 0; y < g.num_edges(); ++y) out_of[static_cast<std::size_t>(src(y))].push_back(y);
    }
    Index src(Index y) const { return g.edges[static_cast<std::size_t>(y)].source; }
    Index tgt(Index y) const { return g.edges[static_cast<std::size_t>(y)].target; }
    Index dual(Index y) const { return g.j_map[static_cast<std::size_t>(y)]; }

    // Visit every non-backtracking walk of length r starting at walk[0]
    // with all edges >= min_edge, calling on_closed for closed tailless ones.
    template <class F>
    void extend(std::vector<Index>& walk, int r, Index min_edge, F&& on_closed) const {
        Index last = walk.back();
        if (static_cast<int>(walk.size()) == r) {
            if (tgt(last) == src(walk.front()) && walk.front() != dual(last)) on_closed(walk);
            return;
        }
        Index back = dual(last);
        for (Index z : out_of[static_cast<std::size_t>(tgt(last))]) {
            if (z == back || z < min_edge) continue;
            walk.push_back(z);
            extend(walk, r, min_edge, on_closed);
            walk.pop_back();
        }
    }
};

std::vector<Index> least_rotation(const std::vector<Index>& w) {
    std::vector<Index> best = w;
    std::vector<Index> rot = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

bool is_primitive(const std::vector<Index>& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
        if (periodic) return false;
    }
    return true;
}

void check_budget(const AbstractIsogenyGraph& g, int r, double budget) {
    double est = estimated_walk_nodes(g, r);
    if (est > budget)
        throw ResourceGuard("walk enumeration up to length " + std::to_string(r) + " would visit about " +
                            std::to_string(static_cast<long long>(est)) + " nodes (budget " +
                            std::to_string(static_cast<long long>(budget)) + "); lower the length or use the determinant series");
}

}  // namespace

double estimated_walk_nodes(const AbstractIsogenyGraph& g, int r) {
    std::vector<int> deg = out_degrees(g);
    double branch = deg.empty() ? 0.0 : static_cast<double>(*std::max_element(deg.begin(), deg.end()));
    double total = 0, layer = static_cast<double>(g.num_edges());
    for (int i = 0; i < r; ++i) {
        total += layer;
        layer *= branch;
    }
    return total;
}

long long count_closed_nb_tailless(const AbstractIsogenyGraph& g, int r, double budget) {
    if (r < 1) throw std::invalid_argument("walk length must be positive");
    check_budget(g, r, budget);
    Walker w(g);
    long long count = 0;
    std::vector<Index> walk;
    for (Index y = 0; y < g.num_edges(); ++y) {
        walk.assign(1, y);
        w.extend(walk, r, 0, [&](const std::vector<Index>&) { ++count; });
    }
    return count;
}

PrimeTable enumerate_primes(const AbstractIsogenyGraph& g, int max_len, double budget) {
    if (max_len < 1) throw std::invalid_argument("maximum length must be positive");
    check_budget(g, max_len, budget);
    Walker w(g);
    PrimeTable table;
    table.c.assign(static_cast<std::size_t>(max_len) + 1, 0);
    for (int r = 1; r <= max_len; ++r) {
        std::set<std::vector<Index>> found;
        std::vector<Index> walk;
        for (Index y = 0; y < g.num_edges(); ++y) {
            walk.assign(1, y);
            w.extend(walk, r, y, [&](const std::vector<Index>& cyc) {
                if (is_primitive(cyc)) found.insert(least_rotation(cyc));
            });
        }
        auto& bucket = table.primes[r];
        for (const auto& rot : found) bucket.push_back(PrimeClass{rot});
        table.c[static_cast<std::size_t>(r)] = static_cast<long long>(found.size());
    }
    return table;
}

long long nr_from_primes(const std::vector<long long>& c, int r) {
    long long total = 0;
    for (int d = 1; d <= r; ++d) {
        if (r % d != 0) continue;
        if (static_cast<std::size_t>(d) >= c.size()) throw std::out_of_range("prime count c_" + std::to_string(d) + " missing");
        total += d * c[static_cast<std::size_t>(d)];
    }
    return total;
}

}  // namespace isozeta
