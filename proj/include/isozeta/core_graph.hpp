#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace isozeta {

using Index = int;

struct Edge {
    Index source = 0;
    Index target = 0;
    bool operator==(const Edge&) const = default;
};

// Vertices 0..n-1 and edges 0..m-1 with source/target, the dual map J on
// edges and L on vertices, subject to s(Jy) = t(y) and t(Jy) = L s(y).
struct AbstractIsogenyGraph {
    Index num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<Index> j_map;
    std::vector<Index> l_map;

    Index num_edges() const { return static_cast<Index>(edges.size()); }
    bool operator==(const AbstractIsogenyGraph&) const = default;
};

// A graph in the sense of Serre: J a fixed-point-free involution reversing
// edges and L the identity.
struct OrientableGraph {
    Index num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<Index> involution;

    Index num_edges() const { return static_cast<Index>(edges.size()); }
    AbstractIsogenyGraph as_abstract() const;
};

class MalformedGraph : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class AxiomViolation : public std::runtime_error {
public:
    AxiomViolation(const std::string& what, std::vector<Index> edges)
        : std::runtime_error(what), edges_(std::move(edges)) {}
    const std::vector<Index>& edges() const { return edges_; }

private:
    std::vector<Index> edges_;
};

struct ValidationReport {
    std::vector<Index> source_axiom_failures;  // s(Jy) != t(y)
    std::vector<Index> target_axiom_failures;  // t(Jy) != L s(y)
    std::vector<int> out_degrees;
    bool regular = true;
    int degree = 0;  // common out-degree when regular

    bool ok() const { return source_axiom_failures.empty() && target_axiom_failures.empty(); }
};

// Throws MalformedGraph on out-of-range indices or wrong map sizes.
ValidationReport validate(const AbstractIsogenyGraph& g);
// validate() and throw AxiomViolation unless both axioms hold.
void require_valid(const AbstractIsogenyGraph& g);

void validate_orientable(const OrientableGraph& g);

struct QuotientData {
    std::vector<Index> vertex_class;  // x -> class id
    std::vector<Index> edge_class;    // y -> class id
    Index num_vertex_classes = 0;
    Index num_edge_classes = 0;
    std::vector<Edge> class_edges;       // induced s, t per edge class
    std::vector<Index> class_dual;       // induced J per edge class
    std::vector<Index> self_dual_classes;
};

QuotientData quotients(const AbstractIsogenyGraph& g);

struct OrientablePair {
    OrientableGraph plus;
    OrientableGraph minus;
};

OrientablePair orientable_graphs(const AbstractIsogenyGraph& g);

long long euler_characteristic(const OrientableGraph& g);

// Weak components of an orientable graph, as vertex lists.
std::vector<std::vector<Index>> components(const OrientableGraph& g);

class DisconnectedGraph : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

long long homotopy_rank(const AbstractIsogenyGraph& g);

bool is_connected(const AbstractIsogenyGraph& g);

std::vector<std::vector<long long>> adjacency_matrix(const AbstractIsogenyGraph& g);
std::vector<int> out_degrees(const AbstractIsogenyGraph& g);

// Text format "AIG v1".  Parse errors carry the offending line number.
class GraphParseError : public std::runtime_error {
public:
    GraphParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

void write_graph(std::ostream& out, const AbstractIsogenyGraph& g);
AbstractIsogenyGraph read_graph(std::istream& in);

}  // namespace isozeta
