#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isozeta/core_graph.hpp"
#include "isozeta/galois_field.hpp"
#include "json.hpp"

namespace isozeta {

// 2x2 matrix over Z/N acting on column vectors: [[a, b], [c, d]].
struct Mat2 {
    int a = 1, b = 0, c = 0, d = 1;

    Mat2 mul(const Mat2& o, int N) const;
    Mat2 scaled(int s, int N) const;
    int det(int N) const;
    std::optional<Mat2> inverse(int N) const;
    // Lexicographic in (a, b, c, d), entries reduced into [0, N).
    int code(int N) const;
    static Mat2 decode(int code, int N);
    bool operator==(const Mat2&) const = default;
};

// Subgroup of GL_2(Z/N), stored as an explicit element set.
class LevelSubgroup {
public:
    static LevelSubgroup full(int N);
    static LevelSubgroup borel0(int N);  // upper triangular
    static LevelSubgroup borel1(int N);  // upper triangular with a = 1
    static LevelSubgroup generated(int N, const std::vector<Mat2>& gens);
    // "full", "full:N", "borel0:N", "borel1:N" or "gens:N:a,b,c,d;a,b,c,d;..."
    static LevelSubgroup parse(const std::string& spec);

    int level() const { return N_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Mat2>& elements() const { return elements_; }
    bool contains(const Mat2& m) const { return member_[static_cast<std::size_t>(m.code(N_))] != 0; }
    const std::string& spec() const { return spec_; }
    // B_1(N) <= H <= B_0(N)
    bool is_sandwiched() const;

private:
    LevelSubgroup(int N, std::vector<Mat2> elements, std::string spec);
    int N_ = 1;
    std::vector<Mat2> elements_;
    std::vector<char> member_;
    std::string spec_;
};

long long gl2_order(int N);
std::vector<Mat2> gl2_elements(int N);

// [<l I> : <l I> intersected with +-H]
int m_index(int ell, const LevelSubgroup& H);

// Thrown when a build would need a torsion field beyond the supported size.
class BuildGuard : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BuildOptions {
    u64 p = 0;
    int ell = 2;
    LevelSubgroup level = LevelSubgroup::full(1);
    // When set, orbit representatives are picked by a seeded shuffle
    // instead of the canonical minimum.
    std::optional<u64> shuffle_seed;
};

struct LevelVertex {
    int curve = 0;  // index into the supersingular model list
    Mat2 level_matrix;
    int aut_size = 0;
};

struct BuiltGraph {
    AbstractIsogenyGraph graph;
    std::vector<LevelVertex> vertices;
    int level = 1;
    int ell = 2;
    int working_degree = 2;  // torsion field is F_{p^working_degree}
    int m = 1;               // m_index
    bool sandwiched = false;
    nlohmann::ordered_json provenance;

    // Vertex of (E, [d phi]).
    Index diamond(Index v, int d) const;

    // class_of[curve][code of level matrix] -> vertex
    std::vector<std::vector<Index>> class_of;
};

// Smallest even extension degree 2m of F_p over which E[N] and E[l] are
// rational for supersingular models with Frobenius -p over F_{p^2}.
int torsion_field_degree(u64 p, int N, int ell);

BuiltGraph build_supersingular_graph(const BuildOptions& opts);

}  // namespace isozeta
