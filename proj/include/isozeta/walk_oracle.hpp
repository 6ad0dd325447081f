#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "isozeta/core_graph.hpp"

namespace isozeta {

// Thrown when an enumeration would exceed its node budget.
class ResourceGuard : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultWalkBudget = 1e8;

struct PrimeClass {
    std::vector<Index> rotation;  // lexicographically least rotation
    int length() const { return static_cast<int>(rotation.size()); }
};

// Closed walks y_1..y_r with s(y_{i+1}) = t(y_i), y_{i+1} != J y_i and
// y_1 != J y_r.
long long count_closed_nb_tailless(const AbstractIsogenyGraph& g, int r, double budget = kDefaultWalkBudget);

struct PrimeTable {
    std::map<int, std::vector<PrimeClass>> primes;  // by length
    std::vector<long long> c;                       // c[r] for 1 <= r <= max_len; c[0] unused

    long long count(int r) const { return c.at(static_cast<std::size_t>(r)); }
};

PrimeTable enumerate_primes(const AbstractIsogenyGraph& g, int max_len, double budget = kDefaultWalkBudget);

// N_r = sum_{d | r} d c_d.
long long nr_from_primes(const std::vector<long long>& c, int r);

// Upper estimate of DFS nodes for walks up to length r.
double estimated_walk_nodes(const AbstractIsogenyGraph& g, int r);

}  // namespace isozeta
