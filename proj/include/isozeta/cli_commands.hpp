#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isozeta/polynomial.hpp"
#include "isozeta/zeta.hpp"

namespace isozeta {

enum ExitCode : int { kExitPass = 0, kExitMismatch = 1, kExitInputError = 2, kExitResourceGuard = 3 };

// Numerator P(u) of Z(C, u) = P(u) / ((1-u)(1-l u)).
struct LPoly {
    int ell = 0;
    std::string label;
    IntPoly numerator;

    FactoredRationalFunction zeta() const;
};

// Header "lpoly ell=<l> label=<text>", then one line of integer
// coefficients, constant term first.
LPoly read_lpoly(std::istream& in);
LPoly read_lpoly_file(const std::string& path);

std::string sidecar_path(const std::string& graph_path);

int cmd_build(std::ostream& out, unsigned long long p, int ell, const std::string& level_spec, const std::optional<std::string>& out_path,
              std::optional<unsigned long long> seed);
int cmd_zeta(std::ostream& out, const std::string& graph_path, int series);
int cmd_counts(std::ostream& out, const std::string& graph_path, int max_len);
int cmd_primes(std::ostream& out, const std::string& graph_path, int max_len);
int cmd_chi(std::ostream& out, long long p, long long ell, long long N);
int cmd_pointcount(std::ostream& out, long long p, long long ell, int r);
int cmd_verify_product(std::ostream& out, const std::string& graph_path, const std::string& lpoly_h, const std::string& lpoly_hp);
int cmd_selftest(std::ostream& out);

// Parses argv and dispatches; maps exceptions to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isozeta
