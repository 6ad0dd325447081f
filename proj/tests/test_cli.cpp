#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "isozeta/cli_commands.hpp"

using namespace isozeta;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "isozeta");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ISOZETA_TEST_DATA) + "/" + name; }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("isozeta_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line) return true;
    return false;
}

}  // namespace

TEST_CASE("build then zeta: G(13,2)") {
    TempDir tmp;
    const auto g = tmp.file("g13.aig");
    auto b = run({"build", "13", "2", "--out", g});
    REQUIRE(b.code == kExitPass);
    CHECK(has_line(b.out, "vertices\t1"));
    CHECK(has_line(b.out, "edges\t3"));
    CHECK(has_line(b.out, "j_fixed_edges\t1"));
    CHECK(fs::exists(sidecar_path(g)));
    auto z = run({"zeta", g, "--series", "3"});
    CHECK(z.code == kExitPass);
    CHECK(has_line(z.out, "1\t2"));
    CHECK(has_line(z.out, "2\t6"));
    CHECK(has_line(z.out, "3\t8"));
    auto c = run({"counts", g, "--max-len", "4"});
    CHECK(c.code == kExitPass);
    CHECK(c.out.find("MISMATCH") == std::string::npos);
    auto pr = run({"primes", g, "--max-len", "3"});
    CHECK(pr.code == kExitPass);
}

TEST_CASE("build without --out prints the graph") {
    auto b = run({"build", "11", "3"});
    CHECK(b.code == kExitPass);
    CHECK(b.out.rfind("AIG v1\nvertices 2\nedges 8\n", 0) == 0);
}

TEST_CASE("verify-product") {
    TempDir tmp;
    const auto g = tmp.file("g11_3.aig");
    REQUIRE(run({"build", "11", "3", "--out", g}).code == kExitPass);
    auto v = run({"verify-product", g, data("x0_1_ell3.lpoly"), data("x0_11_ell3.lpoly")});
    CHECK(v.code == kExitPass);
    CHECK(has_line(v.out, "PASS"));
    // swapping the curves breaks the identity
    auto w = run({"verify-product", g, data("x0_11_ell3.lpoly"), data("x0_1_ell3.lpoly")});
    CHECK(w.code == kExitMismatch);
    CHECK(has_line(w.out, "FAIL"));
    // wrong l in the lpoly files
    CHECK(run({"verify-product", g, data("x0_1_ell2.lpoly"), data("x0_11_ell2.lpoly")}).code == kExitInputError);
}

TEST_CASE("verify-product refuses a level outside the Borel sandwich") {
    TempDir tmp;
    const auto g = tmp.file("full5.aig");
    REQUIRE(run({"build", "13", "3", "full:5", "--out", g}).code == kExitPass);
    CHECK(run({"verify-product", g, data("x0_1_ell3.lpoly"), data("x0_1_ell3.lpoly")}).code == kExitInputError);
}

TEST_CASE("chi and pointcount") {
    auto c = run({"chi", "37", "2", "3"});
    CHECK(c.code == kExitPass);
    CHECK(has_line(c.out, "agree"));
    auto p = run({"pointcount", "11", "2", "3"});
    CHECK(p.code == kExitPass);
    CHECK(has_line(p.out, "result\t5"));
    CHECK(p.out.find("MISMATCH") == std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == kExitInputError);
    CHECK(run({"frobnicate"}).code == kExitInputError);
    CHECK(run({"build", "4", "2"}).code == kExitInputError);
    CHECK(run({"build", "13", "11"}).code == kExitInputError);
    CHECK(run({"build", "13", "2", "borel0:17"}).code == kExitResourceGuard);
    CHECK(run({"build", "13", "2", "cartan:3"}).code == kExitInputError);
    CHECK(run({"zeta", "/nonexistent/graph.aig"}).code == kExitInputError);
    CHECK(run({"pointcount", "12", "2", "1"}).code == kExitInputError);
    CHECK(run({"selftest"}).code == kExitPass);
    CHECK(run({"--help"}).code == kExitPass);
}

TEST_CASE("malformed graph files are input errors") {
    TempDir tmp;
    const auto g = tmp.file("bad.aig");
    std::ofstream(g) << "AIG v1\nvertices 1\nedges 1\n0 0 0 0\nL 0\n";  // fine
    CHECK(run({"zeta", g}).code == kExitPass);
    std::ofstream(g) << "AIG v1\nvertices 2\nedges 1\n0 0 1 0\nL 0 1\n";  // t(Jy) != L s(y)
    auto r = run({"zeta", g});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("line") != std::string::npos);
}

TEST_CASE("lpoly parsing") {
    std::istringstream ok("lpoly ell=3 label=X0(11)\n1 1 3\n");
    auto lp = read_lpoly(ok);
    CHECK(lp.ell == 3);
    CHECK(lp.label == "X0(11)");
    CHECK(lp.numerator == IntPoly{1, 1, 3});
    auto expect_bad = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_lpoly(in), std::invalid_argument);
    };
    expect_bad("");
    expect_bad("poly ell=3\n1\n");
    expect_bad("lpoly label=x\n1\n");
    expect_bad("lpoly ell=3\n2 1 3\n");
    expect_bad("lpoly ell=3\n1 1\n");
    expect_bad("lpoly ell=3\n1 x 3\n");
    expect_bad("lpoly ell=3 colour=red\n1\n");
}
