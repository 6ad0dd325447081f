#include "isozeta/cli_commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "isozeta/core_graph.hpp"
#include "isozeta/level_builder.hpp"
#include "isozeta/quadratic.hpp"
#include "isozeta/walk_oracle.hpp"

namespace isozeta {

namespace {

class InputError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

AbstractIsogenyGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    return read_graph(in);
}

std::optional<nlohmann::json> load_sidecar(const std::string& graph_path) {
    std::ifstream in(sidecar_path(graph_path));
    if (!in) return std::nullopt;
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("unreadable provenance sidecar: " + std::string(e.what()));
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << content;
}

std::string join(const std::vector<BigInt>& v, const char* sep) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
    return s.str();
}

long long j_fixed_edges(const AbstractIsogenyGraph& g) {
    long long n = 0;
    for (Index y = 0; y < g.num_edges(); ++y) n += g.j_map[static_cast<std::size_t>(y)] == y;
    return n;
}

std::string cycle_summary(const std::vector<Index>& f) {
    auto cc = associated_permutation(f);
    std::ostringstream s;
    bool first = true;
    for (auto [k, c] : cc.counts) {
        s << (first ? "" : " ") << c << "x" << k;
        first = false;
    }
    if (first) s << "none";
    return s.str();
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

AbstractIsogenyGraph build_plain(long long p, long long ell) {
    BuildOptions o;
    o.p = static_cast<u64>(p);
    o.ell = static_cast<int>(ell);
    return build_supersingular_graph(o).graph;
}

}  // namespace

FactoredRationalFunction LPoly::zeta() const {
    return FactoredRationalFunction::power(numerator, 1) * FactoredRationalFunction::power(IntPoly{1, -1}, -1) *
           FactoredRationalFunction::power(IntPoly{1, -ell}, -1);
}

LPoly read_lpoly(std::istream& in) {
    LPoly lp;
    std::string header;
    if (!std::getline(in, header)) throw InputError("lpoly: missing header line");
    std::istringstream hs(header);
    std::string tag;
    hs >> tag;
    if (tag != "lpoly") throw InputError("lpoly: header must start with 'lpoly'");
    std::string field;
    bool have_ell = false;
    while (hs >> field) {
        if (field.rfind("ell=", 0) == 0) {
            try {
                lp.ell = std::stoi(field.substr(4));
            } catch (const std::exception&) {
                throw InputError("lpoly: bad ell field '" + field + "'");
            }
            have_ell = true;
        } else if (field.rfind("label=", 0) == 0) {
            lp.label = field.substr(6);
        } else {
            throw InputError("lpoly: unknown header field '" + field + "'");
        }
    }
    if (!have_ell || lp.ell < 2) throw InputError("lpoly: header needs ell=<prime>");
    std::string line;
    if (!std::getline(in, line)) throw InputError("lpoly: missing coefficient line");
    std::istringstream cs(line);
    std::vector<BigInt> coeffs;
    std::string tok;
    while (cs >> tok) {
        try {
            coeffs.emplace_back(tok);
        } catch (const std::exception&) {
            throw InputError("lpoly: bad coefficient '" + tok + "'");
        }
    }
    lp.numerator = IntPoly(coeffs);
    if (lp.numerator.coeff(0) != 1) throw InputError("lpoly: P(0) must be 1");
    if (lp.numerator.degree() % 2 != 0) throw InputError("lpoly: degree must be even (2g)");
    return lp;
}

LPoly read_lpoly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open lpoly file '" + path + "'");
    return read_lpoly(in);
}

std::string sidecar_path(const std::string& graph_path) { return graph_path + ".prov.json"; }

int cmd_build(std::ostream& out, unsigned long long p, int ell, const std::string& level_spec, const std::optional<std::string>& out_path,
              std::optional<unsigned long long> seed) {
    BuildOptions o;
    o.p = p;
    o.ell = ell;
    o.level = LevelSubgroup::parse(level_spec);
    o.shuffle_seed = seed;
    BuiltGraph b = build_supersingular_graph(o);
    std::ostringstream graph_text;
    write_graph(graph_text, b.graph);
    if (!out_path) {
        out << graph_text.str();
        return kExitPass;
    }
    write_file(*out_path, graph_text.str());
    write_file(sidecar_path(*out_path), b.provenance.dump(2) + "\n");
    out << "graph\t" << *out_path << "\n";
    out << "sidecar\t" << sidecar_path(*out_path) << "\n";
    out << "vertices\t" << b.graph.num_vertices << "\n";
    out << "edges\t" << b.graph.num_edges() << "\n";
    out << "torsion_field\tF_" << p << "^" << b.working_degree << "\n";
    out << "m_index\t" << b.m << "\n";
    out << "borel_sandwich\t" << (b.sandwiched ? "yes" : "no") << "\n";
    out << "j_fixed_edges\t" << j_fixed_edges(b.graph) << "\n";
    out << "L_cycles\t" << cycle_summary(b.graph.l_map) << "\n";
    out << "J_cycles\t" << cycle_summary(b.graph.j_map) << "\n";
    return kExitPass;
}

int cmd_zeta(std::ostream& out, const std::string& graph_path, int series) {
    AbstractIsogenyGraph g = load_graph(graph_path);
    FactoredRationalFunction z = ihara_zeta(g);
    out << "zeta\t" << z.to_string() << "\n";
    out << "numerator\t" << z.numerator().to_string() << "\n";
    out << "denominator\t" << z.denominator().to_string() << "\n";
    out << "reduced\t" << z.reduced_string() << "\n";
    if (series > 0) {
        auto n = series_counts(z, series);
        out << "r\tN_r\n";
        for (int r = 1; r <= series; ++r) out << r << "\t" << n[static_cast<std::size_t>(r - 1)] << "\n";
    }
    return kExitPass;
}

int cmd_counts(std::ostream& out, const std::string& graph_path, int max_len) {
    if (max_len < 1) throw InputError("--max-len must be positive");
    AbstractIsogenyGraph g = load_graph(graph_path);
    auto det_series = series_counts(ihara_zeta(g), max_len);
    auto trace_series = edge_zeta_series(g, max_len);
    out << "r\tdeterminant\ttrace\twalks\n";
    bool agree = true;
    for (int r = 1; r <= max_len; ++r) {
        const auto i = static_cast<std::size_t>(r - 1);
        long long walks = count_closed_nb_tailless(g, r);
        bool row_ok = det_series[i] == trace_series[i] && trace_series[i] == walks;
        agree = agree && row_ok;
        out << r << "\t" << det_series[i] << "\t" << trace_series[i] << "\t" << walks << (row_ok ? "" : "\tMISMATCH") << "\n";
    }
    return agree ? kExitPass : kExitMismatch;
}

int cmd_primes(std::ostream& out, const std::string& graph_path, int max_len) {
    if (max_len < 1) throw InputError("--max-len must be positive");
    AbstractIsogenyGraph g = load_graph(graph_path);
    PrimeTable t = enumerate_primes(g, max_len);
    auto det_series = series_counts(ihara_zeta(g), max_len);
    out << "r\tc_r\tN_r\n";
    bool agree = true;
    for (int r = 1; r <= max_len; ++r) {
        long long nr = nr_from_primes(t.c, r);
        bool ok = det_series[static_cast<std::size_t>(r - 1)] == nr;
        agree = agree && ok;
        out << r << "\t" << t.count(r) << "\t" << nr << (ok ? "" : "\tMISMATCH") << "\n";
    }
    for (const auto& [len, classes] : t.primes) {
        for (const auto& pc : classes) {
            out << "prime\t" << len << "\t";
            for (std::size_t i = 0; i < pc.rotation.size(); ++i) out << (i ? " " : "") << pc.rotation[i];
            out << "\n";
        }
    }
    return agree ? kExitPass : kExitMismatch;
}

int cmd_chi(std::ostream& out, long long p, long long ell, long long N) {
    EulerCharReport r = euler_chars_borel(p, ell, N);
    auto opt = [](const std::optional<long long>& v) { return v ? std::to_string(*v) : std::string("-"); };
    out << "p\t" << p << "\nell\t" << ell << "\nN\t" << N << "\n";
    out << "psi\t" << r.psi << "\neps2\t" << r.eps2 << "\neps3\t" << r.eps3 << "\ngamma\t" << r.gamma << "\n";
    out << "delta4\t" << r.delta4 << "\ndelta3\t" << r.delta3 << "\nnu_ell\t" << opt(r.nu_ell) << "\nnu_4ell\t" << opt(r.nu_4ell) << "\n";
    out << "vertices\t" << r.vertex_count << "\nself_dual\t" << r.self_dual << "\n";
    out << "formula\tchi+\t" << r.chi_plus << "\tchi-\t" << r.chi_minus << "\n";
    BuildOptions o;
    o.p = static_cast<u64>(p);
    o.ell = static_cast<int>(ell);
    o.level = N == 1 ? LevelSubgroup::full(1) : LevelSubgroup::borel0(static_cast<int>(N));
    try {
        BuiltGraph b = build_supersingular_graph(o);
        auto pair = orientable_graphs(b.graph);
        long long gp = euler_characteristic(pair.plus), gm = euler_characteristic(pair.minus);
        bool ok = gp == r.chi_plus && gm == r.chi_minus;
        out << "graph\tchi+\t" << gp << "\tchi-\t" << gm << "\n";
        out << (ok ? "agree" : "MISMATCH") << "\n";
        return ok ? kExitPass : kExitMismatch;
    } catch (const BuildGuard& e) {
        out << "graph\tskipped\t" << e.what() << "\n";
        return kExitPass;
    }
}

int cmd_pointcount(std::ostream& out, long long p, long long ell, int r) {
    if (r < 1) throw InputError("r must be positive");
    if (p <= 3 || !is_prime(static_cast<u64>(p))) throw InputError("p must be a prime greater than 3");
    AbstractIsogenyGraph g = build_plain(p, ell);
    auto pair = orientable_graphs(g);
    const long long chi_plus = euler_characteristic(pair.plus), chi_minus = euler_characteristic(pair.minus);
    const BigInt nr_big = series_counts(ihara_zeta(g), r)[static_cast<std::size_t>(r - 1)];
    const auto nr = static_cast<long long>(nr_big);
    out << "p\t" << p << "\nell\t" << ell << "\nr\t" << r << "\n";
    out << "chi+\t" << chi_plus << "\nchi-\t" << chi_minus << "\n";
    out << "graph\tN_r\t" << nr;
    if (estimated_walk_nodes(g, r) <= kDefaultWalkBudget) {
        long long walks = count_closed_nb_tailless(g, r);
        out << "\twalks\t" << walks;
        if (walks != nr) {
            out << "\nMISMATCH between determinant and walk enumeration\n";
            return kExitMismatch;
        }
    }
    const long long by_graph = point_count_X0(ell, r, nr, chi_plus, chi_minus);
    out << "\tcount\t" << by_graph << "\n";

    const long long q = ipow(ell, r);
    if (q >= p) {
        out << "class\tunavailable\tl^r = " << q << " >= p: cycles carry weights with no closed formula\n";
        out << "result\t" << by_graph << "\n";
        return kExitPass;
    }
    for (int n = 1; n <= r; ++n) {
        if (r % n != 0) continue;
        out << "I_" << n << "\t";
        auto orders = cycle_set_I(n, p, ell);
        if (orders.empty()) out << "{}";
        for (std::size_t i = 0; i < orders.size(); ++i)
            out << (i ? " " : "") << orders[i].discriminant << "(h=" << class_number(orders[i].discriminant) << ")";
        out << "\n";
    }
    const long long nr_class = cycle_count_from_class_numbers(r, p, ell);
    const long long by_class = point_count_X0(ell, r, nr_class, chi_plus, chi_minus);
    out << "class\tN_r\t" << nr_class << "\tcount\t" << by_class << "\n";
    if (by_class != by_graph) {
        out << "MISMATCH\n";
        return kExitMismatch;
    }
    out << "result\t" << by_graph << "\n";
    return kExitPass;
}

int cmd_verify_product(std::ostream& out, const std::string& graph_path, const std::string& lpoly_h, const std::string& lpoly_hp) {
    AbstractIsogenyGraph g = load_graph(graph_path);
    LPoly h = read_lpoly_file(lpoly_h);
    LPoly hp = read_lpoly_file(lpoly_hp);
    ValidationReport rep = validate(g);
    if (!rep.regular || rep.degree < 2) throw InputError("graph is not regular of degree l+1");
    const int ell = rep.degree - 1;
    if (auto side = load_sidecar(graph_path)) {
        if (!side->value("level", nlohmann::json::object()).value("borel_sandwich", false))
            throw InputError("sidecar does not record B1(N) <= H <= B0(N); the product formula does not apply");
        if (side->value("ell", ell) != ell) throw InputError("sidecar l disagrees with the graph degree");
    }
    if (h.ell != ell || hp.ell != ell)
        throw InputError("l mismatch: graph has l = " + std::to_string(ell) + ", lpoly files have " + std::to_string(h.ell) + " and " +
                         std::to_string(hp.ell));
    FactoredRationalFunction lhs = hp.zeta() * h.zeta().pow(-2) * ihara_zeta(g);
    FactoredRationalFunction predicted = zeta_cycle_factor(g);
    out << "product\t" << lhs.to_string() << "\n";
    out << "predicted\t" << predicted.to_string() << "\n";
    if (lhs.equals(predicted)) {
        out << "PASS\n";
        return kExitPass;
    }
    out << "leftover\t" << (lhs / predicted).to_string() << "\n";
    out << "FAIL\n";
    return kExitMismatch;
}

int cmd_selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << "\n";
        failures += ok ? 0 : 1;
    };
    {
        AbstractIsogenyGraph g = build_plain(13, 2);
        auto s = series_counts(ihara_zeta(g), 3);
        check("G(13,2) series 2 6 8", join(s, " ") == "2 6 8");
        check("G(13,2) one J-fixed edge", j_fixed_edges(g) == 1);
    }
    {
        AbstractIsogenyGraph g = build_plain(11, 3);
        check("G(11,3) adjacency", adjacency_matrix(g) == std::vector<std::vector<long long>>{{1, 3}, {2, 2}});
        auto e = euler_chars_borel(11, 3, 1);
        auto pair = orientable_graphs(g);
        check("G(11,3) Euler characteristics", e.chi_plus == euler_characteristic(pair.plus) && e.chi_minus == euler_characteristic(pair.minus));
    }
    check("class numbers h(-23) = h(-31) = 3", class_number(-23) == 3 && class_number(-31) == 3);
    return failures == 0 ? kExitPass : kExitMismatch;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"isogeny graphs and their Ihara zeta functions", "isozeta"};
    app.require_subcommand(1);
    int status = kExitPass;

    unsigned long long p = 0, seed = 0;
    int ell = 0, series = 0, max_len = 6, r = 1;
    long long n_level = 1;
    std::string spec = "full", graph, lp_h, lp_hp, out_path;

    auto* build = app.add_subcommand("build", "build G(p, l, H) and write the graph and its provenance sidecar");
    build->add_option("p", p, "characteristic")->required();
    build->add_option("ell", ell, "isogeny degree")->required();
    build->add_option("level", spec, "level subgroup: full, full:N, borel0:N, borel1:N, gens:N:a,b,c,d;...");
    build->add_option("--out", out_path, "graph file (sidecar goes next to it)");
    build->add_option("--seed", seed, "shuffle orbit representatives with this seed");

    auto* zeta = app.add_subcommand("zeta", "factored zeta function of a graph file");
    zeta->add_option("graph", graph)->required();
    zeta->add_option("--series", series, "print N_1..N_R");

    auto* counts = app.add_subcommand("counts", "N_r by determinant, edge-operator trace and walk enumeration");
    counts->add_option("graph", graph)->required();
    counts->add_option("--max-len", max_len);

    auto* primes = app.add_subcommand("primes", "prime cycles up to a length");
    primes->add_option("graph", graph)->required();
    primes->add_option("--max-len", max_len);

    auto* chi = app.add_subcommand("chi", "Euler characteristics for B0(N) level structure");
    chi->add_option("p", p)->required();
    chi->add_option("ell", ell)->required();
    chi->add_option("N", n_level)->required();

    auto* pointcount = app.add_subcommand("pointcount", "#X0(p)(F_{l^r}) by the graph and class-number routes");
    pointcount->add_option("p", p)->required();
    pointcount->add_option("ell", ell)->required();
    pointcount->add_option("r", r)->required();

    auto* verify = app.add_subcommand("verify-product", "check Z(X_Hp) Z(X_H)^-2 zeta_G against the cycle factor");
    verify->add_option("graph", graph)->required();
    verify->add_option("lpoly_h", lp_h)->required();
    verify->add_option("lpoly_hp", lp_hp)->required();

    auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (*build) {
            std::optional<std::string> dest;
            if (!out_path.empty()) dest = out_path;
            std::optional<unsigned long long> s;
            if (build->count("--seed")) s = seed;
            status = cmd_build(out, p, ell, spec, dest, s);
        } else if (*zeta) {
            status = cmd_zeta(out, graph, series);
        } else if (*counts) {
            status = cmd_counts(out, graph, max_len);
        } else if (*primes) {
            status = cmd_primes(out, graph, max_len);
        } else if (*chi) {
            status = cmd_chi(out, static_cast<long long>(p), ell, n_level);
        } else if (*pointcount) {
            status = cmd_pointcount(out, static_cast<long long>(p), ell, r);
        } else if (*verify) {
            status = cmd_verify_product(out, graph, lp_h, lp_hp);
        } else if (*selftest) {
            status = cmd_selftest(out);
        }
    } catch (const ResourceGuard& e) {
        err << "resource guard: " << e.what() << "\n";
        return kExitResourceGuard;
    } catch (const BuildGuard& e) {
        err << "resource guard: " << e.what() << "\n";
        return kExitResourceGuard;
    } catch (const GraphParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const AxiomViolation& e) {
        err << "invalid graph: " << e.what() << "\n";
        return kExitInputError;
    } catch (const UnsupportedGraph& e) {
        err << "unsupported graph: " << e.what() << "\n";
        return kExitInputError;
    } catch (const UnsupportedRegime& e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return status;
}

}  // namespace isozeta
