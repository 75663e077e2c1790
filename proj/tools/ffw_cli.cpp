#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ffw/fixtures.hpp"
#include "ffw/lattice.hpp"
#include "ffw/suites.hpp"

using namespace ffw;

namespace {

enum Exit { kPass = 0, kViolation = 1, kUsage = 2 };

void emit(const std::vector<Report>& reports, bool json, bool verbose) {
    std::cout << (json ? render_json(reports) : render_text(reports, verbose));
}

int verdict(const std::vector<Report>& reports) {
    for (const auto& r : reports)
        if (!r.pass()) return kViolation;
    return kPass;
}

Triple parse_triple(const FusionData& f, const std::string& s) {
    auto parts = split_list(s);
    if (parts.size() != 3) throw CLI::ValidationError("--triple", "expected three comma-separated labels");
    Triple t;
    for (int i = 0; i < 3; ++i) {
        try {
            t[i] = f.index(parts[i]);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("--triple", e.what());
        }
    }
    return t;
}

std::string space_name(const FusionData& f, const Triple& t) {
    return "(" + f.labels[t[0]] + "," + f.labels[t[1]] + "," + f.labels[t[2]] + ")";
}

int cmd_validate(const std::string& path, bool json, bool verbose) {
    Bundle b = load_bundle(path, false);
    std::vector<Report> rs{validate_bundle(b)};
    emit(rs, json, verbose);
    return verdict(rs);
}

int cmd_pairing(const std::string& path, const std::string& triple) {
    Bundle b = load_bundle(path);
    const ChiralData& c = b.chiral;
    const FusionData& f = c.fusion;
    std::vector<Triple> spaces;
    if (!triple.empty()) {
        Triple t = parse_triple(f, triple);
        if (!f.N(t)) throw CLI::ValidationError("--triple", "space " + space_name(f, t) + " is zero");
        spaces.push_back(t);
    } else {
        for (const auto& [t, m] : nonzero_spaces(f)) spaces.push_back(t);
    }
    for (const Triple& t : spaces) {
        std::cout << space_name(f, t) << " x " << space_name(f, primed(f, t)) << "\n";
        std::cout << "  first formula:  " << pairing_matrix(c, t).str() << "\n";
        std::cout << "  second formula: " << pairing_matrix_second(c, t).str() << "\n";
    }
    std::vector<Report> rs{verify_pairing(c)};
    std::cout << render_text(rs);
    return verdict(rs);
}

int cmd_dual(const std::string& path) {
    Bundle b = load_bundle(path);
    const ChiralData& c = b.chiral;
    const FusionData& f = c.fusion;
    for (const auto& [t, m] : nonzero_spaces(f)) {
        std::cout << "duals of " << space_name(f, t) << " in the basis of " << space_name(f, primed(f, t)) << ": ";
        try {
            std::cout << dual_basis(c, t).str() << "\n";
        } catch (const std::runtime_error& e) {
            std::cout << "none (" << e.what() << ")\n";
        }
    }
    std::vector<Report> rs{verify_dual_basis(c)};
    std::cout << render_text(rs);
    return verdict(rs);
}

int cmd_construct(const std::string& path, const std::string& out) {
    Bundle b = load_bundle(path);
    try {
        FFAStructure s = construct(b.chiral);
        b.ffa = ffa_to_json(s);
    } catch (const ConstructionRefused& e) {
        std::cerr << "construction refused: " << e.what() << "\n";
        return kViolation;
    }
    save_bundle(b, out);
    std::cout << "wrote " << out << "\n";
    return kPass;
}

int cmd_verify(const std::string& path, const std::string& suites, bool json, bool verbose) {
    auto names = split_list(suites);
    if (names.empty()) throw CLI::ValidationError("--suite", "no suite selected");
    for (const auto& n : names) suite_prerequisites(n);
    Bundle b = load_bundle(path, false);
    auto rs = run_suites(b, names);
    emit(rs, json, verbose);
    return verdict(rs);
}

struct LatticeOptions {
    int k = 1, T = 8, samples = 5;
    std::uint64_t seed = 7;
    double tol = 1e-6, jacobi_tol = 1e-5;
    std::string checks = "assoc,skew,jacobi,virasoro,residue,grading";
    std::string emit_bundle;
    bool json = false, verbose = false;
};

int cmd_lattice(const LatticeOptions& o) {
    static const std::vector<std::string> known = {"assoc", "skew", "jacobi", "virasoro", "residue", "grading", "oracle"};
    auto checks = split_list(o.checks);
    for (const auto& c : checks)
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw CLI::ValidationError("--check", "unknown check '" + c + "'");
    if (o.k < 1) throw CLI::ValidationError("--k", "must be positive");
    if (o.T < 1) throw CLI::ValidationError("--truncate", "must be positive");
    if (o.samples < 1) throw CLI::ValidationError("--samples", "must be positive");
    LatticeSpec spec{o.k, o.T};
    Bundle b = lattice_bundle(o.k, o.T);
    if (!o.emit_bundle.empty()) save_bundle(b, o.emit_bundle);
    LatticeModel m = lattice_model(spec, b.chiral);
    std::vector<Report> rs;
    for (const auto& c : checks) {
        if (c == "assoc") rs.push_back(check_associativity(m, region_samples(o.samples, o.seed), o.T, o.tol, o.seed));
        if (c == "skew") rs.push_back(check_skew_symmetry(m, o.samples, o.T, o.tol, o.seed));
        if (c == "jacobi") rs.push_back(check_jacobi_residues(m, JacobiConfig{}, o.T, o.jacobi_tol));
        if (c == "virasoro") rs.push_back(check_virasoro(spec, o.T));
        if (c == "residue") rs.push_back(check_residue_lemma(spec, o.T));
        if (c == "grading") rs.push_back(check_grading_axioms(m));
        if (c == "oracle") rs.push_back(lattice_cross_validation(b, lattice_order(o.k)));
    }
    emit(rs, o.json, o.verbose);
    return verdict(rs);
}

int cmd_report(const std::string& input, const std::string& format, bool verbose) {
    std::string text;
    if (input.empty() || input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(input);
        if (!in) throw CLI::ValidationError("input", "cannot open " + input);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    std::vector<Report> rs;
    try {
        rs = parse_json_reports(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError("input", std::string("not a machine-readable report: ") + e.what());
    }
    emit(rs, format == "json", verbose);
    return verdict(rs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for chiral fusing data and diagonal full field algebras"};
    app.set_version_flag("--version", FFW_VERSION);
    app.require_subcommand(1);
    bool json = false, verbose = false;
    app.add_flag("--json", json, "machine-readable report");
    app.add_flag("-v,--verbose", verbose, "list passing checks too");

    std::string bundle, triple, out, suites, input, format = "text";

    auto* validate = app.add_subcommand("validate", "structural validation of a bundle");
    validate->add_option("bundle", bundle)->required();

    auto* pairing = app.add_subcommand("pairing", "pairing matrices by both fusing formulas");
    pairing->add_option("bundle", bundle)->required();
    pairing->add_option("--triple", triple, "a1,a2,a3");

    auto* dual = app.add_subcommand("dual", "dual bases of every nonzero space");
    dual->add_option("bundle", bundle)->required();

    auto* construct_cmd = app.add_subcommand("construct", "assemble the full field algebra structure");
    construct_cmd->add_option("bundle", bundle)->required();
    construct_cmd->add_option("-o,--output", out)->required();

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("bundle", bundle)->required();
    std::string all;
    for (const auto& n : suite_names()) all += (all.empty() ? "" : ",") + n;
    verify->add_option("--suite", suites, "comma-separated suites: " + all)->required();
    verify->add_flag("--json", json);

    LatticeOptions lo;
    auto* lattice = app.add_subcommand("lattice", "rank-one lattice backend checks");
    lattice->add_option("--k", lo.k, "lattice Z alpha with <alpha,alpha> = 2k")->capture_default_str();
    lattice->add_option("--truncate", lo.T, "maximum retained conformal weight")->capture_default_str();
    lattice->add_option("--samples", lo.samples)->capture_default_str();
    lattice->add_option("--seed", lo.seed)->capture_default_str();
    lattice->add_option("--tol", lo.tol, "relative tolerance for associativity and skew symmetry")->capture_default_str();
    lattice->add_option("--jacobi-tol", lo.jacobi_tol)->capture_default_str();
    lattice->add_option("--check", lo.checks, "assoc,skew,jacobi,virasoro,residue,grading,oracle")->capture_default_str();
    lattice->add_option("--emit-bundle", lo.emit_bundle, "write the Z/2k chiral-data bundle");
    lattice->add_flag("--json", json);

    auto* report = app.add_subcommand("report", "re-render a machine-readable report");
    report->add_option("input", input, "report file (default stdin)");
    report->add_option("--format", format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        lo.json = json;
        lo.verbose = verbose;
        if (*validate) return cmd_validate(bundle, json, verbose);
        if (*pairing) return cmd_pairing(bundle, triple);
        if (*dual) return cmd_dual(bundle);
        if (*construct_cmd) return cmd_construct(bundle, out);
        if (*verify) return cmd_verify(bundle, suites, json, verbose);
        if (*lattice) return cmd_lattice(lo);
        if (*report) return cmd_report(input, format, verbose);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownSuite& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const BundleError& e) {
        std::cerr << "bundle error: " << e.what() << "\n";
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolation;
    }
    return kUsage;
}
