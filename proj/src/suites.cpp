#include "ffw/suites.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ffw/pentagon.hpp"

namespace ffw {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"validate", "pentagon", "pairing",  "nondegeneracy",
                                                   "dual",     "fusing",   "s3",       "ffa-assoc",
                                                   "skew",     "single-valued", "invariance"};
    return names;
}

std::vector<std::string> suite_prerequisites(const std::string& suite) {
    static const std::map<std::string, std::vector<std::string>> pre = {
        {"validate", {}},
        {"pentagon", {"validate"}},
        {"pairing", {"validate"}},
        {"nondegeneracy", {"pairing"}},
        {"dual", {"nondegeneracy"}},
        {"fusing", {"nondegeneracy"}},
        {"s3", {"pairing"}},
        {"ffa-assoc", {"nondegeneracy"}},
        {"skew", {"nondegeneracy"}},
        {"single-valued", {"nondegeneracy"}},
        {"invariance", {"nondegeneracy"}},
    };
    auto it = pre.find(suite);
    if (it == pre.end()) throw UnknownSuite("unknown suite '" + suite + "'");
    return it->second;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        std::string item = s.substr(start, end - start);
        if (!item.empty()) out.push_back(item);
        start = end + 1;
    }
    return out;
}

FFAStructure bundle_structure(const Bundle& bundle) {
    if (!bundle.ffa.is_null()) return ffa_from_json(bundle.chiral, bundle.ffa);
    return construct(bundle.chiral);
}

namespace {

const std::map<std::string, std::string>& suite_identities() {
    static const std::map<std::string, std::string> m = {
        {"validate", "structural preconditions on fusion data and chiral data"},
        {"pentagon", "pentagon identity for the fusing matrices"},
        {"pairing", "pairing of intertwining-operator spaces: both fusing formulas, symmetry, canonical values"},
        {"nondegeneracy", "nondegeneracy of the pairing, prime symmetry of fusion rules, left-inverse formula"},
        {"dual", "dual bases of intertwining-operator spaces and F_{a'} = F_a"},
        {"fusing", "fusing matrices in dual bases contract to Kronecker deltas"},
        {"s3", "S3 relations and invariance of the modified form under sigma12, sigma23"},
        {"ffa-assoc", "associativity of the diagonal vertex tensor"},
        {"skew", "skew symmetry of the diagonal vertex tensor"},
        {"single-valued", "single-valuedness of the sector gradings"},
        {"invariance", "invariance of the bilinear form on the full field algebra"},
    };
    return m;
}

Report structure_suite(const Bundle& b, const std::string& suite) {
    FFAStructure s = bundle_structure(b);
    if (suite == "ffa-assoc") {
        Report r = verify_associativity_structure(s);
        if (b.ffa.is_null()) {
            // same verdict as the chiral fusing identity on constructed structures
            bool fusing = verify_prop_fusing(b.chiral).pass();
            r.add("agrees-with-fusing", {}, fusing == r.pass());
        }
        return r;
    }
    if (suite == "skew") return verify_skew_symmetry_structure(s);
    if (suite == "single-valued") return verify_single_valuedness(s);
    Report r = verify_invariance_structure(s);
    for (const auto& [sec, w] : bilinear_form_weights(s)) {
        bool ok = w == f_a(b.chiral, sec.first);
        r.add("form-weight", {b.fusion().labels[sec.first], b.fusion().labels[sec.second]}, ok, w.str());
    }
    return r;
}

Report dispatch(const Bundle& b, const std::string& suite) {
    const ChiralData& c = b.chiral;
    if (suite == "validate") return validate_bundle(b);
    if (suite == "pentagon") return verify_pentagon(c);
    if (suite == "pairing") return verify_pairing(c);
    if (suite == "nondegeneracy") return verify_nondegeneracy(c);
    if (suite == "dual") return verify_dual_basis(c);
    if (suite == "fusing") return verify_prop_fusing(c);
    if (suite == "s3") {
        Report r = verify_s3_relations(c);
        r.merge(verify_s3_invariance(c));
        return r;
    }
    return structure_suite(b, suite);
}

}  // namespace

Report run_suite(const Bundle& bundle, const std::string& suite) {
    suite_prerequisites(suite);  // rejects unknown names
    Report r;
    try {
        r = dispatch(bundle, suite);
    } catch (const ConstructionRefused& e) {
        r = Report{};
        r.add("construction", {}, false, e.what());
    } catch (const BundleError& e) {
        r = Report{};
        r.add("ffa-section", {}, false, e.what());
    } catch (const std::exception& e) {
        r = Report{};
        r.add("evaluation", {}, false, e.what());
    }
    r.suite = suite;
    if (r.identity.empty()) r.identity = suite_identities().at(suite);
    return r;
}

Report lattice_cross_validation(const Bundle& lattice, int order) {
    Report r;
    r.suite = "lattice-oracle";
    r.identity = "lattice four-point F entries agree with the pentagon solver up to gauge";
    const FusionData& f = lattice.fusion();
    SolveStats stats;
    auto sols = solve_pentagon(f, order, &stats);
    bool eq = gauge_equivalent(f, values_of(lattice.chiral.F), sols);
    r.add("gauge-equivalent", {std::to_string(sols.size()) + " solutions"}, eq);
    r.notes.push_back("pentagon system: " + std::to_string(stats.unknowns) + " unknowns, " +
                      std::to_string(stats.equations) + " equations");
    for (const auto& name : {"pentagon", "pairing", "nondegeneracy", "dual", "fusing", "s3"}) {
        Report s = run_suite(lattice, name);
        r.add("chiral-suite", {name}, s.pass(), std::to_string(s.failures()) + " failures");
    }
    return r;
}

std::vector<Report> run_suites(const Bundle& bundle, const std::vector<std::string>& selected) {
    std::set<std::string> want;
    std::vector<std::string> stack(selected.begin(), selected.end());
    while (!stack.empty()) {
        std::string s = stack.back();
        stack.pop_back();
        auto pre = suite_prerequisites(s);
        if (!want.insert(s).second) continue;
        stack.insert(stack.end(), pre.begin(), pre.end());
    }
    std::vector<Report> out;
    std::map<std::string, bool> verdict;
    for (const auto& name : suite_names()) {
        if (!want.count(name)) continue;
        std::vector<std::string> failed;
        for (const auto& p : suite_prerequisites(name))
            if (!verdict.at(p)) failed.push_back(p);
        Report r;
        if (failed.empty()) {
            r = run_suite(bundle, name);
        } else {
            r.suite = name;
            r.identity = suite_identities().at(name);
            for (const auto& p : failed) r.add("prerequisite", {p}, false, "prerequisite suite failed");
        }
        verdict[name] = r.pass();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ffw
