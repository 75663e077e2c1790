#include "doctest.h"

#include <fstream>
#include <sstream>

#include "ffw/fixtures.hpp"
#include "ffw/suites.hpp"

using namespace ffw;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture(const std::string& name) { return std::string(FFW_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("shipped fixtures load, validate and round-trip byte for byte") {
    for (const char* name : {"trivial.json", "z2.json", "z4.json", "ising.json", "fibonacci.json"}) {
        std::string text = slurp(fixture(name));
        REQUIRE(!text.empty());
        Bundle b = load_bundle(fixture(name));
        CHECK_MESSAGE(dump_bundle(b) == text, name);
        CHECK(dump_bundle(parse_bundle(dump_bundle(b))) == dump_bundle(b));
    }
}

TEST_CASE("shipped fixtures match the generators") {
    CHECK(dump_bundle(lattice_bundle(1)) == slurp(fixture("z2.json")));
    CHECK(dump_bundle(trivial_bundle()) == slurp(fixture("trivial.json")));
}

TEST_CASE("emitted Z/2 bundle round-trips") {
    Bundle b = lattice_bundle(1);
    Bundle c = parse_bundle(dump_bundle(b));
    CHECK(c.order() == 8);
    CHECK(dump_bundle(c) == dump_bundle(b));
    CHECK(c.chiral.F.blocks().size() == b.chiral.F.blocks().size());
}

TEST_CASE("phase divisibility is enforced on load") {
    auto j = bundle_to_json(ising_bundle());
    j["order"] = 4;
    try {
        bundle_from_json(j);
        FAIL("expected rejection");
    } catch (const BundleError& e) {
        // either a scalar or the weight phase is out of range for N = 4
        CHECK(!e.where().empty());
    }
    auto z = bundle_to_json(lattice_bundle(1));
    z["order"] = 4;
    z["chiral"]["F"] = nlohmann::json::array();
    z["chiral"]["sigma12"] = nlohmann::json::array();
    z["chiral"]["sigma23"] = nlohmann::json::array();
    try {
        bundle_from_json(z);
        FAIL("expected rejection");
    } catch (const BundleError& e) {
        CHECK(e.where() == "fusion.weights[1]");
    }
}

TEST_CASE("parse diagnostics carry a location") {
    try {
        parse_bundle("{\n  \"format\": \"ffw-bundle\",\n  \"order\": 8,\n  oops\n}");
        FAIL("expected rejection");
    } catch (const BundleError& e) {
        CHECK(e.where().find("line 4") != std::string::npos);
    }
    auto j = bundle_to_json(lattice_bundle(1));
    j["chiral"]["F"][0]["value"] = nlohmann::json::array({nlohmann::json::array({9, "1", "1"})});
    try {
        bundle_from_json(j);
        FAIL("expected rejection");
    } catch (const BundleError& e) {
        CHECK(e.where() == "chiral.F[0].value[0]");
    }
    j = bundle_to_json(lattice_bundle(1));
    j["fusion"]["fusion"][0][0] = "b";
    CHECK_THROWS_AS(bundle_from_json(j), BundleError);
}

TEST_CASE("every mutation fixture fails its targeted suite") {
    for (const auto& m : mutation_fixtures()) {
        auto rs = run_suites(m.bundle, {m.suite});
        REQUIRE(!rs.empty());
        CHECK(rs.back().suite == m.suite);
        CHECK_MESSAGE(!rs.back().pass(), m.name);
        Bundle again = parse_bundle(dump_bundle(m.bundle));
        CHECK(dump_bundle(again) == dump_bundle(m.bundle));
    }
    std::set<std::string> covered;
    for (const auto& m : mutation_fixtures()) covered.insert(m.suite);
    CHECK(covered.size() == suite_names().size());
}

TEST_CASE("suites run in dependency order and reject unknown names") {
    auto rs = run_suites(lattice_bundle(1), {"fusing"});
    std::vector<std::string> order;
    for (const auto& r : rs) order.push_back(r.suite);
    CHECK(order == std::vector<std::string>{"validate", "pairing", "nondegeneracy", "fusing"});
    CHECK_THROWS_AS(run_suites(lattice_bundle(1), {"fusing", "nope"}), UnknownSuite);
    for (const auto& r : rs) CHECK(!r.identity.empty());
}

TEST_CASE("reports are reproducible and both renderings agree") {
    Bundle b = load_bundle(fixture("ising.json"));
    auto r1 = run_suites(b, suite_names());
    auto r2 = run_suites(b, suite_names());
    CHECK(render_json(r1) == render_json(r2));
    auto back = parse_json_reports(render_json(r1));
    REQUIRE(back.size() == r1.size());
    for (size_t i = 0; i < back.size(); ++i) CHECK(back[i].pass() == r1[i].pass());
    CHECK(render_text(back) == render_text(r1));
}

TEST_CASE("ffa section round-trips") {
    Bundle b = lattice_bundle(2);
    FFAStructure s = construct(b.chiral);
    b.ffa = ffa_to_json(s);
    Bundle c = parse_bundle(dump_bundle(b));
    FFAStructure t = bundle_structure(c);
    CHECK(t.blocks.size() == s.blocks.size());
    for (const auto& [k, blk] : s.blocks) CHECK(t.blocks.at(k).right == blk.right);
    CHECK(verify_associativity_structure(t).pass());
}
