#include "doctest.h"

#include <cmath>

#include "ffw/fixtures.hpp"
#include "ffw/sigma.hpp"

using namespace ffw;

namespace {

const std::vector<Bundle>& fixtures() {
    static const std::vector<Bundle> all = {trivial_bundle(), lattice_bundle(1), lattice_bundle(2), ising_bundle(),
                                            fibonacci_bundle()};
    return all;
}

}  // namespace

TEST_CASE("pentagon holds on every fixture") {
    for (const auto& b : fixtures()) CHECK_MESSAGE(verify_pentagon(b.chiral).pass(), b.provenance.generator);
}

TEST_CASE("F_a values") {
    // Z/2 at k = 1 is the semion; Ising and Fibonacci give 1/d_a
    const auto& z2 = fixtures()[1].chiral;
    CHECK(f_a(z2, 0).is_one());
    CHECK(f_a(z2, 1) == Cyc(8, -1));
    const auto& is = fixtures()[3].chiral;
    CHECK(std::abs(f_a(is, 2).to_complex() - std::sqrt(0.5)) < 1e-14);
    CHECK(f_a(is, 1).is_one());
    CHECK(f_a(is, 2) * f_a(is, 2) == Cyc(32, mpq_class(1, 2)));
    const auto& fib = fixtures()[4].chiral;
    const double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(std::abs(f_a(fib, 1).to_complex() - 1 / phi) < 1e-14);
    Cyc t = f_a(fib, 1);
    CHECK(t * t + t == Cyc(20, 1));
}

TEST_CASE("F_{a'} = F_a") {
    for (const auto& b : fixtures()) {
        const auto& c = b.chiral;
        for (int a = 0; a < c.fusion.size(); ++a) CHECK(f_a(c, a) == f_a(c, c.dual(a)));
    }
}

TEST_CASE("both pairing formulas agree and the canonical values are fixed") {
    for (const auto& b : fixtures()) {
        Report r = verify_pairing(b.chiral);
        CHECK_MESSAGE(r.pass(), b.provenance.generator);
    }
    const auto& z2 = fixtures()[1].chiral;
    CHECK(pairing_matrix(z2, {1, 1, 0})(0, 0) == Cyc(8, -1));
    CHECK(pairing_matrix(z2, {0, 1, 1})(0, 0).is_one());
}

TEST_CASE("pairing matrices are invertible and the left-inverse formula holds") {
    for (const auto& b : fixtures()) {
        CHECK(verify_nondegeneracy(b.chiral).pass());
        CHECK(verify_formula1(b.chiral).pass());
    }
}

TEST_CASE("dual bases of the canonical elements") {
    for (const auto& b : fixtures()) {
        const auto& c = b.chiral;
        CHECK(verify_dual_basis(c).pass());
        int e = c.e();
        for (int a = 0; a < c.fusion.size(); ++a) {
            int ad = c.dual(a);
            CHECK(dual_basis(c, {a, ad, e})(c.canon({ad, a, e}), c.canon({a, ad, e})) == f_a(c, a).inverse());
            CHECK(dual_basis(c, {e, a, a})(c.canon({e, ad, ad}), c.canon({e, a, a})).is_one());
        }
    }
}

TEST_CASE("prop fusing delta identity") {
    for (const auto& b : fixtures()) CHECK_MESSAGE(verify_prop_fusing(b.chiral).pass(), b.provenance.generator);
}

TEST_CASE("sigma relations and invariance of the modified form") {
    for (const auto& b : fixtures()) {
        CHECK(verify_s3_relations(b.chiral).pass());
        Report r = verify_s3_invariance(b.chiral);
        CHECK_MESSAGE(r.pass(), b.provenance.generator);
    }
}

TEST_CASE("modified form takes the numeric path when sqrt F_a leaves the field") {
    const auto& is = fixtures()[3].chiral;
    CHECK_FALSE(sqrt_f(is, 2).has_value());
    FormMatrix m = modified_form(is, {2, 2, 0});
    CHECK_FALSE(m.exact);
    // sqrt(F_e) / (sqrt(F_s) sqrt(F_s)) * <Y, Y'> with <Y, Y'> = F_s
    CHECK(std::abs(m.at(0, 0) - std::complex<double>(1, 0)) < 1e-12);
    Report r = verify_s3_invariance(is);
    bool numeric = false;
    for (const auto& c : r.checks) numeric = numeric || c.path == "numeric";
    CHECK(numeric);
    CHECK(sqrt_f(fixtures()[1].chiral, 1).has_value());
}

TEST_CASE("derived sigma passes the battery and is sign-sensitive") {
    for (const auto& b : fixtures()) CHECK(sigma_battery(b.chiral));
    ChiralData c = fixtures()[2].chiral;
    Triple t{1, 1, 2};
    c.sigma.s12[t] = c.sigma.s12[t] * Cyc(c.order, -1);
    CHECK_FALSE(verify_s3_relations(c).pass());
}

TEST_CASE("f_a fails loudly on a missing canonical marker") {
    ChiralData c = fixtures()[1].chiral;
    c.canonical.erase({1, 1, 0});
    CHECK_THROWS(f_a(c, 1));
}
