#include "doctest.h"

#include <cmath>

#include "ffw/fixtures.hpp"
#include "ffw/pentagon.hpp"

using namespace ffw;

TEST_CASE("Z/2 solver output agrees with the lattice oracle up to gauge") {
    Bundle z2 = lattice_bundle(1);
    SolveStats st;
    auto sols = solve_pentagon(z2.fusion(), 8, &st);
    CHECK(!sols.empty());
    CHECK(gauge_equivalent(z2.fusion(), values_of(z2.chiral.F), sols));
    // semion and boson classes; the oracle lands in exactly one
    int hits = 0;
    for (const auto& sol : sols) hits += gauge_equivalent(z2.fusion(), values_of(z2.chiral.F), {sol});
    CHECK(sols.size() == 2);
    CHECK(hits == 1);
}

TEST_CASE("Z/4 solver output agrees with the lattice oracle up to gauge") {
    Bundle z4 = lattice_bundle(2);
    auto sols = solve_pentagon(z4.fusion(), 16);
    CHECK(gauge_equivalent(z4.fusion(), values_of(z4.chiral.F), sols));
}

TEST_CASE("Ising at N = 16: Hadamard-type sigma block") {
    auto sols = solve_pentagon(ising_fusion(), 16);
    REQUIRE(!sols.empty());
    const int s = 2;
    for (const auto& sol : sols) {
        ChiralData c;
        c.order = 16;
        c.fusion = ising_fusion();
        c.F = FTensor(16, &c.fusion);
        fill_tensor(c.F, sol.values);
        CHECK(verify_pentagon(c).pass());
        // F(s,s,s,s; x, y) for x, y in {1, psi}: entries of modulus 1/sqrt 2, determinant -1 up to sign
        std::complex<double> m[2][2];
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) m[x][y] = sol.values.at({s, s, s, s, x, y}).to_complex();
        for (auto& row : m)
            for (auto v : row) CHECK(std::abs(std::abs(v) - std::sqrt(0.5)) < 1e-12);
        CHECK(std::abs(std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) - 1.0) < 1e-12);
    }
}

TEST_CASE("Fibonacci at N = 20") {
    SolveStats st;
    auto sols = solve_pentagon(fibonacci_fusion(), 20, &st);
    REQUIRE(!sols.empty());
    const double phi = (1 + std::sqrt(5.0)) / 2;
    bool found = false;
    for (const auto& sol : sols) {
        auto v = sol.values.at({1, 1, 1, 1, 0, 0}).to_complex();
        found = found || std::abs(v - 1 / phi) < 1e-12;
        // entries lie in Q(zeta_5): invariant under zeta -> zeta^11, which fixes zeta_5 = zeta_20^4
        for (const auto& [k, x] : sol.values) CHECK(x.galois(11) == x);
    }
    CHECK(found);
}

TEST_CASE("gauge transformation leaves the solution class unchanged") {
    Bundle fib = fibonacci_bundle();
    const FusionData& f = fib.fusion();
    auto sols = solve_pentagon(f, 20);
    FValues G = values_of(fib.chiral.F);
    // rescale the (tau,tau,tau) space by 3
    FValues H;
    for (const auto& [k, v] : G) {
        int p = 0;
        Triple t{1, 1, 1};
        for (const auto& [space, sign] : gauge_row(f, k))
            if (space == t) p = sign;
        H[k] = v * Cyc(20, 3).pow(p);
    }
    CHECK(gauge_equivalent(f, H, sols));
    H.begin()->second = H.begin()->second * Cyc(20, -1);
    ChiralData c;
    c.order = 20;
    c.fusion = f;
    c.F = FTensor(20, &c.fusion);
    fill_tensor(c.F, H);
    if (!verify_pentagon(c).pass()) CHECK_FALSE(gauge_equivalent(f, H, sols));
}

TEST_CASE("solver refuses oversize problems") { CHECK_THROWS(solve_pentagon(lattice_fusion(3), 24)); }
