#include "doctest.h"

#include "ffw/fixtures.hpp"

using namespace ffw;

namespace {

bool has_failure(const Report& r, const std::string& id) {
    for (const auto& c : r.checks)
        if (!c.pass && c.id == id) return true;
    return false;
}

}  // namespace

TEST_CASE("Z/2 lattice fusion data") {
    FusionData f = lattice_fusion(1);
    CHECK(f.labels == std::vector<std::string>{"e", "a"});
    CHECK(f.dual[1] == 1);
    CHECK(f.weight[1] == mpq_class(1, 4));
    CHECK(f.N(1, 1, 0) == 1);
    CHECK(validate(f, lattice_order(1)).pass());
    CHECK(nonzero_spaces(f).size() == 4);
}

TEST_CASE("Z/4 weights use the symmetric representatives") {
    FusionData f = lattice_fusion(2);
    CHECK(f.weight[1] == mpq_class(1, 8));
    CHECK(f.weight[2] == mpq_class(1, 2));
    CHECK(f.weight[3] == mpq_class(1, 8));
    CHECK(f.dual[1] == 3);
    CHECK(validate(f, 16).pass());
    CHECK(f.min_field_order() == 16);
}

TEST_CASE("Ising and Fibonacci rules") {
    FusionData is = ising_fusion();
    CHECK(validate(is, kIsingOrder).pass());
    CHECK(nonzero_spaces(is).size() == 10);
    CHECK(is.N(2, 2, 0) == 1);
    CHECK(is.N(2, 2, 1) == 1);
    CHECK(is.N(2, 2, 2) == 0);
    FusionData fib = fibonacci_fusion();
    CHECK(validate(fib, kFibonacciOrder).pass());
    CHECK(nonzero_spaces(fib).size() == 5);
}

TEST_CASE("phase divisibility rule") {
    // weight 1/16 needs 32 | N
    Report r = validate(ising_fusion(), 4);
    CHECK(has_failure(r, "phase-divisibility"));
    CHECK(validate(ising_fusion(), 16).pass() == false);
    CHECK(validate(ising_fusion(), 32).pass());
}

TEST_CASE("violations are reported with their labels") {
    FusionData f = lattice_fusion(1);
    f.weight[0] = mpq_class(1, 2);
    CHECK(has_failure(validate(f), "unit-weight-zero"));

    FusionData g = lattice_fusion(2);
    g.weight[3] = mpq_class(1, 4);
    Report r = validate(g);
    CHECK(has_failure(r, "dual-weight"));

    FusionData h = lattice_fusion(2);
    h.dual = {0, 1, 2, 3};
    CHECK_FALSE(validate(h).pass());

    FusionData u = fibonacci_fusion();
    u.fusion.erase({1, 0, 1});
    CHECK(has_failure(validate(u), "unit-fusion"));
}

TEST_CASE("S3 orbits of spaces have equal fusion rules") {
    for (const FusionData& f : {trivial_fusion(), lattice_fusion(1), lattice_fusion(2), lattice_fusion(3),
                                ising_fusion(), fibonacci_fusion()}) {
        for (const auto& [t, n] : nonzero_spaces(f)) {
            CHECK(f.N(swap12(t)) == n);
            CHECK(f.N(swap23(f, t)) == n);
            CHECK(f.N(primed(f, t)) == n);
            CHECK(swap23(f, swap23(f, t)) == t);
        }
    }
}
