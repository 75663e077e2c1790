#include "doctest.h"

#include <cmath>
#include <random>

#include "ffw/cyc.hpp"

using namespace ffw;

TEST_CASE("zeta powers reduce modulo the cyclotomic polynomial") {
    Cyc i = Cyc::zeta(4, 1);
    CHECK((i + Cyc::zeta(4, 3)).is_zero());
    CHECK((i * i + Cyc(4, 1)).is_zero());
    Cyc z = Cyc::zeta(8, 1);
    Cyc s = z + Cyc::zeta(8, 7);  // sqrt 2
    CHECK(s * s == Cyc(8, 2));
    CHECK(Cyc::zeta(12, 12).is_one());
    CHECK(Cyc::zeta(5, -1) == Cyc::zeta(5, 4));
}

TEST_CASE("inverse of 1 + zeta_5") {
    Cyc x = Cyc(5, 1) + Cyc::zeta(5, 1);
    Cyc y = x.inverse();
    CHECK((x * y).is_one());
    // 1/(1+z) = -(z + z^3) for z a primitive 5th root
    CHECK(y == -(Cyc::zeta(5, 1) + Cyc::zeta(5, 3)));
    CHECK_THROWS(Cyc(5).inverse());
}

TEST_CASE("root_of_unity is exact e^{pi i p/q}") {
    CHECK(root_of_unity(8, 1, 4) == Cyc::zeta(8, 1));
    CHECK(root_of_unity(12, 2, 1).is_one());
    Cyc r = root_of_unity(32, 1, 16);
    CHECK(r == Cyc::zeta(32, 1));
    CHECK(r.pow(32).is_one());
    CHECK(root_of_unity(20, 2, 5) == Cyc::zeta(20, 4));
    CHECK_THROWS(root_of_unity(16, 1, 16));
    auto w = r.to_complex();
    CHECK(std::abs(w - std::complex<double>(std::cos(M_PI / 16), std::sin(M_PI / 16))) < 1e-12);
}

TEST_CASE("square roots inside and outside the field") {
    auto r = sqrt_in_field(Cyc(8, 2));
    REQUIRE(r.has_value());
    CHECK(*r * *r == Cyc(8, 2));
    CHECK(r->to_complex().real() > 0);
    CHECK_FALSE(sqrt_in_field(Cyc(4, 2)).has_value());
    auto m = sqrt_in_field(Cyc(4, -1));
    REQUIRE(m.has_value());
    CHECK(*m == Cyc::zeta(4, 1));
}

TEST_CASE("galois conjugation and lifting") {
    Cyc z = Cyc::zeta(12, 1);
    CHECK(z.conj() == Cyc::zeta(12, 11));
    CHECK((z * z.conj()).is_one());
    CHECK(z.lift(24) == Cyc::zeta(24, 2));
    CHECK(z.galois(5) == Cyc::zeta(12, 5));
}

TEST_CASE("roots_in_field of products of linear factors") {
    int N = 8;
    Cyc a = Cyc::zeta(N, 1), b = Cyc(N, mpq_class(-3, 7));
    // (x - a)(x - b) = x^2 - (a+b) x + ab
    auto roots = roots_in_field({a * b, -(a + b), Cyc(N, 1)});
    REQUIRE(roots.size() == 2);
    bool fa = false, fb = false;
    for (auto& r : roots) {
        fa = fa || r == a;
        fb = fb || r == b;
    }
    CHECK((fa && fb));
    // x^2 - 3 has no root in Q(zeta_8)
    CHECK(roots_in_field({Cyc(N, -3), Cyc(N), Cyc(N, 1)}).empty());
}

TEST_CASE("field axioms on random elements (property)") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int N : {5, 8, 12, 20}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto rnd = [&] {
                std::vector<Cyc::Term> t;
                for (int k = 0; k < N; ++k) t.emplace_back(k, mpz_class(d(rng)), mpz_class(1 + (d(rng) + 5) % 4));
                return Cyc::from_terms(N, t);
            };
            Cyc x = rnd(), y = rnd(), z = rnd();
            CHECK((x + y) * z == x * z + y * z);
            CHECK((x * y) * z == x * (y * z));
            if (!x.is_zero()) CHECK((x / x).is_one());
            auto cx = x.to_complex(), cy = y.to_complex();
            CHECK(std::abs((x * y).to_complex() - cx * cy) < 1e-9 * (1 + std::abs(cx * cy)));
        }
    }
}
