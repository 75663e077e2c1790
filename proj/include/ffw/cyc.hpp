#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ffw/numeric.hpp"

namespace ffw {

struct CycTables;

// Element of the cyclotomic field Q(zeta_N), stored in the power basis
// 1, zeta, ..., zeta^{phi(N)-1} (the unique representative modulo Phi_N).
class Cyc {
public:
    using Term = std::tuple<int, mpz_class, mpz_class>;  // (exponent, num, den)

    Cyc() = default;  // unassigned; any arithmetic on it throws
    explicit Cyc(int order);
    Cyc(int order, long v);
    Cyc(int order, const mpq_class& q);

    static Cyc zeta(int order, long k);
    static Cyc from_terms(int order, const std::vector<Term>& terms);

    int order() const;
    int degree() const;
    bool valid() const { return t_ != nullptr; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    std::vector<Term> terms() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    mpq_class rational() const;  // throws unless is_rational()

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator-() const;
    Cyc operator*(const Cyc& o) const;
    Cyc operator/(const Cyc& o) const { return *this * o.inverse(); }
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    Cyc& operator/=(const Cyc& o) { return *this = *this / o; }

    Cyc inverse() const;
    Cyc conj() const;
    Cyc pow(long e) const;
    // Image under the automorphism zeta -> zeta^j, gcd(j, N) = 1.
    Cyc galois(int j) const;
    // Same element viewed in Q(zeta_M), N | M.
    Cyc lift(int order) const;

    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    std::complex<double> to_complex() const;
    std::complex<double> to_complex(int j) const;  // embedding zeta -> e^{2 pi i j/N}
    HComplex embed(unsigned digits) const;
    HComplex embed(unsigned digits, int j) const;

    std::string str() const;

private:
    const CycTables* t_ = nullptr;
    std::vector<mpq_class> c_;
    void check(const Cyc& o) const;
};

// e^{pi i p / q}; requires 2q | N.
Cyc root_of_unity(int order, long p, long q);

// x with x*x == a and arg(x) in [0, pi), when it lies in the field.
std::optional<Cyc> sqrt_in_field(const Cyc& a);

// All distinct roots in Q(zeta_N) of the polynomial sum_i coeffs[i] x^i whose
// power-basis coefficients have denominators up to 10^7.
std::vector<Cyc> roots_in_field(const std::vector<Cyc>& coeffs);

int euler_phi(int n);

}  // namespace ffw
