#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>

namespace ffw {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision (decimal digits) of Real for the current scope.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits10);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;
private:
    unsigned saved_;
};

struct HComplex {
    Real re;
    Real im;

    HComplex() : re(0), im(0) {}
    HComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    HComplex operator+(const HComplex& o) const { return {re + o.re, im + o.im}; }
    HComplex operator-(const HComplex& o) const { return {re - o.re, im - o.im}; }
    HComplex operator-() const { return {-re, -im}; }
    HComplex operator*(const HComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    HComplex operator/(const HComplex& o) const;
    HComplex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const;
    std::complex<double> to_double() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }
};

HComplex hexp_i(const Real& theta);          // e^{i theta}
HComplex hsqrt_principal(const HComplex& z); // arg in [0, pi)
Real hpi();

// Principal square root with the branch cut convention arg in [0, pi).
std::complex<double> sqrt_principal(std::complex<double> z);

}  // namespace ffw
