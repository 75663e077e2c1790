#include "ffw/numeric.hpp"

namespace ffw {

PrecisionGuard::PrecisionGuard(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

HComplex HComplex::operator/(const HComplex& o) const {
    Real d = o.norm2();
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Real HComplex::abs() const { return boost::multiprecision::sqrt(norm2()); }

Real hpi() { return boost::multiprecision::atan(Real(1)) * 4; }

HComplex hexp_i(const Real& theta) {
    return {boost::multiprecision::cos(theta), boost::multiprecision::sin(theta)};
}

HComplex hsqrt_principal(const HComplex& z) {
    Real r = z.abs();
    if (r == 0) return {};
    Real th = boost::multiprecision::atan2(z.im, z.re);
    if (th < 0) th += 2 * hpi();
    Real s = boost::multiprecision::sqrt(r);
    HComplex e = hexp_i(th / 2);
    return {s * e.re, s * e.im};
}

std::complex<double> sqrt_principal(std::complex<double> z) {
    std::complex<double> r = std::sqrt(z);
    // std::sqrt returns Re >= 0; move to the upper half plane
    if (r.imag() < 0 || (r.imag() == 0 && r.real() < 0)) r = -r;
    return r;
}

}  // namespace ffw
