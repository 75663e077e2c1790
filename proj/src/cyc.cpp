#include "ffw/cyc.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffw {

struct CycTables {
    int n = 0;
    int phi = 0;
    std::vector<std::vector<mpq_class>> red;  // zeta^k reduced, k in [0, 2n)
    std::vector<std::complex<double>> w;      // e^{2 pi i k / n}
};

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

using IPoly = std::vector<long long>;  // low degree first

IPoly cyclotomic_poly(int n) {
    static std::map<int, IPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    IPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        IPoly q = cyclotomic_poly(d);
        // exact division p / q, q monic
        int dp = (int)p.size() - 1, dq = (int)q.size() - 1;
        IPoly quo(dp - dq + 1, 0);
        for (int i = dp; i >= dq; --i) {
            long long c = p[i];
            quo[i - dq] = c;
            for (int j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
        }
        p = quo;
    }
    cache[n] = p;
    return p;
}

const CycTables* tables(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycTables>> cache;
    if (n <= 0) throw std::invalid_argument("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second.get();
    auto t = std::make_unique<CycTables>();
    t->n = n;
    t->phi = euler_phi(n);
    IPoly phi_n = cyclotomic_poly(n);
    int f = t->phi;
    t->red.assign(2 * n, std::vector<mpq_class>(f));
    std::vector<mpq_class> cur(f);
    cur[0] = 1;
    for (int k = 0; k < 2 * n; ++k) {
        t->red[k] = cur;
        // multiply by x and reduce by the monic Phi_n
        mpq_class top = cur[f - 1];
        for (int i = f - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < f; ++i) cur[i] -= top * mpq_class((long)phi_n[i]);
    }
    t->w.resize(n);
    for (int k = 0; k < n; ++k) t->w[k] = std::polar(1.0, 2.0 * M_PI * k / n);
    const CycTables* raw = t.get();
    cache[n] = std::move(t);
    return raw;
}

}  // namespace

Cyc::Cyc(int order) : t_(tables(order)), c_(t_->phi) {}

Cyc::Cyc(int order, long v) : Cyc(order) { c_[0] = v; }

Cyc::Cyc(int order, const mpq_class& q) : Cyc(order) { c_[0] = q; }

Cyc Cyc::zeta(int order, long k) {
    Cyc r(order);
    long n = order;
    r.c_ = r.t_->red[((k % n) + n) % n];
    return r;
}

Cyc Cyc::from_terms(int order, const std::vector<Term>& terms) {
    Cyc r(order);
    for (const auto& [k, num, den] : terms) {
        if (k < 0 || k >= order)
            throw std::invalid_argument("exponent " + std::to_string(k) + " outside 0.." +
                                        std::to_string(order - 1));
        if (den == 0) throw std::invalid_argument("zero denominator in scalar literal");
        mpq_class q(num, den);
        q.canonicalize();
        const auto& z = r.t_->red[k];
        for (int i = 0; i < r.degree(); ++i)
            if (z[i] != 0) r.c_[i] += q * z[i];
    }
    return r;
}

int Cyc::order() const { return t_ ? t_->n : 0; }
int Cyc::degree() const { return t_ ? t_->phi : 0; }

std::vector<Cyc::Term> Cyc::terms() const {
    std::vector<Term> out;
    for (int i = 0; i < degree(); ++i)
        if (c_[i] != 0) out.emplace_back(i, c_[i].get_num(), c_[i].get_den());
    return out;
}

void Cyc::check(const Cyc& o) const {
    if (!t_ || !o.t_) throw std::logic_error("arithmetic on unassigned cyclotomic scalar");
    if (t_ != o.t_)
        throw std::invalid_argument("mismatched field orders " + std::to_string(order()) +
                                    " and " + std::to_string(o.order()));
}

bool Cyc::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Cyc::is_one() const { return is_rational() && !c_.empty() && c_[0] == 1; }

mpq_class Cyc::rational() const {
    if (!is_rational()) throw std::logic_error("scalar is not rational: " + str());
    return c_.empty() ? mpq_class(0) : c_[0];
}

Cyc Cyc::operator+(const Cyc& o) const {
    check(o);
    Cyc r = *this;
    for (int i = 0; i < degree(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
    check(o);
    Cyc r = *this;
    for (int i = 0; i < degree(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

Cyc Cyc::operator-() const {
    Cyc r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
    check(o);
    int f = degree();
    if (o.is_rational() || is_rational()) {
        const Cyc& s = o.is_rational() ? o : *this;
        const Cyc& v = o.is_rational() ? *this : o;
        Cyc r = v;
        const mpq_class& q = s.c_[0];
        for (auto& x : r.c_) x *= q;
        return r;
    }
    std::vector<mpq_class> raw(2 * f - 1);
    for (int i = 0; i < f; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < f; ++j)
            if (o.c_[j] != 0) raw[i + j] += c_[i] * o.c_[j];
    }
    Cyc r(order());
    for (int i = 0; i < f; ++i) r.c_[i] = raw[i];
    for (int k = f; k < 2 * f - 1; ++k) {
        if (raw[k] == 0) continue;
        const auto& z = t_->red[k];
        for (int i = 0; i < f; ++i)
            if (z[i] != 0) r.c_[i] += raw[k] * z[i];
    }
    return r;
}

Cyc Cyc::inverse() const {
    if (!t_) throw std::logic_error("inverse of unassigned cyclotomic scalar");
    if (is_zero()) throw std::domain_error("division by zero in Q(zeta_" + std::to_string(order()) + ")");
    int f = degree();
    if (is_rational()) return Cyc(order(), mpq_class(1) / c_[0]);
    // Solve M x = e_0 where column k of M is this * zeta^k.
    std::vector<std::vector<mpq_class>> m(f, std::vector<mpq_class>(f + 1));
    for (int k = 0; k < f; ++k) {
        Cyc col = *this * Cyc::zeta(order(), k);
        for (int i = 0; i < f; ++i) m[i][k] = col.c_[i];
    }
    m[0][f] = 1;
    for (int c = 0; c < f; ++c) {
        int p = c;
        while (p < f && m[p][c] == 0) ++p;
        if (p == f) throw std::domain_error("singular multiplication map");
        std::swap(m[p], m[c]);
        mpq_class inv = mpq_class(1) / m[c][c];
        for (int j = c; j <= f; ++j) m[c][j] *= inv;
        for (int r = 0; r < f; ++r) {
            if (r == c || m[r][c] == 0) continue;
            mpq_class s = m[r][c];
            for (int j = c; j <= f; ++j) m[r][j] -= s * m[c][j];
        }
    }
    Cyc r(order());
    for (int i = 0; i < f; ++i) r.c_[i] = m[i][f];
    return r;
}

Cyc Cyc::galois(int j) const {
    if (!t_) throw std::logic_error("galois on unassigned scalar");
    int n = order();
    if (std::gcd(j, n) != 1) throw std::invalid_argument("galois exponent not coprime to order");
    Cyc r(n);
    long jj = ((j % n) + n) % n;
    for (int k = 0; k < degree(); ++k) {
        if (c_[k] == 0) continue;
        const auto& z = t_->red[(jj * k) % n];
        for (int i = 0; i < degree(); ++i)
            if (z[i] != 0) r.c_[i] += c_[k] * z[i];
    }
    return r;
}

Cyc Cyc::conj() const { return galois(order() - 1); }

Cyc Cyc::lift(int m) const {
    if (!t_) throw std::logic_error("lift of unassigned scalar");
    if (m % order()) throw std::invalid_argument("target order not a multiple of source order");
    Cyc r(m);
    int s = m / order();
    for (int k = 0; k < degree(); ++k) {
        if (c_[k] == 0) continue;
        const auto& z = r.t_->red[k * s];
        for (int i = 0; i < r.degree(); ++i)
            if (z[i] != 0) r.c_[i] += c_[k] * z[i];
    }
    return r;
}

Cyc Cyc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyc base = *this, r(order(), 1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

bool Cyc::operator==(const Cyc& o) const {
    if (t_ != o.t_) return false;
    return c_ == o.c_;
}

std::complex<double> Cyc::to_complex() const { return to_complex(1); }

std::complex<double> Cyc::to_complex(int j) const {
    std::complex<double> s = 0;
    int n = order();
    for (int k = 0; k < degree(); ++k)
        if (c_[k] != 0) s += c_[k].get_d() * t_->w[((long)j * k % n + n) % n];
    return s;
}

HComplex Cyc::embed(unsigned digits) const { return embed(digits, 1); }

HComplex Cyc::embed(unsigned digits, int j) const {
    PrecisionGuard g(digits + 10);
    HComplex s;
    Real two_pi = 2 * hpi();
    int n = order();
    for (int k = 0; k < degree(); ++k) {
        if (c_[k] == 0) continue;
        Real q = Real(c_[k].get_num().get_str()) / Real(c_[k].get_den().get_str());
        long e = ((long)j * k % n + n) % n;
        HComplex w = hexp_i(two_pi * e / n);
        s = s + HComplex(q * w.re, q * w.im);
    }
    return s;
}

std::string Cyc::str() const {
    if (!t_) return "<unset>";
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < degree(); ++k) {
        if (c_[k] == 0) continue;
        mpq_class q = c_[k];
        if (!first) os << (q < 0 ? " - " : " + ");
        else if (q < 0) os << "-";
        mpq_class a = abs(q);
        if (k == 0) os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << "z" << order();
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Cyc root_of_unity(int order, long p, long q) {
    if (q <= 0) throw std::invalid_argument("root_of_unity needs q > 0");
    if (order % (2 * q))
        throw std::invalid_argument("field order " + std::to_string(order) +
                                    " too small for e^{pi i p/" + std::to_string(q) + "}");
    return Cyc::zeta(order, (long)order / (2 * q) * p);
}

// ---------------------------------------------------------------------------
// Roots in the field: numeric roots under every embedding, coefficients
// recovered by inverting the Vandermonde system, then exact verification.

namespace {

using CPoly = std::vector<Cyc>;

int pdeg(const CPoly& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (!p[i].is_zero()) return i;
    return -1;
}

CPoly ptrim(CPoly p) {
    p.resize(std::max(0, pdeg(p) + 1));
    return p;
}

CPoly pmod(CPoly a, const CPoly& b) {
    int db = pdeg(b);
    Cyc lead_inv = b[db].inverse();
    for (int i = pdeg(a); i >= db; i = pdeg(a)) {
        Cyc c = a[i] * lead_inv;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return ptrim(a);
}

CPoly pdiv(CPoly a, const CPoly& b) {
    int da = pdeg(a), db = pdeg(b);
    int n = a[0].order();
    CPoly q(std::max(0, da - db + 1), Cyc(n));
    Cyc lead_inv = b[db].inverse();
    for (int i = da; i >= db; --i) {
        Cyc c = a[i] * lead_inv;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

CPoly pgcd(CPoly a, CPoly b) {
    a = ptrim(a);
    b = ptrim(b);
    while (!b.empty()) {
        CPoly r = pmod(a, b);
        a = b;
        b = r;
    }
    return a;
}

Cyc peval(const CPoly& p, const Cyc& x) {
    Cyc s(x.order());
    for (int i = (int)p.size() - 1; i >= 0; --i) s = s * x + p[i];
    return s;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<std::complex<double>>& c) {
    int d = (int)c.size() - 1;
    std::vector<std::complex<double>> a(d + 1);
    for (int i = 0; i <= d; ++i) a[i] = c[i] / c[d];
    double rad = 1;
    for (int i = 0; i < d; ++i) rad = std::max(rad, 1 + std::abs(a[i]));
    std::vector<std::complex<double>> z(d);
    for (int i = 0; i < d; ++i) z[i] = std::polar(rad * 0.9, 2 * M_PI * i / d + 0.4);
    auto ev = [&](std::complex<double> x) {
        std::complex<double> s = 0;
        for (int i = d; i >= 0; --i) s = s * x + a[i];
        return s;
    };
    for (int it = 0; it < 2000; ++it) {
        double delta = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= (z[i] - z[j]);
            std::complex<double> step = ev(z[i]) / den;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-15 * rad) break;
    }
    return z;
}

HComplex hpoly_eval(const std::vector<HComplex>& a, const HComplex& x) {
    HComplex s;
    for (int i = (int)a.size() - 1; i >= 0; --i) s = s * x + a[i];
    return s;
}

std::vector<HComplex> hroots(const CPoly& p, int j, unsigned digits) {
    int d = pdeg(p);
    std::vector<std::complex<double>> cd(d + 1);
    std::vector<HComplex> ch(d + 1), dh(d);
    for (int i = 0; i <= d; ++i) {
        cd[i] = p[i].to_complex(j);
        ch[i] = p[i].embed(digits, j);
    }
    for (int i = 1; i <= d; ++i) dh[i - 1] = ch[i] * HComplex(Real(i), Real(0));
    auto z0 = durand_kerner(cd);
    std::vector<HComplex> out;
    for (auto& z : z0) {
        HComplex x(Real(z.real()), Real(z.imag()));
        for (int it = 0; it < 60; ++it) {
            HComplex f = hpoly_eval(ch, x), df = hpoly_eval(dh, x);
            if (df.norm2() == 0) break;
            HComplex step = f / df;
            x = x - step;
            if (step.abs() < Real("1e-" + std::to_string(digits))) break;
        }
        out.push_back(x);
    }
    return out;
}

// Continued-fraction recognition of a real number as a rational.
std::optional<mpq_class> recognize(const Real& x, const Real& tol, const mpz_class& max_den) {
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Real r = x;
    for (int it = 0; it < 200; ++it) {
        Real fl = boost::multiprecision::floor(r);
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) return std::nullopt;
        Real approx = Real(p2.get_str()) / Real(q2.get_str());
        if (boost::multiprecision::abs(approx - x) <= tol) return mpq_class(p2, q2);
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Real frac = r - fl;
        if (frac == 0) return std::nullopt;
        r = 1 / frac;
    }
    return std::nullopt;
}

// Rational with denominator at most 10^7 within 1e-14 relative; used only to
// discard hopeless candidates before the high-precision pass.
bool near_rational(long double x) {
    long double tol = 1e-14L * std::max(1.0L, std::fabs(x));
    long double r = x;
    long double p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(r);
        long double p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 1e7L) return false;
        if (std::fabs(p2 / q2 - x) <= tol) return true;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        long double frac = r - a;
        if (frac == 0) return false;
        r = 1 / frac;
    }
    return false;
}

// Inverse of [zeta^{u_r k}] (rows r over units, cols k over the power basis),
// stored in columns f..2f-1 of an augmented matrix; cached per field order.
const std::vector<std::vector<HComplex>>& vandermonde_inverse(int n, const std::vector<int>& units) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<HComplex>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    int f = (int)units.size();
    std::vector<std::vector<HComplex>> v(f, std::vector<HComplex>(2 * f));
    Real two_pi = 2 * hpi();
    for (int r = 0; r < f; ++r) {
        for (int k = 0; k < f; ++k) v[r][k] = hexp_i(two_pi * ((long)units[r] * k % n) / n);
        v[r][f + r] = HComplex(Real(1), Real(0));
    }
    for (int c = 0; c < f; ++c) {
        int piv = c;
        for (int r = c + 1; r < f; ++r)
            if (v[r][c].norm2() > v[piv][c].norm2()) piv = r;
        std::swap(v[piv], v[c]);
        HComplex inv = HComplex(Real(1), Real(0)) / v[c][c];
        for (auto& x : v[c]) x = x * inv;
        for (int r = 0; r < f; ++r) {
            if (r == c) continue;
            HComplex s = v[r][c];
            if (s.norm2() == 0) continue;
            for (int k = 0; k < 2 * f; ++k) v[r][k] = v[r][k] - s * v[c][k];
        }
    }
    return cache.emplace(n, std::move(v)).first->second;
}

}  // namespace

std::vector<Cyc> roots_in_field(const std::vector<Cyc>& coeffs) {
    CPoly p = ptrim(coeffs);
    int d = pdeg(p);
    if (d < 1) return {};
    int n = p[0].order();
    for (auto& c : p)
        if (c.order() != n) throw std::invalid_argument("mixed field orders in polynomial");
    std::vector<Cyc> out;
    // zero roots
    int low = 0;
    while (p[low].is_zero()) ++low;
    if (low > 0) {
        out.push_back(Cyc(n));
        p.erase(p.begin(), p.begin() + low);
        d -= low;
    }
    if (d == 0) return out;
    // square-free part
    CPoly dp(d, Cyc(n));
    for (int i = 1; i <= d; ++i) dp[i - 1] = p[i] * Cyc(n, (long)i);
    CPoly g = pgcd(p, dp);
    if (pdeg(g) > 0) p = pdiv(p, g);
    d = pdeg(p);
    if (d == 1) {
        out.push_back(-p[0] / p[1]);
        return out;
    }

    const unsigned digits = 60;
    PrecisionGuard guard(digits + 10);
    std::vector<int> units;
    for (int j = 1; j < n; ++j)
        if (std::gcd(j, n) == 1) units.push_back(j);
    if (n == 1 || n == 2) units = {1};
    int f = euler_phi(n);
    std::vector<int> half;
    for (int j : units)
        if (2 * j < n || n <= 2) half.push_back(j);

    double combos = std::pow((double)d, (double)half.size());
    if (combos > 4e6) throw std::runtime_error("root search space too large in Q(zeta_" + std::to_string(n) + ")");

    std::map<int, std::vector<HComplex>> rts;
    for (int j : half) rts[j] = hroots(p, j, digits);

    const auto& v = vandermonde_inverse(n, units);
    using LD = std::complex<long double>;
    auto to_ld = [](const HComplex& z) { return LD(z.re.convert_to<long double>(), z.im.convert_to<long double>()); };
    std::vector<LD> vd(f * f);
    for (int k = 0; k < f; ++k)
        for (int r = 0; r < f; ++r) vd[k * f + r] = to_ld(v[k][f + r]);
    std::map<int, std::vector<LD>> rtd;
    for (int j : half)
        for (auto& z : rts[j]) rtd[j].push_back(to_ld(z));
    std::map<int, int> pos;
    for (int r = 0; r < f; ++r) pos[units[r]] = r;

    Real tol("1e-40"), imag_tol("1e-30");
    mpz_class max_den("1000000000000000000000");
    std::vector<int> idx(half.size(), 0);
    std::vector<LD> sd(f);
    while (true) {
        // screen in extended precision before the exact recognition
        for (size_t h = 0; h < half.size(); ++h) {
            int j = half[h];
            sd[pos[j]] = rtd[j][idx[h]];
            if (n > 2) sd[pos[n - j]] = std::conj(rtd[j][idx[h]]);
        }
        bool plausible = true;
        for (int k = 0; k < f && plausible; ++k) {
            LD ck = 0;
            for (int r = 0; r < f; ++r) ck += vd[k * f + r] * sd[r];
            plausible = near_rational(ck.real()) && std::abs(ck.imag()) < 1e-12L;
        }
        if (!plausible) {
            size_t h = 0;
            while (h < idx.size() && ++idx[h] == d) idx[h++] = 0;
            if (h == idx.size()) break;
            continue;
        }
        std::vector<HComplex> s(f);
        for (size_t h = 0; h < half.size(); ++h) {
            int j = half[h];
            const HComplex& val = rts[j][idx[h]];
            s[pos[j]] = val;
            if (n > 2) s[pos[n - j]] = val.conj();
        }
        bool ok = true;
        std::vector<mpq_class> cq(f);
        for (int k = 0; k < f && ok; ++k) {
            HComplex ck;
            for (int r = 0; r < f; ++r) ck = ck + v[k][f + r] * s[r];
            if (boost::multiprecision::abs(ck.im) > imag_tol) { ok = false; break; }
            auto q = recognize(ck.re, tol, max_den);
            if (!q) { ok = false; break; }
            cq[k] = *q;
        }
        if (ok) {
            std::vector<Cyc::Term> terms;
            for (int k = 0; k < f; ++k)
                if (cq[k] != 0) terms.emplace_back(k, cq[k].get_num(), cq[k].get_den());
            Cyc x = Cyc::from_terms(n, terms);
            if (peval(p, x).is_zero()) {
                bool dup = false;
                for (auto& y : out) dup = dup || (y == x);
                if (!dup) out.push_back(x);
            }
        }
        size_t h = 0;
        while (h < idx.size() && ++idx[h] == d) idx[h++] = 0;
        if (h == idx.size()) break;
    }
    return out;
}

std::optional<Cyc> sqrt_in_field(const Cyc& a) {
    int n = a.order();
    if (a.is_zero()) return Cyc(n);
    auto r = roots_in_field({-a, Cyc(n), Cyc(n, 1)});
    for (auto& x : r) {
        if (x == x.conj()) {
            if (x.embed(30).re > 0) return x;
        } else if (x.embed(30).im > 0) {
            return x;
        }
    }
    return std::nullopt;
}

}  // namespace ffw
