#include "ffw/chiral.hpp"

#include <algorithm>
#include <iomanip>
#include <tuple>
#include <sstream>
#include <stdexcept>

namespace ffw {

// ---------------------------------------------------------------- CMat

CMat CMat::identity(int order, int n) {
    CMat m(order, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Cyc(order, 1);
    return m;
}

CMat CMat::operator*(const CMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
    CMat r(order, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Cyc& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

CMat CMat::operator*(const Cyc& s) const {
    CMat r = *this;
    for (auto& x : r.a) x *= s;
    return r;
}

CMat CMat::operator+(const CMat& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix shape mismatch");
    CMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
}

CMat CMat::operator-(const CMat& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix shape mismatch");
    CMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

CMat CMat::transpose() const {
    CMat r;
    r.order = order;
    r.rows = cols;
    r.cols = rows;
    r.a.resize(a.size());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::optional<CMat> CMat::inverse() const {
    if (rows != cols || rows == 0) return std::nullopt;
    int n = rows;
    CMat m = *this, inv = identity(order, n);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return std::nullopt;
        for (int j = 0; j < n; ++j) {
            std::swap(m(p, j), m(c, j));
            std::swap(inv(p, j), inv(c, j));
        }
        Cyc s = m(c, c).inverse();
        for (int j = 0; j < n; ++j) {
            m(c, j) *= s;
            inv(c, j) *= s;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            Cyc f = m(r, c);
            for (int j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

bool CMat::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
}

bool CMat::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

std::string CMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- FTensor

bool FTensor::admissible(const FKey& k) const {
    const auto& f = *fusion_;
    return f.N(k.a1, k.a5, k.a4) > 0 && f.N(k.a2, k.a3, k.a5) > 0 && f.N(k.a6, k.a3, k.a4) > 0 &&
           f.N(k.a1, k.a2, k.a6) > 0;
}

FTensor::Block& FTensor::block(const FKey& k) {
    auto it = blocks_.find(k);
    if (it != blocks_.end()) return it->second;
    if (!admissible(k)) throw std::invalid_argument("fusing entry on a zero space");
    const auto& f = *fusion_;
    Block b;
    b.dims = {f.N(k.a1, k.a5, k.a4), f.N(k.a2, k.a3, k.a5), f.N(k.a6, k.a3, k.a4), f.N(k.a1, k.a2, k.a6)};
    b.v.assign((size_t)b.dims[0] * b.dims[1] * b.dims[2] * b.dims[3], Cyc(order_));
    return blocks_.emplace(k, std::move(b)).first->second;
}

const FTensor::Block* FTensor::find(const FKey& k) const {
    auto it = blocks_.find(k);
    return it == blocks_.end() ? nullptr : &it->second;
}

Cyc FTensor::get(const FKey& k, int i, int j, int l, int m) const {
    const Block* b = find(k);
    if (!b) return Cyc(order_);
    return b->at(i, j, l, m);
}

std::vector<FKey> FTensor::admissible_keys() const {
    std::vector<FKey> out;
    int n = fusion_->size();
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2)
            for (int a3 = 0; a3 < n; ++a3)
                for (int a4 = 0; a4 < n; ++a4)
                    for (int a5 = 0; a5 < n; ++a5)
                        for (int a6 = 0; a6 < n; ++a6) {
                            FKey k{a1, a2, a3, a4, a5, a6};
                            if (admissible(k)) out.push_back(k);
                        }
    return out;
}

// ---------------------------------------------------------------- ChiralData

ChiralData::ChiralData(const ChiralData& o)
    : order(o.order), fusion(o.fusion), F(o.F), sigma(o.sigma), canonical(o.canonical) {
    F.rebind(&fusion);
}

ChiralData& ChiralData::operator=(const ChiralData& o) {
    if (this == &o) return *this;
    order = o.order;
    fusion = o.fusion;
    F = o.F;
    F.rebind(&fusion);
    sigma = o.sigma;
    canonical = o.canonical;
    return *this;
}

int ChiralData::canon(const Triple& t) const {
    auto it = canonical.find(t);
    if (it == canonical.end())
        throw std::runtime_error("no canonical marker on space (" + fusion.labels[t[0]] + "," +
                                 fusion.labels[t[1]] + "," + fusion.labels[t[2]] + ")");
    return it->second;
}

std::vector<Triple> canonical_spaces(const FusionData& f) {
    std::set<Triple> s;
    int e = f.unit;
    for (int a = 0; a < f.size(); ++a) {
        s.insert({e, a, a});
        s.insert({a, e, a});
        s.insert({a, f.dual[a], e});
    }
    return {s.begin(), s.end()};
}

Triple rot123(const FusionData& f, const Triple& t) { return swap12(swap23(f, t)); }

namespace {

const CMat& sig(const std::map<Triple, CMat>& m, const Triple& t, const FusionData& f, const char* which) {
    auto it = m.find(t);
    if (it == m.end())
        throw std::runtime_error(std::string("missing ") + which + " matrix on (" + f.labels[t[0]] + "," +
                                 f.labels[t[1]] + "," + f.labels[t[2]] + ")");
    return it->second;
}

std::vector<std::string> idx(const FusionData& f, std::initializer_list<int> labels,
                             std::initializer_list<int> mults = {}) {
    std::vector<std::string> out;
    for (int a : labels) out.push_back(f.labels[a]);
    bool any = false;
    for (int m : mults) any = any || m != 0;
    if (any)
        for (int m : mults) out.push_back("#" + std::to_string(m + 1));
    return out;
}

std::vector<std::string> tidx(const FusionData& f, const Triple& t) { return f.names(t); }

}  // namespace

CMat sigma123(const ChiralData& c, const Triple& t) {
    return sig(c.sigma.s12, swap23(c.fusion, t), c.fusion, "sigma12") * sig(c.sigma.s23, t, c.fusion, "sigma23");
}

// ---------------------------------------------------------------- pentagon

Report verify_pentagon(const ChiralData& c) {
    Report r;
    r.suite = "pentagon";
    r.identity = "pentagon consistency of the fusing matrices";
    const auto& f = c.fusion;
    const auto& F = c.F;
    int n = f.size();
    for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
    for (int ff = 0; ff < n; ++ff) {
        int Nk = f.N(a1, a2, ff);
        if (!Nk) continue;
        for (int a3 = 0; a3 < n; ++a3)
        for (int g = 0; g < n; ++g) {
            int Np = f.N(ff, a3, g);
            if (!Np) continue;
            for (int a4 = 0; a4 < n; ++a4)
            for (int e = 0; e < n; ++e) {
                int Nn = f.N(g, a4, e);
                if (!Nn) continue;
                for (int cc = 0; cc < n; ++cc) {
                    int Nm = f.N(a3, a4, cc);
                    if (!Nm) continue;
                    for (int b = 0; b < n; ++b) {
                        int Nj = f.N(a2, cc, b), Ni = f.N(a1, b, e);
                        if (!Nj || !Ni) continue;
                        for (int i = 0; i < Ni; ++i)
                        for (int j = 0; j < Nj; ++j)
                        for (int m = 0; m < Nm; ++m)
                        for (int k = 0; k < Nk; ++k)
                        for (int p = 0; p < Np; ++p)
                        for (int nn = 0; nn < Nn; ++nn) {
                            Cyc lhs = c.zero();
                            FKey k1{a1, a2, cc, e, b, ff}, k2{ff, a3, a4, e, cc, g};
                            for (int l = 0; l < f.N(ff, cc, e); ++l)
                                lhs += F.get(k1, i, j, l, k) * F.get(k2, l, m, nn, p);
                            Cyc rhs = c.zero();
                            for (int h = 0; h < n; ++h) {
                                int Nq = f.N(h, a4, b), Nr = f.N(a2, a3, h), Ns = f.N(a1, h, g);
                                if (!Nq || !Nr || !Ns) continue;
                                FKey k3{a2, a3, a4, b, cc, h}, k4{a1, h, a4, e, b, g}, k5{a1, a2, a3, g, h, ff};
                                for (int q = 0; q < Nq; ++q)
                                for (int rr = 0; rr < Nr; ++rr)
                                for (int s = 0; s < Ns; ++s)
                                    rhs += F.get(k3, j, m, q, rr) * F.get(k4, i, q, nn, s) *
                                           F.get(k5, s, rr, p, k);
                            }
                            Cyc d = lhs - rhs;
                            r.add("pentagon", idx(f, {a1, a2, a3, a4, e, b, cc, ff, g}, {i, j, m, k, p, nn}),
                                  d.is_zero(), d.is_zero() ? "" : d.str());
                        }
                    }
                }
            }
        }
    }
    return r;
}

Cyc f_a(const ChiralData& c, int a) {
    int e = c.e(), ad = c.dual(a);
    FKey k{a, ad, a, a, e, e};
    if (!c.F.admissible(k)) throw std::runtime_error("F_a entry is not admissible for " + c.fusion.labels[a]);
    Cyc v = c.F.get(k, c.canon({a, e, a}), c.canon({ad, a, e}), c.canon({e, a, a}), c.canon({a, ad, e}));
    if (v.is_zero()) throw std::runtime_error("F_a vanishes for " + c.fusion.labels[a]);
    return v;
}

// ---------------------------------------------------------------- pairing

CMat pairing_matrix(const ChiralData& c, const Triple& t) {
    const auto& f = c.fusion;
    int a1 = t[0], a2 = t[1], a3 = t[2], e = c.e();
    Triple pt = primed(f, t);
    int rows = f.N(t), cols = f.N(pt);
    CMat P(c.order, rows, cols);
    if (!rows) return P;
    const CMat& s = sig(c.sigma.s23, pt, f, "sigma23");
    FKey k{c.dual(a1), a1, a2, a2, a3, e};
    int l = c.canon({e, a2, a2}), m = c.canon({c.dual(a1), a1, e});
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i)
            for (int ip = 0; ip < s.rows; ++ip)
                P(j, i) += s(ip, i) * c.F.get(k, ip, j, l, m);
    return P;
}

CMat pairing_matrix_second(const ChiralData& c, const Triple& t) {
    const auto& f = c.fusion;
    int a1 = t[0], e = c.e();
    Triple pt = primed(f, t);
    int a1p = pt[0], a2p = pt[1], a3p = pt[2];
    int rows = f.N(t), cols = f.N(pt);
    CMat P(c.order, rows, cols);
    if (!rows) return P;
    const CMat& s = sig(c.sigma.s23, t, f, "sigma23");
    FKey k{a1, a1p, a2p, a2p, a3p, e};
    int l = c.canon({e, a2p, a2p}), m = c.canon({a1, a1p, e});
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i)
            for (int jp = 0; jp < s.rows; ++jp)
                P(j, i) += s(jp, j) * c.F.get(k, jp, i, l, m);
    return P;
}

PairingData compute_pairings(const ChiralData& c, Report* report) {
    PairingData pd;
    for (const auto& [t, mult] : nonzero_spaces(c.fusion)) {
        CMat p1 = pairing_matrix(c, t), p2 = pairing_matrix_second(c, t);
        bool agree = p1 == p2;
        if (report) report->add("inner-fusing-agreement", tidx(c.fusion, t), agree, agree ? "" : (p1 - p2).str());
        pd.pairing[t] = p1;
        pd.second[t] = p2;
        if (!report && !agree)
            throw std::runtime_error("the two pairing formulas disagree on (" + c.fusion.labels[t[0]] + "," +
                                     c.fusion.labels[t[1]] + "," + c.fusion.labels[t[2]] + ")");
        if (auto inv = p1.inverse()) pd.dual[t] = *inv;
    }
    return pd;
}

Report verify_pairing(const ChiralData& c) {
    Report r;
    r.suite = "pairing";
    r.identity = "pairing of intertwining-operator spaces: both fusing formulas, symmetry, canonical values";
    PairingData pd = compute_pairings(c, &r);
    const auto& f = c.fusion;
    int e = c.e();
    for (const auto& [t, P] : pd.pairing) {
        const CMat& Q = pd.pairing.at(primed(f, t));
        bool sym = P == Q.transpose();
        r.add("pairing-symmetry", tidx(f, t), sym);
    }
    for (int a = 0; a < f.size(); ++a) {
        int ad = c.dual(a);
        const CMat& p1 = pd.pairing.at({e, a, a});
        bool ok1 = p1(c.canon({e, a, a}), c.canon({e, ad, ad})).is_one();
        r.add("canonical-pairing-unit-left", idx(f, {e, a, a}), ok1, p1.str());
        const CMat& p2 = pd.pairing.at({a, e, a});
        bool ok2 = p2(c.canon({a, e, a}), c.canon({ad, e, ad})).is_one();
        r.add("canonical-pairing-unit-right", idx(f, {a, e, a}), ok2, p2.str());
        const CMat& p3 = pd.pairing.at({a, ad, e});
        Cyc fa = f_a(c, a);
        bool ok3 = p3(c.canon({a, ad, e}), c.canon({ad, a, e})) == fa;
        r.add("canonical-pairing-F", idx(f, {a, ad, e}), ok3, p3.str());
    }
    return r;
}

CMat dual_basis(const ChiralData& c, const Triple& t) {
    auto inv = pairing_matrix(c, t).inverse();
    if (!inv) throw std::runtime_error("singular pairing on (" + c.fusion.labels[t[0]] + "," + c.fusion.labels[t[1]] +
                                       "," + c.fusion.labels[t[2]] + ")");
    return *inv;
}

Report verify_formula1(const ChiralData& c) {
    Report r;
    r.suite = "formula1";
    r.identity = "left-inverse formula for the pairing matrix";
    const auto& f = c.fusion;
    int e = c.e();
    for (const auto& [t, mult] : nonzero_spaces(f)) {
        int a1 = t[0], a2 = t[1], a3 = t[2];
        int a1p = c.dual(a1), a3p = c.dual(a3);
        Triple s0{a2, a3p, a1p};
        int nk = f.N(a1p, a3, a2), nj = f.N(s0);
        Cyc F2 = f_a(c, a2);
        r.add("formula1-normalization", idx(f, {a2}), !F2.is_zero());
        CMat A(c.order, nk, nj), B(c.order, nk, nj);
        FKey ka{a2, a3p, a3, a2, e, a1p};
        int ia = c.canon({a2, e, a2}), ja = c.canon({a3p, a3, e});
        for (int k = 0; k < nk; ++k)
            for (int j = 0; j < nj; ++j) A(k, j) = c.F.get(ka, ia, ja, k, j);
        CMat S = sigma123(c, s0);
        FKey kb{a1p, a1, a2, a2, a3, e};
        int lb = c.canon({e, a2, a2}), mb = c.canon({a1p, a1, e});
        for (int k = 0; k < nk; ++k)
            for (int i = 0; i < nj; ++i)
                for (int rr = 0; rr < S.rows; ++rr) B(k, i) += S(rr, i) * c.F.get(kb, k, rr, lb, mb);
        CMat M = A.transpose() * B;
        CMat want = CMat::identity(c.order, nj) * F2;
        bool ok = M == want;
        r.add("formula1", tidx(f, t), ok, ok ? "" : (M - want).str());
    }
    return r;
}

Report verify_nondegeneracy(const ChiralData& c) {
    Report r;
    r.suite = "nondegeneracy";
    r.identity = "nondegeneracy of the pairing, prime symmetry of fusion rules, left-inverse formula";
    const auto& f = c.fusion;
    for (const auto& [t, mult] : nonzero_spaces(f)) {
        Triple pt = primed(f, t);
        r.add("prime-symmetry", tidx(f, t), f.N(pt) == mult);
        CMat P = pairing_matrix(c, t);
        bool inv = P.rows == P.cols && P.inverse().has_value();
        r.add("pairing-invertible", tidx(f, t), inv, inv ? "" : P.str());
    }
    r.merge(verify_formula1(c));
    return r;
}

Report verify_dual_basis(const ChiralData& c) {
    Report r;
    r.suite = "dual";
    r.identity = "dual bases of intertwining-operator spaces and F_{a'} = F_a";
    const auto& f = c.fusion;
    int e = c.e();
    std::map<Triple, CMat> D;
    for (const auto& [t, mult] : nonzero_spaces(f)) {
        CMat P = pairing_matrix(c, t);
        auto inv = P.inverse();
        r.add("dual-exists", tidx(f, t), inv.has_value());
        if (!inv) continue;
        D[t] = *inv;
        bool ok = (P * *inv).is_identity();
        r.add("pairing-dual-identity", tidx(f, t), ok);
    }
    for (int a = 0; a < f.size(); ++a) {
        int ad = c.dual(a);
        Cyc fa = f_a(c, a);
        auto unit_col = [&](const Triple& t, const Triple& target, const Cyc& val) {
            if (!D.count(t)) return false;
            const CMat& d = D.at(t);
            int col = c.canon(t), row = c.canon(target);
            for (int i = 0; i < d.rows; ++i)
                if (d(i, col) != (i == row ? val : c.zero())) return false;
            return true;
        };
        r.add("dual-of-unit-left", idx(f, {e, a, a}), unit_col({e, a, a}, {e, ad, ad}, c.one()));
        r.add("dual-of-unit-right", idx(f, {a, e, a}), unit_col({a, e, a}, {ad, e, ad}, c.one()));
        r.add("dual-of-coevaluation", idx(f, {a, ad, e}), unit_col({a, ad, e}, {ad, a, e}, fa.inverse()));
        Cyc fad = f_a(c, ad);
        r.add("F-dual-symmetry", idx(f, {a, ad}), fa == fad, (fa - fad).str());
    }
    return r;
}

// ---------------------------------------------------------------- Prop fusing

Cyc f_dual(const ChiralData& c, const PairingData& p, const FKey& k, int i, int j, int l, int m) {
    const auto& f = c.fusion;
    auto d = [&](int a) { return c.dual(a); };
    Triple s1{k.a1, k.a5, k.a4}, s2{k.a2, k.a3, k.a5}, s3{k.a6, k.a3, k.a4}, s4{k.a1, k.a2, k.a6};
    FKey kp{d(k.a1), d(k.a2), d(k.a3), d(k.a4), d(k.a5), d(k.a6)};
    const CMat &D1 = p.dual.at(s1), &D2 = p.dual.at(s2);
    const CMat &P3 = p.pairing.at(s3), &P4 = p.pairing.at(s4);
    const FTensor::Block* b = c.F.find(kp);
    Cyc s = c.zero();
    if (!b) return s;
    (void)f;
    for (int r = 0; r < b->dims[0]; ++r)
        for (int t = 0; t < b->dims[1]; ++t)
            for (int u = 0; u < b->dims[2]; ++u)
                for (int v = 0; v < b->dims[3]; ++v) {
                    const Cyc& x = b->at(r, t, u, v);
                    if (x.is_zero()) continue;
                    s += D1(r, i) * D2(t, j) * x * P3(l, u) * P4(m, v);
                }
    return s;
}

Report verify_prop_fusing(const ChiralData& c) {
    Report pr;
    PairingData p = compute_pairings(c, &pr);
    Report r = verify_prop_fusing(c, p);
    if (!pr.pass()) r.merge(pr);
    return r;
}

Report verify_prop_fusing(const ChiralData& c, const PairingData& p) {
    Report r;
    r.suite = "fusing";
    r.identity = "fusing matrix times its dual-basis counterpart is the identity";
    const auto& f = c.fusion;
    int n = f.size();
    for (const auto& [t, m] : nonzero_spaces(f))
        if (!p.dual.count(t)) {
            r.add("dual-basis-missing", tidx(f, t), false);
            return r;
        }
    for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
    for (int a3 = 0; a3 < n; ++a3)
    for (int a4 = 0; a4 < n; ++a4)
    for (int a6 = 0; a6 < n; ++a6) {
        int Nm = f.N(a6, a3, a4), Nk = f.N(a1, a2, a6);
        if (!Nm || !Nk) continue;
        for (int a7 = 0; a7 < n; ++a7) {
            int Nn = f.N(a7, a3, a4), Nl = f.N(a1, a2, a7);
            if (!Nn || !Nl) continue;
            for (int m = 0; m < Nm; ++m)
            for (int k = 0; k < Nk; ++k)
            for (int nn = 0; nn < Nn; ++nn)
            for (int l = 0; l < Nl; ++l) {
                Cyc s = c.zero();
                for (int a5 = 0; a5 < n; ++a5) {
                    int Np = f.N(a1, a5, a4), Nq = f.N(a2, a3, a5);
                    if (!Np || !Nq) continue;
                    FKey k6{a1, a2, a3, a4, a5, a6}, k7{a1, a2, a3, a4, a5, a7};
                    for (int pp = 0; pp < Np; ++pp)
                        for (int q = 0; q < Nq; ++q)
                            s += c.F.get(k6, pp, q, m, k) * f_dual(c, p, k7, pp, q, nn, l);
                }
                bool delta = a6 == a7 && m == nn && k == l;
                Cyc want = delta ? c.one() : c.zero();
                bool ok = s == want;
                r.add("fusing-delta", idx(f, {a1, a2, a3, a4, a6, a7}, {m, k, nn, l}), ok, ok ? "" : (s - want).str());
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- modified form and S3

std::complex<double> FormMatrix::at(int i, int j) const {
    if (exact) return m(i, j).to_complex();
    return num[(size_t)i * cols + j].to_double();
}

std::optional<Cyc> sqrt_f(const ChiralData& c, int a) { return sqrt_in_field(f_a(c, a)); }

FormMatrix modified_form(const ChiralData& c, const Triple& t) {
    PairingData p;
    p.pairing[t] = pairing_matrix(c, t);
    return modified_form(c, p, t);
}

FormMatrix modified_form(const ChiralData& c, const PairingData& p, const Triple& t) {
    const CMat& P = p.pairing.at(t);
    FormMatrix out;
    out.rows = P.rows;
    out.cols = P.cols;
    auto r1 = sqrt_f(c, t[0]), r2 = sqrt_f(c, t[1]), r3 = sqrt_f(c, t[2]);
    if (r1 && r2 && r3) {
        out.exact = true;
        out.m = P * (*r3 / (*r1 * *r2));
        return out;
    }
    out.exact = false;
    PrecisionGuard g(kFormDigits + 10);
    auto hs = [&](int a) { return hsqrt_principal(f_a(c, a).embed(kFormDigits)); };
    HComplex fac = hs(t[2]) / (hs(t[0]) * hs(t[1]));
    for (int i = 0; i < P.rows; ++i)
        for (int j = 0; j < P.cols; ++j) out.num.push_back(fac * P(i, j).embed(kFormDigits));
    return out;
}

Report verify_s3_relations(const ChiralData& c) {
    Report r;
    r.suite = "s3-relations";
    r.identity = "S3 relations and canonical normalization of sigma12, sigma23";
    const auto& f = c.fusion;
    int e = c.e();
    for (const auto& [t, mult] : nonzero_spaces(f)) {
        Triple t12 = swap12(t), t23 = swap23(f, t);
        auto s12 = c.sigma.s12.find(t), s23 = c.sigma.s23.find(t);
        bool shape = s12 != c.sigma.s12.end() && s23 != c.sigma.s23.end() && s12->second.cols == mult &&
                     s12->second.rows == f.N(t12) && s23->second.cols == mult && s23->second.rows == f.N(t23);
        r.add("sigma-shape", tidx(f, t), shape);
        if (!shape) continue;
    }
    if (!r.pass()) return r;
    for (const auto& [t, mult] : nonzero_spaces(f)) {
        Triple t12 = swap12(t), t23 = swap23(f, t);
        CMat a = c.sigma.s12.at(t12) * c.sigma.s12.at(t);
        r.add("sigma12-involution", tidx(f, t), a.is_identity(), a.is_identity() ? "" : a.str());
        CMat b = c.sigma.s23.at(t23) * c.sigma.s23.at(t);
        r.add("sigma23-involution", tidx(f, t), b.is_identity(), b.is_identity() ? "" : b.str());
        // sigma12 sigma23 sigma12 = sigma23 sigma12 sigma23 as maps out of V_t
        Triple u = swap23(f, t12);
        CMat lhs = c.sigma.s12.at(u) * c.sigma.s23.at(t12) * c.sigma.s12.at(t);
        Triple v = swap12(t23);
        CMat rhs = c.sigma.s23.at(v) * c.sigma.s12.at(t23) * c.sigma.s23.at(t);
        r.add("braid-relation", tidx(f, t), lhs == rhs, lhs == rhs ? "" : (lhs - rhs).str());
    }
    auto canon_map = [&](const std::map<Triple, CMat>& m, const Triple& from, const Triple& to) {
        const CMat& s = m.at(from);
        int col = c.canon(from), row = c.canon(to);
        for (int i = 0; i < s.rows; ++i)
            if (s(i, col) != (i == row ? c.one() : c.zero())) return false;
        return true;
    };
    for (int a = 0; a < f.size(); ++a) {
        int ad = c.dual(a);
        r.add("canonical-sigma12-unit", idx(f, {e, a, a}), canon_map(c.sigma.s12, {e, a, a}, {a, e, a}));
        r.add("canonical-sigma23-unit", idx(f, {a, e, a}), canon_map(c.sigma.s23, {a, e, a}, {a, ad, e}));
        r.add("canonical-sigma12-coevaluation", idx(f, {a, ad, e}), canon_map(c.sigma.s12, {a, ad, e}, {ad, a, e}));
    }
    return r;
}

namespace {

// Compares form matrices; returns (ok, residual string, path).
std::tuple<bool, std::string, std::string> compare_forms(const FormMatrix& lhs, const CMat& Sl, const FormMatrix& mid,
                                                         const CMat& Sr) {
    // lhs == Sl^T * mid * Sr
    if (lhs.exact && mid.exact) {
        CMat v = Sl.transpose() * mid.m * Sr;
        bool ok = v == lhs.m;
        return {ok, ok ? "0" : (v - lhs.m).str(), "exact"};
    }
    PrecisionGuard g(kFormDigits + 10);
    auto midv = [&](int i, int j) {
        return mid.exact ? mid.m(i, j).embed(kFormDigits) : mid.num[(size_t)i * mid.cols + j];
    };
    auto lhsv = [&](int i, int j) {
        return lhs.exact ? lhs.m(i, j).embed(kFormDigits) : lhs.num[(size_t)i * lhs.cols + j];
    };
    Real maxdiff = 0, scale = 0;
    for (int i = 0; i < lhs.rows; ++i)
        for (int j = 0; j < lhs.cols; ++j) {
            HComplex s;
            for (int p = 0; p < Sl.rows; ++p)
                for (int q = 0; q < Sr.rows; ++q) {
                    if (Sl(p, i).is_zero() || Sr(q, j).is_zero()) continue;
                    s = s + Sl(p, i).embed(kFormDigits) * midv(p, q) * Sr(q, j).embed(kFormDigits);
                }
            HComplex want = lhsv(i, j);
            Real d = (s - want).abs();
            if (d > maxdiff) maxdiff = d;
            Real w = want.abs();
            if (w > scale) scale = w;
        }
    Real rel = scale > 0 ? maxdiff / scale : maxdiff;
    bool ok = rel <= Real(kFormTolerance);
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << rel.convert_to<double>();
    return {ok, os.str(), "numeric"};
}

}  // namespace

Report verify_s3_invariance(const ChiralData& c) {
    Report r;
    r.suite = "s3";
    r.identity = "S3-invariance of the modified form";
    const auto& f = c.fusion;
    PairingData p = compute_pairings(c, &r);
    std::map<Triple, FormMatrix> Q;
    for (const auto& [t, m] : nonzero_spaces(f)) Q[t] = modified_form(c, p, t);
    for (const auto& [t, m] : nonzero_spaces(f)) {
        Triple pt = primed(f, t);
        for (int which : {12, 23}) {
            Triple st = which == 12 ? swap12(t) : swap23(f, t);
            const auto& S = which == 12 ? c.sigma.s12 : c.sigma.s23;
            auto [ok, res, path] = compare_forms(Q.at(t), S.at(t), Q.at(st), S.at(pt));
            r.add(which == 12 ? "form-invariance-sigma12" : "form-invariance-sigma23", tidx(f, t), ok, res, path);
            // the unmodified pairing picks up F_{a3}/F_{a2} under sigma23 and nothing under sigma12
            CMat moved = S.at(t).transpose() * p.pairing.at(st) * S.at(pt);
            Cyc factor = which == 12 ? c.one() : f_a(c, t[2]) / f_a(c, t[1]);
            CMat want = p.pairing.at(t) * factor;
            bool fok = moved == want;
            r.add(which == 12 ? "pairing-factor-sigma12" : "pairing-factor-sigma23", tidx(f, t), fok,
                  fok ? "" : (moved - want).str());
        }
    }
    return r;
}

}  // namespace ffw
