#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <vector>

namespace ffw {

// Rank-1 lattice L = Z alpha with <alpha,alpha> = 2k.  A charge n stands for the
// point n*gamma of the dual lattice, gamma = alpha/2k, so <n gamma, m gamma> = nm/2k.
inline mpq_class frac(long a, long b) {
    mpq_class q{mpz_class(a), mpz_class(b)};
    q.canonicalize();
    return q;
}

struct LatticeSpec {
    int k = 1;
    int T = 8;  // maximum conformal weight retained in a chiral half

    int sectors() const { return 2 * k; }
    int sector(long n) const;         // n mod 2k in [0, 2k)
    int rep(int j) const;             // representative of sector j in {-k+1, ..., k}
    mpq_class h(int j) const;         // rep(j)^2 / 4k
    mpq_class charge_weight(long n) const { return frac(n * n, 4L * k); }
    // Cocycle of the intertwining operators: (-1)^{m q(n)}, n = rep + 2k q(n).
    int cocycle(long m, long n) const;
};

using Partition = std::vector<int>;  // non-increasing positive parts

int level(const Partition& p);
Partition add_part(const Partition& p, int j);
int multiplicity(const Partition& p, int j);
Partition remove_part(const Partition& p, int j);  // one copy; p must contain j
std::vector<Partition> partitions_of(int n);

struct BasisState {
    long charge = 0;
    Partition mu;
    auto operator<=>(const BasisState&) const = default;
};

mpq_class weight(const LatticeSpec& s, const BasisState& b);

template <class C>
struct FockVec {
    std::map<BasisState, C> c;

    void add(const BasisState& b, const C& v) {
        if (v == C(0)) return;
        auto [it, fresh] = c.emplace(b, v);
        if (!fresh) {
            it->second += v;
            if (it->second == C(0)) c.erase(it);
        }
    }
    bool empty() const { return c.empty(); }
    FockVec& operator+=(const FockVec& o) {
        for (const auto& [b, v] : o.c) add(b, v);
        return *this;
    }
    FockVec scaled(const C& x) const {
        FockVec r;
        for (const auto& [b, v] : c) r.add(b, v * x);
        return r;
    }
};

using QVec = FockVec<mpq_class>;
using FockVector = FockVec<std::complex<double>>;

QVec basis_vec(long charge, Partition mu = {});
FockVector to_numeric(const QVec& v);
inline std::complex<double> as_scalar(const mpq_class& q, std::complex<double>*) { return {q.get_d(), 0.0}; }
inline mpq_class as_scalar(const mpq_class& q, mpq_class*) { return q; }

// Basis of the sector-j module up to weight wmax.
std::vector<BasisState> states_up_to(const LatticeSpec& s, int j, const mpq_class& wmax);

// Heisenberg mode a(n) = alpha(n), [a(m), a(n)] = 2k m delta_{m+n,0}.
template <class C>
FockVec<C> heis(const LatticeSpec& s, int n, const FockVec<C>& v) {
    FockVec<C> r;
    for (const auto& [b, x] : v.c) {
        if (n < 0) {
            r.add({b.charge, add_part(b.mu, -n)}, x);
        } else if (n == 0) {
            if (b.charge) r.add(b, x * as_scalar(mpq_class(b.charge), (C*)nullptr));
        } else if (int m = multiplicity(b.mu, n)) {
            r.add({b.charge, remove_part(b.mu, n)}, x * as_scalar(mpq_class(2L * s.k * n * m), (C*)nullptr));
        }
    }
    return r;
}

template <class C>
int max_part(const FockVec<C>& v) {
    int m = 0;
    for (const auto& [b, x] : v.c)
        if (!b.mu.empty()) m = std::max(m, b.mu.front());
    return m;
}

// Virasoro L(n) = (1/4k) sum_j :a(j) a(n-j):, central charge 1.
template <class C>
FockVec<C> vir(const LatticeSpec& s, int n, const FockVec<C>& v) {
    FockVec<C> r;
    const int top = std::max(max_part(v), 0);
    const int start = n >= 0 ? (n + 1) / 2 : n / 2;
    for (int q = start; q <= std::max(top, start); ++q) {
        int p = n - q;
        if (p > q) continue;
        FockVec<C> t = heis(s, p, heis(s, q, v));
        r += t.scaled(as_scalar(frac(p == q ? 1 : 2, 4L * s.k), (C*)nullptr));
    }
    return r;
}

// e^{x L(1)} on a finite vector (L(1) lowers weight, so the series terminates).
QVec exp_l1(const LatticeSpec& s, const mpq_class& x, const QVec& v);

// Graded components of Y(u, z)w for the lattice intertwining operator of charges
// (m, n) -> m+n, keyed by the exponent of z; output states above max_weight are
// dropped and `truncated` is raised.
struct ChiralSeries {
    std::map<mpq_class, QVec> comp;
    bool truncated = false;
};
ChiralSeries chiral_apply(const LatticeSpec& s, const QVec& u, const QVec& w, const mpq_class& max_weight);

}  // namespace ffw
