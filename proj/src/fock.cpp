#include "ffw/fock.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ffw {

int LatticeSpec::sector(long n) const {
    long m = 2L * k;
    return (int)(((n % m) + m) % m);
}

int LatticeSpec::rep(int j) const { return j > k ? j - 2 * k : j; }

mpq_class LatticeSpec::h(int j) const { return charge_weight(rep(j)); }

int LatticeSpec::cocycle(long m, long n) const {
    long q = (n - rep(sector(n))) / (2L * k);
    return ((m * q) % 2 == 0) ? 1 : -1;
}

int level(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

Partition add_part(const Partition& p, int j) {
    Partition r = p;
    r.insert(std::upper_bound(r.begin(), r.end(), j, std::greater<int>()), j);
    return r;
}

int multiplicity(const Partition& p, int j) { return (int)std::count(p.begin(), p.end(), j); }

Partition remove_part(const Partition& p, int j) {
    Partition r = p;
    r.erase(std::find(r.begin(), r.end(), j));
    return r;
}

static void partitions_rec(int n, int maxp, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int j = std::min(n, maxp); j >= 1; --j) {
        cur.push_back(j);
        partitions_rec(n - j, j, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    partitions_rec(n, n, cur, out);
    return out;
}

mpq_class weight(const LatticeSpec& s, const BasisState& b) { return s.charge_weight(b.charge) + level(b.mu); }

QVec basis_vec(long charge, Partition mu) {
    QVec v;
    v.add({charge, std::move(mu)}, 1);
    return v;
}

FockVector to_numeric(const QVec& v) {
    FockVector r;
    for (const auto& [b, x] : v.c) r.add(b, {x.get_d(), 0.0});
    return r;
}

std::vector<BasisState> states_up_to(const LatticeSpec& s, int j, const mpq_class& wmax) {
    std::vector<BasisState> out;
    long lo = s.rep(j);
    while (s.charge_weight(lo - 2 * s.k) <= wmax) lo -= 2 * s.k;
    for (long n = lo; s.charge_weight(n) <= wmax; n += 2 * s.k) {
        mpq_class room = wmax - s.charge_weight(n);
        long lmax = mpz_class(room.get_num() / room.get_den()).get_si();
        for (int l = 0; l <= lmax; ++l)
            for (auto& p : partitions_of(l)) out.push_back({n, p});
    }
    return out;
}

QVec exp_l1(const LatticeSpec& s, const mpq_class& x, const QVec& v) {
    QVec r = v, term = v;
    for (int j = 1; !term.empty(); ++j) {
        term = vir(s, 1, term).scaled(x / j);
        r += term;
    }
    return r;
}

namespace {

mpq_class binom(long n, long r) {
    if (r < 0 || n < r) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), (unsigned long)n, (unsigned long)r);
    return b;
}

using Poly = std::map<Partition, mpq_class>;
using ZPoly = std::map<long, Poly>;  // integer z-offset -> polynomial in the creation variables

void addp(Poly& p, const Partition& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

// Annihilation half of the j-th derivative factor, part p:
// sum_{j>=0} (-1)^{p-1} C(j+p-1, p-1) a(j) z^{-j-p}, acting on charge n.
ZPoly apply_plus(const LatticeSpec& s, int p, long n, const ZPoly& x) {
    ZPoly r;
    mpq_class sign = (p % 2 == 1) ? 1 : -1;
    for (const auto& [zp, poly] : x)
        for (const auto& [mu, c] : poly) {
            if (n != 0) addp(r[zp - p], mu, c * sign * n);
            int last = 0;
            for (int j : mu) {
                if (j == last) continue;
                last = j;
                int mult = multiplicity(mu, j);
                mpq_class coef = sign * binom(j + p - 1, p - 1) * (2L * s.k * j * mult);
                addp(r[zp - j - p], remove_part(mu, j), c * coef);
            }
        }
    return r;
}

// E^+(z): x_j -> x_j - m z^{-j}.
ZPoly apply_shift(long m, const ZPoly& x) {
    ZPoly r;
    for (const auto& [zp, poly] : x)
        for (const auto& [mu, c] : poly) {
            std::vector<std::pair<int, int>> groups;  // (part, multiplicity)
            for (int j : mu) {
                if (!groups.empty() && groups.back().first == j) ++groups.back().second;
                else groups.push_back({j, 1});
            }
            std::function<void(size_t, Partition, long, mpq_class)> rec = [&](size_t g, Partition kept, long off,
                                                                               mpq_class coef) {
                if (g == groups.size()) {
                    std::sort(kept.begin(), kept.end(), std::greater<int>());
                    addp(r[zp + off], kept, c * coef);
                    return;
                }
                auto [j, mult] = groups[g];
                mpq_class mm = -m;
                for (int t = 0; t <= mult; ++t) {
                    Partition k2 = kept;
                    for (int i = 0; i < mult - t; ++i) k2.push_back(j);
                    mpq_class pw = 1;
                    for (int i = 0; i < t; ++i) pw *= mm;
                    if (t > 0 && m == 0) break;
                    rec(g + 1, k2, off - (long)j * t, coef * binom(mult, t) * pw);
                }
            };
            rec(0, {}, 0, 1);
        }
    return r;
}

// Multiply by E^-(z) = exp(sum_l (m/2k) x_l z^l / l), keeping levels <= lmax.
ZPoly apply_create_exp(const LatticeSpec& s, long m, int lmax, const ZPoly& x, bool& truncated) {
    if (m == 0) return x;
    truncated = true;
    // coefficients of the exponential on partitions up to lmax
    std::vector<std::pair<Partition, mpq_class>> ex;
    for (int l = 0; l <= lmax; ++l)
        for (auto& lam : partitions_of(l)) {
            mpq_class c = 1;
            int i = 0;
            while (i < (int)lam.size()) {
                int j = lam[i], r = 0;
                while (i < (int)lam.size() && lam[i] == j) ++i, ++r;
                mpq_class base = frac(m, 2L * s.k * j);
                for (int t = 1; t <= r; ++t) c *= base / t;
            }
            ex.push_back({lam, c});
        }
    ZPoly r;
    for (const auto& [zp, poly] : x)
        for (const auto& [mu, c] : poly) {
            int lv = level(mu);
            for (const auto& [lam, e] : ex) {
                int ll = level(lam);
                if (lv + ll > lmax) continue;
                Partition merged = mu;
                merged.insert(merged.end(), lam.begin(), lam.end());
                std::sort(merged.begin(), merged.end(), std::greater<int>());
                addp(r[zp + ll], merged, c * e);
            }
        }
    return r;
}

// Creation half of the derivative factor: sum_{l>=p} C(l-1, p-1) x_l z^{l-p}.
ZPoly apply_minus(int p, int lmax, const ZPoly& x, bool& truncated) {
    ZPoly r;
    truncated = true;
    for (const auto& [zp, poly] : x)
        for (const auto& [mu, c] : poly) {
            int lv = level(mu);
            for (int l = p; lv + l <= lmax; ++l) addp(r[zp + l - p], add_part(mu, l), c * binom(l - 1, p - 1));
        }
    return r;
}

}  // namespace

ChiralSeries chiral_apply(const LatticeSpec& s, const QVec& u, const QVec& w, const mpq_class& max_weight) {
    ChiralSeries out;
    for (const auto& [ub, uc] : u.c)
        for (const auto& [wb, wc] : w.c) {
            const long m = ub.charge, n = wb.charge;
            mpq_class room = max_weight - s.charge_weight(m + n);
            if (room < 0) {
                out.truncated = true;
                continue;
            }
            int lmax = (int)mpz_class(room.get_num() / room.get_den()).get_si();
            mpq_class base = frac(m * n, 2L * s.k);
            mpq_class pref = uc * wc * s.cocycle(m, n);
            const auto& nu = ub.mu;
            const int r = (int)nu.size();
            for (int mask = 0; mask < (1 << r); ++mask) {
                ZPoly x;
                x[0][wb.mu] = 1;
                for (int i = 0; i < r; ++i)
                    if (!(mask >> i & 1)) x = apply_plus(s, nu[i], n, x);
                x = apply_shift(m, x);
                bool tr = false;
                for (auto it = x.begin(); it != x.end();) {
                    for (auto jt = it->second.begin(); jt != it->second.end();)
                        jt = level(jt->first) > lmax ? (tr = true, it->second.erase(jt)) : std::next(jt);
                    it = it->second.empty() ? x.erase(it) : std::next(it);
                }
                x = apply_create_exp(s, m, lmax, x, tr);
                for (int i = 0; i < r; ++i)
                    if (mask >> i & 1) x = apply_minus(nu[i], lmax, x, tr);
                out.truncated = out.truncated || tr;
                for (const auto& [zp, poly] : x)
                    for (const auto& [mu, c] : poly) out.comp[base + zp].add({m + n, mu}, c * pref);
            }
        }
    for (auto it = out.comp.begin(); it != out.comp.end();) it = it->second.empty() ? out.comp.erase(it) : std::next(it);
    return out;
}

}  // namespace ffw
