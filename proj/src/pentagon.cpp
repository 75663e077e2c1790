#include "ffw/pentagon.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ffw {

namespace {

using Mono = std::vector<short>;

// Sparse multivariate polynomial over Q(zeta_N).
struct Poly {
    int order = 0;
    std::map<Mono, Cyc> t;

    static Poly constant(int order, int nvars, const Cyc& c) {
        Poly p{order, {}};
        if (!c.is_zero()) p.t.emplace(Mono(nvars, 0), c);
        return p;
    }
    static Poly var(int order, int nvars, int v) {
        Poly p{order, {}};
        Mono m(nvars, 0);
        m[v] = 1;
        p.t.emplace(m, Cyc(order, 1));
        return p;
    }
    bool is_zero() const { return t.empty(); }
    bool is_constant() const {
        return t.empty() || (t.size() == 1 && std::all_of(t.begin()->first.begin(), t.begin()->first.end(),
                                                          [](short e) { return e == 0; }));
    }
    Cyc constant_value() const { return t.empty() ? Cyc(order) : t.begin()->second; }
    void add_term(const Mono& m, const Cyc& c) {
        auto it = t.find(m);
        if (it == t.end()) {
            if (!c.is_zero()) t.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.t) r.add_term(m, c);
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.t) r.add_term(m, -c);
        return r;
    }
    Poly operator*(const Poly& o) const {
        Poly r{order, {}};
        for (const auto& [m1, c1] : t)
            for (const auto& [m2, c2] : o.t) {
                Mono m = m1;
                for (size_t i = 0; i < m.size(); ++i) m[i] += m2[i];
                r.add_term(m, c1 * c2);
            }
        return r;
    }
    Poly scaled(const Cyc& s) const {
        Poly r = *this;
        for (auto& [m, c] : r.t) c *= s;
        return r;
    }
    std::vector<int> vars() const {
        std::vector<int> out;
        if (t.empty()) return out;
        size_t n = t.begin()->first.size();
        for (size_t v = 0; v < n; ++v)
            for (const auto& [m, c] : t)
                if (m[v]) {
                    out.push_back((int)v);
                    break;
                }
        return out;
    }
    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : t) {
            int s = 0;
            for (short e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }
    // Substitutes x_v := q.
    Poly subst(int v, const Poly& q) const {
        Poly r{order, {}};
        std::vector<Poly> powers{Poly::constant(order, (int)(t.empty() ? 0 : t.begin()->first.size()), Cyc(order, 1))};
        for (const auto& [m, c] : t) {
            if (!m[v]) {
                r.add_term(m, c);
                continue;
            }
            while ((int)powers.size() <= m[v]) powers.push_back(powers.back() * q);
            Mono base = m;
            base[v] = 0;
            Poly mono{order, {}};
            mono.t.emplace(base, c);
            r = r + mono * powers[m[v]];
        }
        return r;
    }
    // Monic normalization for deduplication.
    Poly normalized() const {
        if (t.empty()) return *this;
        return scaled(t.rbegin()->second.inverse());
    }
    bool operator==(const Poly& o) const { return t == o.t; }
};

struct Solver {
    const FusionData& f;
    int order;
    int nvars = 0;
    std::vector<FKey> unknown;           // variable index -> key
    std::map<FKey, int> var_of;
    std::map<FKey, Cyc> fixed_units;     // keys with a unit among a1..a3
    std::vector<std::map<Triple, int>> rows;
    std::vector<PentagonSolution> out;
    int branches = 0;

    Solver(const FusionData& fd, int n) : f(fd), order(n) {}

    Poly entry(const FKey& k) const {
        auto it = var_of.find(k);
        if (it != var_of.end()) return Poly::var(order, nvars, it->second);
        auto u = fixed_units.find(k);
        if (u != fixed_units.end()) return Poly::constant(order, nvars, u->second);
        return Poly{order, {}};
    }

    struct State {
        std::vector<Poly> eqs;
        std::map<int, Poly> known;
        std::set<int> nonzero;
        std::vector<GaugePivot> pivots;
        std::vector<std::pair<Triple, std::map<Triple, int>>> reduced;  // (pivot param, reduced row)
    };

    std::map<Triple, int> reduce(const std::map<Triple, int>& row, const State& s) const {
        std::map<Triple, int> r = row;
        for (const auto& [p, pr] : s.reduced) {
            auto it = r.find(p);
            if (it == r.end() || it->second == 0) continue;
            int c = it->second * pr.at(p);  // pr[p] = +-1
            for (const auto& [k, v] : pr) r[k] -= c * v;
            for (auto i = r.begin(); i != r.end();) i = i->second == 0 ? r.erase(i) : std::next(i);
        }
        return r;
    }

    bool try_pivot(int v, State& s) const {
        auto r = reduce(rows[v], s);
        for (const auto& [p, c] : r)
            if (c == 1 || c == -1) {
                s.reduced.emplace_back(p, r);
                s.pivots.push_back({unknown[v], p, r});
                return true;
            }
        return false;
    }

    void assign(State& s, int v, const Poly& val) const {
        for (auto& [k, q] : s.known) q = q.subst(v, val);
        s.known[v] = val;
        for (auto& e : s.eqs) e = e.subst(v, val);
    }

    // Removes zeros and duplicates; false when a nonzero constant appears.
    bool clean(State& s) const {
        std::vector<Poly> out;
        for (auto& e : s.eqs) {
            if (e.is_zero()) continue;
            if (e.is_constant()) return false;
            // strip powers of variables known to be nonzero
            Mono common;
            bool first = true;
            for (const auto& [m, c] : e.t) {
                if (first) {
                    common = m;
                    first = false;
                } else
                    for (size_t i = 0; i < m.size(); ++i) common[i] = std::min(common[i], m[i]);
            }
            bool strip = false;
            for (size_t i = 0; i < common.size(); ++i) {
                if (common[i] && s.nonzero.count((int)i)) strip = true;
                else common[i] = 0;
            }
            if (strip) {
                Poly r{order, {}};
                for (const auto& [m, c] : e.t) {
                    Mono mm = m;
                    for (size_t i = 0; i < mm.size(); ++i) mm[i] -= common[i];
                    r.t.emplace(mm, c);
                }
                e = r;
                if (e.is_constant()) return false;
            }
            Poly n = e.normalized();
            if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
        }
        s.eqs = std::move(out);
        return true;
    }

    void finish(State& s) {
        PentagonSolution sol;
        for (const auto& [k, v] : fixed_units) sol.values[k] = v;
        for (int v = 0; v < nvars; ++v) {
            auto it = s.known.find(v);
            if (it == s.known.end() || !it->second.is_constant()) return;
            sol.values[unknown[v]] = it->second.constant_value();
        }
        // every fusing block must be invertible
        std::map<std::array<int, 4>, std::vector<FKey>> blocks;
        for (const auto& [k, x] : sol.values) blocks[{k.a1, k.a2, k.a3, k.a4}].push_back(k);
        for (const auto& [b, keys] : blocks) {
            std::vector<int> r5, r6;
            for (const auto& k : keys) {
                if (std::find(r5.begin(), r5.end(), k.a5) == r5.end()) r5.push_back(k.a5);
                if (std::find(r6.begin(), r6.end(), k.a6) == r6.end()) r6.push_back(k.a6);
            }
            if (r5.size() != r6.size()) return;
            CMat M(order, (int)r5.size(), (int)r6.size());
            for (const auto& k : keys) {
                int i = int(std::find(r5.begin(), r5.end(), k.a5) - r5.begin());
                int j = int(std::find(r6.begin(), r6.end(), k.a6) - r6.begin());
                M(i, j) = sol.values.at(k);
            }
            if (!M.inverse()) return;
        }
        sol.pivots = s.pivots;
        out.push_back(std::move(sol));
    }

    void rec(State s) {
        ++branches;
        if (!clean(s)) return;
        std::vector<int> free;
        for (int v = 0; v < nvars; ++v)
            if (!s.known.count(v)) free.push_back(v);
        if (free.empty()) {
            finish(s);
            return;
        }
        if (s.eqs.empty()) {
            // leftover freedom must be gauge
            for (int v : free)
                if (try_pivot(v, s)) {
                    s.nonzero.insert(v);
                    assign(s, v, Poly::constant(order, nvars, Cyc(order, 1)));
                    rec(std::move(s));
                    return;
                }
            throw std::runtime_error("pentagon system has a continuous family of solutions");
        }
        std::vector<size_t> idx(s.eqs.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            auto va = s.eqs[a].vars().size(), vb = s.eqs[b].vars().size();
            if (va != vb) return va < vb;
            return s.eqs[a].total_degree() < s.eqs[b].total_degree();
        });
        // univariate equation: branch over its roots in the field
        for (size_t i : idx) {
            auto vs = s.eqs[i].vars();
            if (vs.size() != 1) continue;
            int x = vs[0];
            int deg = 0;
            for (const auto& [m, c] : s.eqs[i].t) deg = std::max<int>(deg, m[x]);
            std::vector<Cyc> coeffs(deg + 1, Cyc(order));
            for (const auto& [m, c] : s.eqs[i].t) coeffs[m[x]] = c;
            for (const Cyc& r : roots_in_field(coeffs)) {
                if (r.is_zero() && s.nonzero.count(x)) continue;
                State t = s;
                if (!r.is_zero()) t.nonzero.insert(x);
                assign(t, x, Poly::constant(order, nvars, r));
                rec(std::move(t));
            }
            return;
        }
        // a variable occurring only as a bare linear term: eliminate it
        for (size_t i : idx) {
            const Poly& e = s.eqs[i];
            for (int x : e.vars()) {
                bool ok = true;
                Cyc coef;
                for (const auto& [m, c] : e.t) {
                    if (!m[x]) continue;
                    bool bare = m[x] == 1;
                    for (size_t j = 0; j < m.size() && bare; ++j)
                        if ((int)j != x && m[j]) bare = false;
                    if (!bare) {
                        ok = false;
                        break;
                    }
                    coef = c;
                }
                if (!ok) continue;
                Mono mx(nvars, 0);
                mx[x] = 1;
                Poly rest = e;
                rest.t.erase(mx);
                Poly val = rest.scaled(-coef.inverse());
                State t = s;
                assign(t, x, val);
                rec(std::move(t));
                return;
            }
        }
        // a variable dividing an equation: zero or not
        for (size_t i : idx) {
            const Poly& e = s.eqs[i];
            for (int x : e.vars()) {
                bool divides = std::all_of(e.t.begin(), e.t.end(), [&](const auto& mc) { return mc.first[x] > 0; });
                if (!divides || s.nonzero.count(x)) continue;
                State z = s;
                assign(z, x, Poly{order, {}});
                rec(std::move(z));
                State nz = s;
                nz.nonzero.insert(x);
                rec(std::move(nz));
                return;
            }
        }
        // stuck: use remaining gauge freedom on some variable
        for (int v : free) {
            State probe = s;
            if (!try_pivot(v, probe)) continue;
            if (!s.nonzero.count(v)) {
                State z = s;
                assign(z, v, Poly{order, {}});
                rec(std::move(z));
            }
            probe.nonzero.insert(v);
            assign(probe, v, Poly::constant(order, nvars, Cyc(order, 1)));
            rec(std::move(probe));
            return;
        }
        throw std::runtime_error("pentagon solver stuck without gauge freedom");
    }
};

}  // namespace

std::map<Triple, int> gauge_row(const FusionData& f, const FKey& k) {
    std::map<Triple, int> r;
    auto add = [&](Triple t, int s) {
        if (t[0] == f.unit || t[1] == f.unit) return;
        r[t] += s;
    };
    add({k.a1, k.a5, k.a4}, 1);
    add({k.a2, k.a3, k.a5}, 1);
    add({k.a6, k.a3, k.a4}, -1);
    add({k.a1, k.a2, k.a6}, -1);
    for (auto i = r.begin(); i != r.end();) i = i->second == 0 ? r.erase(i) : std::next(i);
    return r;
}

std::vector<PentagonSolution> solve_pentagon(const FusionData& fusion, int order, SolveStats* stats) {
    if (fusion.size() > 4) throw std::invalid_argument("pentagon solver is limited to at most four labels");
    for (const auto& [t, m] : fusion.fusion)
        if (m > 1) throw std::invalid_argument("pentagon solver needs multiplicity-free fusion");
    Solver S(fusion, order);
    FTensor probe(order, &fusion);
    int e = fusion.unit;
    for (const FKey& k : probe.admissible_keys()) {
        if (k.a1 == e || k.a2 == e || k.a3 == e) {
            S.fixed_units[k] = Cyc(order, 1);
            continue;
        }
        S.var_of[k] = (int)S.unknown.size();
        S.unknown.push_back(k);
    }
    S.nvars = (int)S.unknown.size();
    for (const FKey& k : S.unknown) S.rows.push_back(gauge_row(fusion, k));

    Solver::State st;
    int n = fusion.size();
    auto Nf = [&](int a, int b, int c) { return fusion.N(a, b, c) > 0; };
    for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
    for (int a3 = 0; a3 < n; ++a3)
    for (int a4 = 0; a4 < n; ++a4)
    for (int ee = 0; ee < n; ++ee)
    for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
    for (int ff = 0; ff < n; ++ff)
    for (int g = 0; g < n; ++g) {
        if (!(Nf(a1, b, ee) && Nf(a2, c, b) && Nf(a3, a4, c) && Nf(ff, a3, g) && Nf(g, a4, ee) && Nf(a1, a2, ff)))
            continue;
        Poly lhs = S.entry({a1, a2, c, ee, b, ff}) * S.entry({ff, a3, a4, ee, c, g});
        Poly rhs{order, {}};
        for (int h = 0; h < n; ++h)
            rhs = rhs + S.entry({a2, a3, a4, b, c, h}) * S.entry({a1, h, a4, ee, b, g}) * S.entry({a1, a2, a3, g, h, ff});
        Poly d = lhs - rhs;
        if (!d.is_zero()) st.eqs.push_back(d);
    }
    if (stats) {
        stats->unknowns = S.nvars;
        stats->equations = (int)st.eqs.size();
    }
    // greedy gauge fixing on entries of 1x1 blocks (these can never vanish)
    std::map<std::array<int, 4>, int> block_size;
    for (const FKey& k : probe.admissible_keys()) ++block_size[{k.a1, k.a2, k.a3, k.a4}];
    for (int v = 0; v < S.nvars; ++v) {
        const FKey& k = S.unknown[v];
        if (block_size[{k.a1, k.a2, k.a3, k.a4}] != 1) continue;
        st.nonzero.insert(v);
        if (S.try_pivot(v, st)) S.assign(st, v, Poly::constant(order, S.nvars, Cyc(order, 1)));
    }
    S.rec(std::move(st));
    if (stats) stats->branches = S.branches;
    std::vector<PentagonSolution> verified;
    for (auto& sol : S.out) {
        ChiralData c;
        c.order = order;
        c.fusion = fusion;
        c.F = FTensor(order, &c.fusion);
        fill_tensor(c.F, sol.values);
        if (verify_pentagon(c).pass()) verified.push_back(std::move(sol));
    }
    return verified;
}

std::optional<FValues> to_solver_gauge(const FusionData& f, const FValues& G, const PentagonSolution& s) {
    FValues cur = G;
    for (size_t i = 0; i < s.pivots.size(); ++i) {
        auto it = cur.find(s.pivots[i].entry);
        if (it == cur.end() || it->second.is_zero()) return std::nullopt;
        Cyc x = it->second;
        // integer w with reduced_j . w = delta_{ij} for j <= i; pivot coefficients are +-1
        std::map<Triple, long> w;
        for (size_t j = i + 1; j-- > 0;) {
            const auto& row = s.pivots[j].row;
            long rhs = j == i ? 1 : 0;
            for (const auto& [p, c] : row)
                if (p != s.pivots[j].param && w.count(p)) rhs -= c * w[p];
            w[s.pivots[j].param] = rhs * row.at(s.pivots[j].param);
        }
        // lambda_p = x^{-w_p}
        for (auto& [k, v] : cur) {
            long e = 0;
            for (const auto& [p, c] : gauge_row(f, k)) {
                auto wi = w.find(p);
                if (wi != w.end()) e += c * wi->second;
            }
            if (e) v *= x.pow(-e);
        }
    }
    return cur;
}

bool gauge_equivalent(const FusionData& f, const FValues& G, const std::vector<PentagonSolution>& sols) {
    for (const auto& s : sols) {
        auto g = to_solver_gauge(f, G, s);
        if (g && *g == s.values) return true;
    }
    return false;
}

FValues values_of(const FTensor& F) {
    FValues v;
    for (const auto& [k, b] : F.blocks()) v[k] = b.at(0, 0, 0, 0);
    return v;
}

void fill_tensor(FTensor& F, const FValues& v) {
    for (const auto& [k, x] : v) F.set(k, 0, 0, 0, 0, x);
}

}  // namespace ffw
