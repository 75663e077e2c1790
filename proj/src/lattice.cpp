#include "ffw/lattice.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "ffw/ffa.hpp"

namespace ffw {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

QVec unit(const BasisState& b) {
    QVec v;
    v.add(b, 1);
    return v;
}

std::string state_str(const BasisState& b) {
    std::string s = "e^" + std::to_string(b.charge);
    for (int p : b.mu) s += " a(-" + std::to_string(p) + ")";
    return s;
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

std::map<std::pair<mpq_class, mpq_class>, mpq_class> collect(std::vector<Term2>& raw) {
    std::map<std::pair<mpq_class, mpq_class>, mpq_class> acc;
    for (auto& t : raw) acc[{t.e1, t.e2}] += t.c;
    return acc;
}

std::vector<Term2> flatten(const std::map<std::pair<mpq_class, mpq_class>, mpq_class>& acc) {
    std::vector<Term2> out;
    for (const auto& [e, c] : acc)
        if (c != 0) out.push_back({c, e.first, e.second});
    return out;
}

}  // namespace

GradedComponents chiral_io_apply(const LatticeSpec& s, long lambda, const QVec& v, int target_sector) {
    GradedComponents out;
    if (v.empty()) return out;
    int sv = s.sector(v.c.begin()->first.charge);
    if (s.sector(lambda + sv) != s.sector(target_sector)) return out;
    ChiralSeries y = chiral_apply(s, basis_vec(lambda), v, s.T);
    out.truncated = y.truncated;
    for (const auto& [e, comp] : y.comp)
        for (const auto& [b, c] : comp.c) out.by_weight[weight(s, b)].add(b, c);
    return out;
}

std::vector<Term2> product_terms(const LatticeSpec& s, const BasisState& wp, const QVec& u, const QVec& v,
                                 const QVec& w, const mpq_class& tmax) {
    ChiralSeries x = chiral_apply(s, v, w, tmax);
    const mpq_class wpw = weight(s, wp);
    std::map<BasisState, ChiralSeries> cache;
    std::vector<Term2> raw;
    for (const auto& [e2, comp] : x.comp)
        for (const auto& [b, cb] : comp.c) {
            auto it = cache.find(b);
            if (it == cache.end()) it = cache.emplace(b, chiral_apply(s, u, unit(b), wpw)).first;
            for (const auto& [e1, out] : it->second.comp) {
                auto f = out.c.find(wp);
                if (f != out.c.end()) raw.push_back({cb * f->second, e1, e2});
            }
        }
    return flatten(collect(raw));
}

std::vector<Term2> iterate_terms(const LatticeSpec& s, const BasisState& wp, const QVec& u, const QVec& v,
                                 const QVec& w, const mpq_class& tmax) {
    ChiralSeries z = chiral_apply(s, u, v, tmax);
    const mpq_class wpw = weight(s, wp);
    std::vector<Term2> raw;
    for (const auto& [e0, comp] : z.comp)
        for (const auto& [t, ct] : comp.c) {
            ChiralSeries y = chiral_apply(s, unit(t), w, wpw);
            for (const auto& [e2, out] : y.comp) {
                auto f = out.c.find(wp);
                if (f != out.c.end()) raw.push_back({ct * f->second, e0, e2});
            }
        }
    return flatten(collect(raw));
}

std::complex<double> eval_terms(const std::vector<Term2>& t, std::complex<double> l1, std::complex<double> l2) {
    std::complex<double> sum = 0;
    for (const auto& x : t) sum += x.c.get_d() * std::exp(x.e1.get_d() * l1 + x.e2.get_d() * l2);
    return sum;
}

std::complex<double> log_branch(std::complex<double> z) {
    if (z == 0.0) throw std::invalid_argument("log of zero");
    double a = std::atan2(z.imag(), z.real());
    if (a < 0) a += kTwoPi;
    return {std::log(std::abs(z)), a};
}

LatticeModel lattice_model(const LatticeSpec& s, const ChiralData& chiral) {
    if (chiral.fusion.size() != s.sectors()) throw std::invalid_argument("bundle is not a Z/2k fusion ring for this k");
    LatticeModel m;
    m.spec = s;
    FFAStructure f = construct(chiral);
    for (const auto& [t, b] : f.blocks) m.coupling[t] = b.right(0, 0).to_complex();
    return m;
}

namespace {

std::complex<double> coupling(const LatticeModel& m, long c1, long c2) {
    const auto& s = m.spec;
    Triple t{s.sector(c1), s.sector(c2), s.sector(c1 + c2)};
    return m.coupling.at(t);
}

void check_pair(const LatticeSpec& s, const PairState& p) {
    if (s.sector(p.right.charge) != s.sector(-p.left.charge))
        throw std::invalid_argument("right factor of a sector pair vector must lie in the dual sector");
}

// exp(x L(-1)) on one chiral factor, keeping weights <= tmax.
FockVector translate_one(const LatticeSpec& s, std::complex<double> x, const BasisState& b, const mpq_class& tmax) {
    FockVector r, term;
    term.add(b, 1.0);
    mpq_class w = weight(s, b);
    for (int n = 0; w <= tmax && !term.empty(); ++n, w += 1) {
        r += term;
        term = vir(s, -1, term).scaled(x / double(n + 1));
    }
    return r;
}

FullVector translate(const LatticeSpec& s, std::complex<double> z, const FullVector& v, const mpq_class& tmax) {
    FullVector out;
    for (const auto& [p, c] : v) {
        FockVector l = translate_one(s, z, p.left, tmax);
        FockVector r = translate_one(s, std::conj(z), p.right, tmax);
        for (const auto& [bl, cl] : l.c)
            for (const auto& [br, cr] : r.c) out[{bl, br}] += c * cl * cr;
    }
    return out;
}

}  // namespace

BivariateSeries full_series(const LatticeModel& m, const PairQ& u, const PairQ& v, const mpq_class& tmax) {
    const auto& s = m.spec;
    BivariateSeries out;
    for (const auto& [pu, cu] : u)
        for (const auto& [pv, cv] : v) {
            check_pair(s, pu);
            check_pair(s, pv);
            std::complex<double> d = coupling(m, pu.left.charge, pv.left.charge) * mpq_class(cu * cv).get_d();
            ChiralSeries l = chiral_apply(s, unit(pu.left), unit(pv.left), tmax);
            ChiralSeries r = chiral_apply(s, unit(pu.right), unit(pv.right), tmax);
            out.truncated = out.truncated || l.truncated || r.truncated;
            for (const auto& [el, xl] : l.comp)
                for (const auto& [er, xr] : r.comp) {
                    FullVector& fv = out.terms[{el, er}];
                    for (const auto& [bl, cl] : xl.c)
                        for (const auto& [br, cr] : xr.c) fv[{bl, br}] += d * mpq_class(cl * cr).get_d();
                }
        }
    return out;
}

FullVector evaluate(const BivariateSeries& b, std::complex<double> z) {
    std::complex<double> l = log_branch(z);
    FullVector out;
    for (const auto& [e, fv] : b.terms) {
        std::complex<double> f = std::exp(e.first.get_d() * l + e.second.get_d() * std::conj(l));
        for (const auto& [p, c] : fv) out[p] += c * f;
    }
    return out;
}

FullValue full_vertex_apply(const LatticeModel& m, const PairQ& u, const PairQ& v, std::complex<double> z, int T) {
    if (z == 0.0) throw std::invalid_argument("full vertex operator evaluated at z = 0");
    FullValue out;
    out.series = full_series(m, u, v, T);
    out.value = evaluate(out.series, z);
    std::complex<double> l = log_branch(z);
    for (const auto& [e, fv] : out.series.terms) {
        double f = std::abs(std::exp(e.first.get_d() * l + e.second.get_d() * std::conj(l)));
        for (const auto& [p, c] : fv)
            if (weight(m.spec, p.left) > T - 1 || weight(m.spec, p.right) > T - 1)
                out.tail = std::max(out.tail, std::abs(c) * f);
    }
    return out;
}

std::vector<Sample> region_samples(int count, std::uint64_t seed) {
    std::vector<Sample> out;
    if (count <= 0) return out;
    out.push_back({1.0, 0.8});
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> th(0, kTwoPi), r1(0.8, 1.2), rho(0.6, 0.75), ph(-0.3, 0.3);
    while ((int)out.size() < count) {
        std::complex<double> z1 = std::polar(r1(g), th(g));
        std::complex<double> z2 = z1 * std::polar(rho(g), ph(g));
        if (std::abs(z1) > std::abs(z2) && std::abs(z2) > std::abs(z1 - z2)) out.push_back({z1, z2});
    }
    return out;
}

namespace {

// Random chiral vector in the module of charge n: the lowest state plus
// Heisenberg-dressed states of level <= 2 with small rational coefficients.
QVec random_dressed(long n, std::mt19937_64& g) {
    std::uniform_int_distribution<int> coef(-3, 3), pick(0, 3);
    static const std::vector<Partition> dress = {{1}, {2}, {1, 1}};
    QVec v;
    v.add({n, {}}, 1);
    int extra = pick(g) % 3;
    for (int i = 0; i < extra; ++i) {
        int c = coef(g);
        if (c) v.add({n, dress[pick(g) % 3]}, frac(c, 2));
    }
    return v;
}

long charge_of(const QVec& v) { return v.c.begin()->first.charge; }

struct ChiralTriple {
    QVec u, v, w;
};

struct AssocCase {
    ChiralTriple left, right;
};

struct AssocValues {
    std::vector<std::complex<double>> product, iterate;
};

AssocValues assoc_values(const LatticeModel& m, const AssocCase& c, const Sample& z, int T) {
    const auto& s = m.spec;
    long ml = charge_of(c.left.u) + charge_of(c.left.v) + charge_of(c.left.w);
    long mr = charge_of(c.right.u) + charge_of(c.right.v) + charge_of(c.right.w);
    std::complex<double> dp = coupling(m, charge_of(c.left.v), charge_of(c.left.w)) *
                              coupling(m, charge_of(c.left.u), charge_of(c.left.v) + charge_of(c.left.w));
    std::complex<double> di = coupling(m, charge_of(c.left.u), charge_of(c.left.v)) *
                              coupling(m, charge_of(c.left.u) + charge_of(c.left.v), charge_of(c.left.w));
    std::complex<double> l1 = log_branch(z.z1), l2 = log_branch(z.z2), l0 = log_branch(z.z1 - z.z2);
    AssocValues out;
    for (const Partition& pl : {Partition{}, Partition{1}})
        for (const Partition& pr : {Partition{}, Partition{1}}) {
            BasisState wl{ml, pl}, wr{mr, pr};
            auto PL = product_terms(s, wl, c.left.u, c.left.v, c.left.w, T);
            auto PR = product_terms(s, wr, c.right.u, c.right.v, c.right.w, T);
            auto IL = iterate_terms(s, wl, c.left.u, c.left.v, c.left.w, T);
            auto IR = iterate_terms(s, wr, c.right.u, c.right.v, c.right.w, T);
            out.product.push_back(dp * eval_terms(PL, l1, l2) * eval_terms(PR, std::conj(l1), std::conj(l2)));
            out.iterate.push_back(di * eval_terms(IL, l0, l2) * eval_terms(IR, std::conj(l0), std::conj(l2)));
        }
    return out;
}

double rel_residual(const AssocValues& a) {
    double num = 0, den = 1e-300;
    for (size_t i = 0; i < a.product.size(); ++i) {
        num = std::max(num, std::abs(a.product[i] - a.iterate[i]));
        den = std::max(den, std::max(std::abs(a.product[i]), std::abs(a.iterate[i])));
    }
    return num / den;
}

}  // namespace

Report check_associativity(const LatticeModel& m, const std::vector<Sample>& samples, int T, double tol,
                           std::uint64_t seed) {
    const auto& s = m.spec;
    Report r;
    r.suite = "lattice-assoc";
    r.identity = "product and iterate of full vertex operators agree for |z1| > |z2| > |z1 - z2|";
    r.notes.push_back("seed " + std::to_string(seed) + ", truncation " + std::to_string(T));
    std::mt19937_64 g(seed);
    std::uniform_int_distribution<int> sec(0, s.sectors() - 1);
    for (size_t i = 0; i < samples.size(); ++i) {
        const Sample& z = samples[i];
        if (!(std::abs(z.z1) > std::abs(z.z2) && std::abs(z.z2) > std::abs(z.z1 - z.z2) && std::abs(z.z1 - z.z2) > 0))
            throw std::invalid_argument("sample outside |z1| > |z2| > |z1 - z2| > 0");
        AssocCase c;
        if (i == 0) {
            long n = s.rep(1);
            c.left = {basis_vec(n), basis_vec(n), basis_vec(n)};
            c.right = {basis_vec(-n), basis_vec(-n), basis_vec(-n)};
        } else {
            long a = s.rep(sec(g)), b = s.rep(sec(g)), d = s.rep(sec(g));
            c.left = {random_dressed(a, g), random_dressed(b, g), random_dressed(d, g)};
            c.right = {random_dressed(-a, g), random_dressed(-b, g), random_dressed(-d, g)};
        }
        double res = rel_residual(assoc_values(m, c, z, T));
        double res2 = rel_residual(assoc_values(m, c, z, T + 2));
        std::string at = "(" + sci(z.z1.real()) + "," + sci(z.z1.imag()) + "),(" + sci(z.z2.real()) + "," +
                         sci(z.z2.imag()) + ")";
        r.add("assoc-agreement", {std::to_string(i), at}, res <= tol, sci(res), "numeric");
        double ratio = res2 > 0 ? res / res2 : INFINITY;
        r.add("truncation-convergence", {std::to_string(i)}, ratio >= 4.0,
              "residual T=" + std::to_string(T) + " " + sci(res) + ", T=" + std::to_string(T + 2) + " " + sci(res2) +
                  ", ratio " + sci(ratio),
              "numeric");
    }
    // vacuum insertions: both sides are <w', w>
    {
        AssocCase c;
        long n = s.rep(1);
        c.left = {basis_vec(0), basis_vec(0), basis_vec(n, {1})};
        c.right = {basis_vec(0), basis_vec(0), basis_vec(-n)};
        auto v = assoc_values(m, c, {1.0, 0.8}, T);
        bool ok = true;
        for (size_t i = 0; i < v.product.size(); ++i)
            ok = ok && v.product[i] == v.iterate[i];
        r.add("vacuum-insertion", {}, ok);
    }
    return r;
}

namespace {

PairQ random_pair(const LatticeSpec& s, std::mt19937_64& g) {
    std::uniform_int_distribution<int> sec(0, s.sectors() - 1), lv(0, 3);
    static const std::vector<Partition> dress = {{}, {1}, {2}, {1, 1}};
    long n = s.rep(sec(g));
    PairQ p;
    p[{{n, dress[lv(g)]}, {-n, {}}}] += 1;
    p[{{n, {}}, {-n, dress[lv(g)]}}] += frac(1, 2);
    return p;
}

double max_abs(const FullVector& v) {
    double m = 0;
    for (const auto& [p, c] : v) m = std::max(m, std::abs(c));
    return m;
}

double diff_on(const LatticeSpec& s, const FullVector& a, const FullVector& b, const mpq_class& tmax) {
    double d = 0;
    auto in = [&](const PairState& p) { return weight(s, p.left) <= tmax && weight(s, p.right) <= tmax; };
    for (const auto& [p, c] : a) {
        if (!in(p)) continue;
        auto it = b.find(p);
        d = std::max(d, std::abs(c - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [p, c] : b)
        if (in(p) && !a.count(p)) d = std::max(d, std::abs(c));
    return d;
}

}  // namespace

Report check_skew_symmetry(const LatticeModel& m, int samples, int T, double tol, std::uint64_t seed) {
    const auto& s = m.spec;
    Report r;
    r.suite = "lattice-skew";
    r.identity = "Y(u; z, zbar)v = exp(z D^L + zbar D^R) Y(v; -z, -zbar)u per graded component";
    r.notes.push_back("seed " + std::to_string(seed) + ", truncation " + std::to_string(T));
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> th(0, kTwoPi), rad(0.3, 0.9);
    for (int i = 0; i < samples; ++i) {
        std::complex<double> z = i == 0 ? std::complex<double>(0.7, 0.2) : std::polar(rad(g), th(g));
        PairQ u = random_pair(s, g), v = random_pair(s, g);
        if (i == 0) {
            long n = s.rep(1);
            u = {{{{n, {}}, {-n, {}}}, 1}};
            v = {{{{n, {1}}, {-n, {}}}, 1}};
        }
        FullVector lhs = evaluate(full_series(m, u, v, T), z);
        FullVector rhs = translate(s, z, evaluate(full_series(m, v, u, T), -z), T);
        double scale = std::max(max_abs(lhs), 1e-300);
        double res = diff_on(s, lhs, rhs, T) / scale;
        r.add("skew-symmetry", {std::to_string(i), sci(z.real()) + "+" + sci(z.imag()) + "i"}, res <= tol, sci(res),
              "numeric");
        FullVector twice = translate(s, z, translate(s, -z, lhs, T), T);
        double res2 = diff_on(s, lhs, twice, T) / scale;
        r.add("skew-involution", {std::to_string(i)}, res2 <= 2 * tol, sci(res2), "numeric");
    }
    // vacuum: Y(1; z)v = v and exp(zD) Y(v; -z)1 = v
    {
        std::complex<double> z(0.7, 0.2);
        long n = s.rep(1);
        PairQ vac = {{{{0, {}}, {0, {}}}, 1}};
        PairQ v = {{{{n, {1}}, {-n, {}}}, 1}};
        FullVector lhs = evaluate(full_series(m, vac, v, T), z);
        FullVector rhs = translate(s, z, evaluate(full_series(m, v, vac, T), -z), T);
        double res = diff_on(s, lhs, rhs, T) / std::max(max_abs(lhs), 1e-300);
        r.add("skew-vacuum", {}, res <= tol, sci(res), "numeric");
    }
    return r;
}

namespace {

std::vector<BasisState> chiral_test_states(const LatticeSpec& s) {
    std::vector<BasisState> out;
    for (int j = 0; j < s.sectors(); ++j) {
        long n = s.rep(j);
        out.push_back({n, {}});
        out.push_back({n, {1}});
        out.push_back({n, {2}});
        out.push_back({n - 2L * s.k, {}});
    }
    return out;
}

QVec sub(QVec a, const QVec& b) {
    a += b.scaled(-1);
    return a;
}

const QVec& comp_at(const ChiralSeries& y, const mpq_class& e) {
    static const QVec zero;
    auto it = y.comp.find(e);
    return it == y.comp.end() ? zero : it->second;
}

QVec below(const LatticeSpec& s, const QVec& v, const mpq_class& tmax) {
    QVec r;
    for (const auto& [b, c] : v.c)
        if (weight(s, b) <= tmax) r.add(b, c);
    return r;
}

}  // namespace

Report check_grading_axioms(const LatticeModel& m) {
    const auto& s = m.spec;
    const int T = s.T;
    Report r;
    r.suite = "lattice-grading";
    r.identity = "d-bracket, D-derivative, identity, creation and single-valuedness on truncated modules";
    QVec vac = basis_vec(0);
    r.add("vacuum-d", {}, vir(s, 0, vac).empty());
    r.add("vacuum-D", {}, vir(s, -1, vac).empty());
    auto states = chiral_test_states(s);
    const mpq_class tmax = std::min(T, 6);
    for (const auto& ub : states)
        for (const auto& wb : states) {
            QVec u = unit(ub), w = unit(wb);
            std::vector<std::string> idx = {state_str(ub), state_str(wb)};
            ChiralSeries y = chiral_apply(s, u, w, tmax);
            bool mono = true;
            for (const auto& [e, comp] : y.comp)
                for (const auto& [b, c] : comp.c) mono = mono && weight(s, b) - weight(s, ub) - weight(s, wb) == e;
            r.add("monomial-exponent", idx, mono);
            // [L(0), Y(u,z)] = Y(L(0)u, z) + z d/dz Y(u, z)
            ChiralSeries yl = chiral_apply(s, u, vir(s, 0, w), tmax);
            ChiralSeries y0 = chiral_apply(s, vir(s, 0, u), w, tmax);
            bool dbr = true;
            for (const auto& [e, comp] : y.comp) {
                QVec lhs = sub(vir(s, 0, comp), comp_at(yl, e));
                QVec rhs = comp_at(y0, e);
                rhs += comp.scaled(e);
                dbr = dbr && sub(lhs, rhs).empty();
            }
            r.add("d-bracket", idx, dbr);
            // Y(L(-1)u, z) = d/dz Y(u, z)
            ChiralSeries yd = chiral_apply(s, vir(s, -1, u), w, tmax);
            bool der = true;
            for (const auto& [e, comp] : y.comp) der = der && sub(below(s, comp_at(yd, e - 1), tmax), comp.scaled(e)).empty();
            for (const auto& [e, comp] : yd.comp) der = der && (y.comp.count(e + 1) || comp.empty());
            r.add("D-derivative", idx, der);
            ChiralSeries y2 = chiral_apply(s, u, w, tmax + 2);
            bool cons = true;
            for (const auto& [e, comp] : y2.comp) cons = cons && sub(below(s, comp, tmax), comp_at(y, e)).empty();
            r.add("truncation-consistency", idx, cons);
        }
    // identity and creation on the module maps
    for (const auto& wb : states) {
        QVec w = unit(wb);
        ChiralSeries id = chiral_apply(s, vac, w, T);
        bool ok = id.comp.size() == 1 && id.comp.begin()->first == 0 && sub(id.comp.begin()->second, w).empty();
        r.add("identity", {state_str(wb)}, ok);
        ChiralSeries cr = chiral_apply(s, w, vac, T);
        bool cok = !cr.comp.empty() && cr.comp.begin()->first >= 0 && sub(comp_at(cr, 0), w).empty();
        for (const auto& [e, comp] : cr.comp) cok = cok && is_integer(e);
        r.add("creation", {state_str(wb)}, cok);
    }
    // full level: exponents, single-valuedness, identity and creation with the couplings
    std::vector<PairState> pairs;
    for (int j = 0; j < s.sectors(); ++j) {
        long n = s.rep(j);
        pairs.push_back({{n, {}}, {-n, {}}});
        pairs.push_back({{n, {1}}, {-n, {}}});
        pairs.push_back({{n, {}}, {-n + 2L * s.k, {1}}});
    }
    const PairState pvac{{0, {}}, {0, {}}};
    for (const auto& pu : pairs)
        for (const auto& pv : pairs) {
            BivariateSeries b = full_series(m, {{pu, 1}}, {{pv, 1}}, tmax);
            bool sv = true, mono = true;
            for (const auto& [e, fv] : b.terms) {
                sv = sv && is_integer(e.first - e.second);
                for (const auto& [p, c] : fv) {
                    mono = mono && weight(s, p.left) - weight(s, pu.left) - weight(s, pv.left) == e.first &&
                           weight(s, p.right) - weight(s, pu.right) - weight(s, pv.right) == e.second;
                }
            }
            std::vector<std::string> idx = {state_str(pu.left) + "|" + state_str(pu.right),
                                            state_str(pv.left) + "|" + state_str(pv.right)};
            r.add("single-valued", idx, sv);
            r.add("monodromy", idx, sv);
            r.add("full-monomial-exponent", idx, mono);
        }
    for (const auto& pv : pairs) {
        std::vector<std::string> idx = {state_str(pv.left) + "|" + state_str(pv.right)};
        BivariateSeries id = full_series(m, {{pvac, 1}}, {{pv, 1}}, T);
        bool ok = id.terms.size() == 1 && id.terms.begin()->first == std::make_pair(mpq_class(0), mpq_class(0)) &&
                  id.terms.begin()->second.size() == 1 && id.terms.begin()->second.begin()->first == pv &&
                  id.terms.begin()->second.begin()->second == 1.0;
        r.add("full-identity", idx, ok);
        BivariateSeries cr = full_series(m, {{pv, 1}}, {{pvac, 1}}, T);
        bool cok = true;
        for (const auto& [e, fv] : cr.terms) cok = cok && e.first >= 0 && e.second >= 0;
        auto it = cr.terms.find({0, 0});
        cok = cok && it != cr.terms.end() && it->second.size() == 1 && it->second.begin()->first == pv &&
              it->second.begin()->second == 1.0;
        r.add("full-creation", idx, cok);
    }
    return r;
}

namespace {

using PairVec = std::map<PairState, mpq_class>;

PairVec act_left(const LatticeSpec& s, int n, const PairVec& v) {
    PairVec out;
    for (const auto& [p, c] : v)
        for (const auto& [b, x] : vir(s, n, unit(p.left)).c) out[{b, p.right}] += c * x;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

PairVec act_right(const LatticeSpec& s, int n, const PairVec& v) {
    PairVec out;
    for (const auto& [p, c] : v)
        for (const auto& [b, x] : vir(s, n, unit(p.right)).c) out[{p.left, b}] += c * x;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

}  // namespace

Report check_virasoro(const LatticeSpec& s, int T) {
    Report r;
    r.suite = "lattice-virasoro";
    r.identity = "Virasoro relations with c = 1 in each chiral half and the commutator formula with Y";
    const mpq_class c = 1;
    for (int j = 0; j < s.sectors(); ++j) {
        bool ok = true;
        int bad_m = 0, bad_n = 0;
        for (const auto& b : states_up_to(s, j, T)) {
            QVec v = unit(b);
            for (int mm = -3; mm <= 3; ++mm)
                for (int nn = -3; nn <= 3; ++nn) {
                    QVec lhs = sub(vir(s, mm, vir(s, nn, v)), vir(s, nn, vir(s, mm, v)));
                    QVec rhs = vir(s, mm + nn, v).scaled(mm - nn);
                    if (mm + nn == 0) rhs += v.scaled(c * frac((long)mm * mm * mm - mm, 12));
                    if (!sub(lhs, rhs).empty() && ok) ok = false, bad_m = mm, bad_n = nn;
                }
        }
        r.add("virasoro-bracket", {std::to_string(j)}, ok,
              ok ? "" : "fails at m=" + std::to_string(bad_m) + " n=" + std::to_string(bad_n));
    }
    // left and right Virasoro operators commute on W^a (x) W^{a'}
    for (int j = 0; j < s.sectors(); ++j) {
        bool ok = true;
        auto ls = states_up_to(s, j, 3), rs = states_up_to(s, s.sector(-j), 3);
        for (const auto& bl : ls)
            for (const auto& br : rs) {
                PairVec v{{{bl, br}, 1}};
                for (int mm = -2; mm <= 2; ++mm)
                    for (int nn = -2; nn <= 2; ++nn)
                        ok = ok && act_left(s, mm, act_right(s, nn, v)) == act_right(s, nn, act_left(s, mm, v));
            }
        r.add("left-right-commute", {std::to_string(j)}, ok);
    }
    // [L(m), Y(u,z)] = sum_j C(m+1, j) z^{m+1-j} Y(L(j-1)u, z), m in {-1, 0, 1}
    auto states = chiral_test_states(s);
    const mpq_class tmax = std::min(T, 6);
    for (const char* half : {"left", "right"}) {
        const long sign = std::string(half) == "left" ? 1 : -1;
        for (int mm = -1; mm <= 1; ++mm) {
            bool ok = true;
            for (const auto& ub0 : states)
                for (const auto& wb0 : states) {
                    BasisState ub{sign * ub0.charge, ub0.mu}, wb{sign * wb0.charge, wb0.mu};
                    QVec u = unit(ub), w = unit(wb);
                    ChiralSeries y = chiral_apply(s, u, w, tmax + 2);
                    ChiralSeries yw = chiral_apply(s, u, vir(s, mm, w), tmax + 2);
                    std::vector<std::pair<int, ChiralSeries>> terms;
                    for (int jj = 0; jj <= mm + 1; ++jj) terms.push_back({jj, chiral_apply(s, vir(s, jj - 1, u), w, tmax + 2)});
                    std::set<mpq_class> exps;
                    for (const auto& [e, q] : y.comp) exps.insert(e);
                    for (const auto& [e, q] : yw.comp) exps.insert(e);
                    for (const auto& [jj, yj] : terms)
                        for (const auto& [e, q] : yj.comp) exps.insert(e + (mm + 1 - jj));
                    for (const mpq_class& e : exps) {
                        QVec lhs = sub(vir(s, mm, comp_at(y, e)), comp_at(yw, e));
                        QVec rhs;
                        for (const auto& [jj, yj] : terms) {
                            mpz_class bin;
                            mpz_bin_uiui(bin.get_mpz_t(), mm + 1, jj);
                            rhs += comp_at(yj, e - (mm + 1 - jj)).scaled(mpq_class(bin));
                        }
                        ok = ok && sub(below(s, lhs, tmax), below(s, rhs, tmax)).empty();
                    }
                }
            r.add(std::string("omega-commutator-") + half, {std::to_string(mm)}, ok);
        }
    }
    return r;
}

namespace {

// Invariant bilinear pairing of W^{a'} with W^a in the Fock basis, with
// a(n)^T = -a(-n); kappa is its value on the lowest states of charges (-n, n).
mpq_class fock_form(const LatticeSpec& s, const BasisState& x, const BasisState& y, const mpq_class& kappa) {
    if (x.charge != -y.charge || x.mu != y.mu) return 0;
    mpq_class v = kappa;
    const auto& mu = x.mu;
    for (size_t i = 0; i < mu.size();) {
        size_t j = i;
        while (j < mu.size() && mu[j] == mu[i]) ++j;
        for (size_t t = 1; t <= j - i; ++t) v *= -2L * s.k * mu[i] * (long)t;
        i = j;
    }
    return v;
}

// Res_z z^{-1} Y(z^{L(0)} e^{pi i (L(0) - h)} x~, z) z^{L(0)} y~, vacuum coefficient.
mpq_class residue_extract(const LatticeSpec& s, const BasisState& x, const BasisState& y, const mpq_class& h) {
    QVec xt = exp_l1(s, -1, unit(x)), yt = exp_l1(s, -1, unit(y));
    QVec xp;
    for (const auto& [b, c] : xt.c) {
        mpq_class ph = weight(s, b) - h;
        if (!is_integer(ph)) throw std::logic_error("non-integral phase exponent in the residue lemma");
        long e = mpz_class(ph.get_num()).get_si();
        xp.add(b, (e % 2 == 0) ? c : mpq_class(-c));
    }
    ChiralSeries y0 = chiral_apply(s, xp, yt, 0);
    mpq_class sum = 0;
    BasisState vac{0, {}};
    for (const auto& [e, comp] : y0.comp) {
        auto it = comp.c.find(vac);
        if (it != comp.c.end()) sum += it->second;
    }
    return sum;
}

}  // namespace

Report check_residue_lemma(const LatticeSpec& s, int T) {
    Report r;
    r.suite = "lattice-residue";
    r.identity = "residue extraction of the canonical intertwining operator reproduces the pairing";
    const mpq_class wmax = std::min(T - 1, 4);
    for (int j = 0; j < s.sectors(); ++j) {
        const long n0 = s.rep(j);
        const mpq_class h = s.h(j);
        mpq_class k0 = residue_extract(s, {-n0, {}}, {n0, {}}, h);
        r.add("residue-normalization", {std::to_string(j)}, k0 == 1 || k0 == -1, k0.get_str());
        if (k0 == 0) continue;
        // the pairing on other charges follows from invariance under e^{+-alpha}
        auto kappa = [&](long n) {
            long q = (n - n0) / (2L * s.k);
            return (s.k % 2 == 1 && q % 2 != 0) ? mpq_class(-k0) : k0;
        };
        auto ys = states_up_to(s, j, wmax);
        for (const auto& y : ys) {
            for (const auto& p : partitions_of(level(y.mu))) {
                BasisState x{-y.charge, p};
                mpq_class want = fock_form(s, x, y, kappa(y.charge));
                mpq_class got = residue_extract(s, x, y, h);
                r.add(want == 0 ? "residue-orthogonal" : "residue-lemma", {state_str(x), state_str(y)}, got == want,
                      mpq_class(got - want).get_str());
            }
            // different charge: zero on both sides
            BasisState x{-y.charge + 2L * s.k, y.mu};
            mpq_class got = residue_extract(s, x, y, h);
            r.add("residue-orthogonal", {state_str(x), state_str(y)}, got == 0, got.get_str());
        }
    }
    return r;
}

namespace {

using Laurent = std::map<long, std::complex<double>>;  // exponent -> coefficient

std::complex<double> laurent_eval(const Laurent& l, std::complex<double> z) {
    std::complex<double> s = 0;
    for (const auto& [e, c] : l) s += c * std::pow(z, (int)e);
    return s;
}

long as_long(const mpq_class& q) {
    if (!is_integer(q)) throw std::logic_error("non-integral exponent for a vacuum-sector insertion");
    return mpz_class(q.get_num()).get_si();
}

struct JacobiCase {
    std::string name;
    PairState A, u, w;
};

}  // namespace

Report check_jacobi_residues(const LatticeModel& m, const JacobiConfig& cfg, int T, double tol) {
    const auto& s = m.spec;
    if (!(cfg.r_out > cfg.r && cfg.r > cfg.r_in && cfg.r_in > 0))
        throw std::invalid_argument("contour radii must satisfy R_out > r > R_in > 0");
    Report r;
    r.suite = "lattice-jacobi";
    r.identity = "Cauchy-Jacobi identity by contour quadrature";
    const double rr = cfg.r;
    const double rho = 0.5 * std::min(rr - cfg.r_in, cfg.r_out - rr);
    const long n = s.rep(1), a = 2L * s.k;
    std::vector<JacobiCase> cases = {
        {"vacuum", {{0, {}}, {0, {}}}, {{n, {}}, {-n, {}}}, {{n, {}}, {-n, {}}}},
        {"heisenberg", {{0, {1}}, {0, {}}}, {{n, {}}, {-n, {}}}, {{-n, {}}, {n, {}}}},
        {"charged", {{a, {}}, {-a, {}}}, {{n, {1}}, {-n, {}}}, {{n, {}}, {-n, {}}}},
        {"two-sided", {{0, {1}}, {0, {1}}}, {{n, {}}, {-n, {}}}, {{n, {}}, {-n, {1}}}},
    };
    r.notes.push_back("r=" + sci(rr) + " R_out=" + sci(cfg.r_out) + " R_in=" + sci(cfg.r_in) + " r-contour radius " +
                      sci(rho));
    const double lr = std::log(rr);
    for (const auto& jc : cases) {
        long ml = jc.A.left.charge + jc.u.left.charge + jc.w.left.charge;
        long mr = jc.A.right.charge + jc.u.right.charge + jc.w.right.charge;
        std::complex<double> d1 = coupling(m, jc.u.left.charge, jc.w.left.charge) *
                                  coupling(m, jc.A.left.charge, jc.u.left.charge + jc.w.left.charge);
        std::complex<double> d2 = coupling(m, jc.A.left.charge, jc.w.left.charge) *
                                  coupling(m, jc.u.left.charge, jc.A.left.charge + jc.w.left.charge);
        std::complex<double> d3 = coupling(m, jc.A.left.charge, jc.u.left.charge) *
                                  coupling(m, jc.A.left.charge + jc.u.left.charge, jc.w.left.charge);
        for (const Partition& pl : {Partition{}, Partition{1}})
            for (const Partition& pr : {Partition{}, Partition{1}}) {
                BasisState wl{ml, pl}, wr{mr, pr};
                QVec AL = unit(jc.A.left), AR = unit(jc.A.right), uL = unit(jc.u.left), uR = unit(jc.u.right);
                QVec wL = unit(jc.w.left), wR = unit(jc.w.right);
                Laurent t1, t2, t3;
                // <w', Y(A; z, z) Y(u; r, r) w>
                for (const auto& x : product_terms(s, wl, AL, uL, wL, T))
                    for (const auto& y : product_terms(s, wr, AR, uR, wR, T))
                        t1[as_long(x.e1 + y.e1)] += d1 * mpq_class(x.c * y.c).get_d() * std::exp(mpq_class(x.e2 + y.e2).get_d() * lr);
                // <w', Y(u; r, r) Y(A; z, z) w>
                for (const auto& x : product_terms(s, wl, uL, AL, wL, T))
                    for (const auto& y : product_terms(s, wr, uR, AR, wR, T))
                        t2[as_long(x.e2 + y.e2)] += d2 * mpq_class(x.c * y.c).get_d() * std::exp(mpq_class(x.e1 + y.e1).get_d() * lr);
                // <w', Y(Y(A; z - r, z - r)u; r, r) w>, in powers of z - r
                for (const auto& x : iterate_terms(s, wl, AL, uL, wL, T))
                    for (const auto& y : iterate_terms(s, wr, AR, uR, wR, T))
                        t3[as_long(x.e1 + y.e1)] += d3 * mpq_class(x.c * y.c).get_d() * std::exp(mpq_class(x.e2 + y.e2).get_d() * lr);
                if (t1.empty() && t2.empty() && t3.empty()) continue;
                auto coef = [](const Laurent& l, long e) {
                    auto it = l.find(e);
                    return it == l.end() ? std::complex<double>(0) : it->second;
                };
                struct F {
                    const char* name;
                    std::function<std::complex<double>(std::complex<double>)> f;
                };
                std::vector<F> fs = {{"1", [](std::complex<double>) { return std::complex<double>(1); }},
                                     {"z", [](std::complex<double> z) { return z; }},
                                     {"1/z", [](std::complex<double> z) { return 1.0 / z; }},
                                     {"1/(z-r)", [rr](std::complex<double> z) { return 1.0 / (z - rr); }}};
                // exact residues from the coefficients
                auto exact = [&](int fi) {
                    std::complex<double> e_inf = 0, e_0 = 0, e_r = 0;
                    switch (fi) {
                        case 0: e_inf = coef(t1, -1), e_0 = coef(t2, -1), e_r = coef(t3, -1); break;
                        case 1: e_inf = coef(t1, -2), e_0 = coef(t2, -2), e_r = rr * coef(t3, -1) + coef(t3, -2); break;
                        case 2:
                            e_inf = coef(t1, 0), e_0 = coef(t2, 0);
                            for (const auto& [e, c] : t3)
                                if (e <= -1) e_r += c * std::pow(-1.0, (double)(-1 - e)) / std::pow(rr, (double)(-e));
                            break;
                        default:
                            for (const auto& [e, c] : t1)
                                if (e >= 0) e_inf += c * std::pow(rr, (double)e);
                            for (const auto& [e, c] : t2)
                                if (e <= -1) e_0 -= c / std::pow(rr, (double)(-e));
                            e_r = coef(t3, 0);
                    }
                    return std::array<std::complex<double>, 3>{e_inf, e_0, e_r};
                };
                auto quad = [&](const Laurent& l, std::complex<double> center, double rad, int nodes,
                                const std::function<std::complex<double>(std::complex<double>)>& f, bool shifted) {
                    std::complex<double> sum = 0;
                    for (int i = 0; i < nodes; ++i) {
                        std::complex<double> z = center + std::polar(rad, kTwoPi * i / nodes);
                        std::complex<double> g = laurent_eval(l, shifted ? z - center : z);
                        sum += f(z) * g * (z - center);
                    }
                    return sum / double(nodes);
                };
                for (int fi = 0; fi < 4; ++fi) {
                    std::array<std::complex<double>, 3> q, q2;
                    for (int pass = 0; pass < 2; ++pass) {
                        int nodes = pass == 0 ? 256 : 512;
                        auto& out = pass == 0 ? q : q2;
                        out[0] = quad(t1, 0.0, cfg.r_out, nodes, fs[fi].f, false);
                        out[1] = quad(t2, 0.0, cfg.r_in, nodes, fs[fi].f, false);
                        out[2] = quad(t3, rr, rho, nodes, fs[fi].f, true);
                    }
                    auto ex = exact(fi);
                    double scale = 1.0;
                    for (int i = 0; i < 3; ++i) scale = std::max(scale, std::abs(q[i]));
                    std::vector<std::string> idx = {jc.name, state_str(wl) + "|" + state_str(wr), fs[fi].name};
                    double res = std::abs(q[0] - q[1] - q[2]) / scale;
                    r.add("cauchy-jacobi", idx, res <= tol, sci(res), "numeric");
                    double ext = 0, half = 0;
                    for (int i = 0; i < 3; ++i) {
                        ext = std::max(ext, std::abs(q[i] - ex[i]) / scale);
                        half = std::max(half, std::abs(q[i] - q2[i]) / scale);
                    }
                    r.add("quadrature-vs-extraction", idx, ext <= tol, sci(ext), "numeric");
                    r.add("step-halving", idx, half < tol / 10, sci(half), "numeric");
                }
            }
    }
    return r;
}

// ---------------------------------------------------------------------------
// F entries from four-point matrix elements

namespace {

// Power-series coefficients of (1 + sign x)^beta up to x^{len-1}.
std::vector<mpq_class> binomial_series(const mpq_class& beta, int sign, int len) {
    std::vector<mpq_class> c(len);
    if (len == 0) return c;
    c[0] = 1;
    for (int i = 1; i < len; ++i) c[i] = c[i - 1] * (beta - (i - 1)) / i * sign;
    return c;
}

struct Reduced {
    mpq_class lead;                  // lowest exponent of the series variable
    std::vector<mpq_class> poly;     // polynomial after removing the branch factor
};

// terms are sum c t^{e}, exponents lead + i; returns the polynomial
// sum_i c_i t^i times (1 + sign t)^{-beta}, checked to terminate.
std::optional<Reduced> reduce(const std::map<mpq_class, mpq_class>& series, const mpq_class& beta, int sign,
                              int len) {
    if (series.empty() || len < 3) return std::nullopt;
    Reduced r;
    r.lead = series.begin()->first;
    std::vector<mpq_class> p(len);
    for (const auto& [e, c] : series) {
        mpq_class d = e - r.lead;
        if (!is_integer(d)) return std::nullopt;
        long i = mpz_class(d.get_num()).get_si();
        if (i < len) p[i] += c;
    }
    auto b = binomial_series(-beta, sign, len);
    std::vector<mpq_class> q(len);
    for (int i = 0; i < len; ++i)
        for (int j = 0; j <= i; ++j) q[i] += p[j] * b[i - j];
    int deg = len - 1;
    while (deg >= 0 && q[deg] == 0) --deg;
    if (deg > len - 3) return std::nullopt;  // needs two vanishing coefficients as evidence
    q.resize(deg + 1);
    r.poly = q;
    return r;
}

mpq_class poly_at(const std::vector<mpq_class>& p, const mpq_class& x) {
    mpq_class s = 0;
    for (int i = (int)p.size() - 1; i >= 0; --i) s = s * x + p[i];
    return s;
}

mpq_class qpow(const mpq_class& x, long e) {
    mpq_class r = 1;
    for (long i = 0; i < std::labs(e); ++i) r *= x;
    return e >= 0 ? r : mpq_class(1 / r);
}

struct Element {
    QVec u, v, w;
    BasisState wp;
};

// Ratio product / iterate of one matrix element, or nothing when it vanishes.
std::optional<mpq_class> element_ratio(const LatticeSpec& s, const Element& el, int T) {
    auto P = product_terms(s, el.wp, el.u, el.v, el.w, T);
    auto I = iterate_terms(s, el.wp, el.u, el.v, el.w, T);
    if (P.empty() && I.empty()) return std::nullopt;
    if (P.empty() || I.empty()) throw std::runtime_error("one-sided vanishing matrix element");
    const long m1 = charge_of(el.u), m2 = charge_of(el.v), m3 = charge_of(el.w);
    const mpq_class e12 = frac(m1 * m2, 2L * s.k), e13 = frac(m1 * m3, 2L * s.k);
    auto lv = [](const QVec& q) {
        int l = 0;
        for (const auto& [b, c] : q.c) l = std::max(l, level(b.mu));
        return l;
    };
    // pole orders at z1 = z2 and at z1 = 0
    const int shift = lv(el.u) + lv(el.v), shift2 = lv(el.u) + lv(el.w);
    mpq_class delta = P.front().e1 + P.front().e2;
    std::map<mpq_class, mpq_class> ps, is;
    for (const auto& t : P) {
        if (t.e1 + t.e2 != delta) throw std::logic_error("inhomogeneous product expansion");
        ps[t.e2] += t.c;
    }
    for (const auto& t : I) is[t.e1] += t.c;
    // coefficients are exact while the intermediate state stays within weight T
    auto wt = [&](const QVec& q) { return weight(s, q.c.begin()->first); };
    auto known = [&](const mpq_class& top, const std::map<mpq_class, mpq_class>& ser) {
        mpq_class room = top - ser.begin()->first;
        return room < 0 ? 0 : (int)mpz_class(room.get_num() / room.get_den()).get_si() + 1;
    };
    auto r1 = reduce(ps, e12 - shift, -1, known(T - wt(el.v) - wt(el.w), ps));
    auto r2 = reduce(is, e13 - shift2, +1, known(T - wt(el.u) - wt(el.v), is));
    if (!r1 || !r2) return std::nullopt;  // not enough exact coefficients at this truncation
    // product at (z1, z2) = (1 + y, 1):  (1+y)^delta x^{B0} (1-x)^{e12-shift} R1(x),  x = 1/(1+y)
    // iterate at (z0, z2) = (y, 1):       y^{C0} (1+y)^{e13-shift2} R2(y)
    mpq_class ea = delta - r1->lead - (e12 - shift) - (e13 - shift2);
    mpq_class eb = (e12 - shift) - r2->lead;
    if (!is_integer(ea) || !is_integer(eb)) throw std::logic_error("branch exponents do not cancel");
    std::optional<mpq_class> ratio;
    int used = 0;
    for (mpq_class y : {frac(1, 3), frac(2, 7), frac(3, 5), frac(5, 11), frac(7, 4), frac(11, 13)}) {
        mpq_class x = 1 / (1 + y);
        mpq_class den = poly_at(r2->poly, y);
        if (den == 0) continue;  // root of the iterate polynomial
        if (++used > 3) break;
        mpq_class f = qpow(1 + y, mpz_class(ea.get_num()).get_si()) * qpow(y, mpz_class(eb.get_num()).get_si()) *
                      poly_at(r1->poly, x) / den;
        if (ratio && *ratio != f) throw std::runtime_error("product/iterate ratio is not constant");
        ratio = f;
    }
    if (used < 3) throw std::runtime_error("iterate vanishes at the sample points");
    return ratio;
}

}  // namespace

Cyc derive_f_entry(const LatticeSpec& s, const FKey& key, int T) {
    const int N = 4 * s.sectors();
    auto sec = [&](int x) { return s.sector(x); };
    if (sec(key.a2 + key.a3) != sec(key.a5) || sec(key.a1 + key.a5) != sec(key.a4) ||
        sec(key.a1 + key.a2) != sec(key.a6) || sec(key.a6 + key.a3) != sec(key.a4))
        throw std::invalid_argument("key is not admissible for Z/" + std::to_string(s.sectors()));
    const long m1 = s.rep(sec(key.a1)), m2 = s.rep(sec(key.a2)), m3 = s.rep(sec(key.a3));
    const long a = 2L * s.k;
    const long m4 = m1 + m2 + m3;
    auto away = [&](long m) { return m > 0 ? m - a : m + a; };  // the other small charge of the sector
    std::vector<Element> els = {
        {basis_vec(m1), basis_vec(m2), basis_vec(m3), {m4, {}}},
        {basis_vec(m1, {1}), basis_vec(m2), basis_vec(m3), {m4, {1}}},
        {basis_vec(m1), basis_vec(m2, {1}), basis_vec(m3), {m4, {1}}},
        {basis_vec(m1), basis_vec(m2), basis_vec(m3, {1}), {m4, {1}}},
        {basis_vec(away(m1)), basis_vec(m2), basis_vec(m3), {m4 - m1 + away(m1), {}}},
        {basis_vec(m1), basis_vec(away(m2)), basis_vec(m3), {m4 - m2 + away(m2), {}}},
    };
    std::optional<mpq_class> value;
    int agree = 0;
    for (const auto& el : els) {
        auto r = element_ratio(s, el, T);
        if (!r) continue;
        if (value && *value != *r) throw std::runtime_error("F oracle: ratio differs between matrix elements");
        value = r;
        ++agree;
    }
    if (agree < 3) throw std::runtime_error("F oracle: fewer than three usable matrix elements at truncation " + std::to_string(T));
    return Cyc(N, *value);
}

}  // namespace ffw
