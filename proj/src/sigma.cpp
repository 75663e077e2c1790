#include "ffw/sigma.hpp"

#include <stdexcept>

namespace ffw {

namespace {

// s12(t) = coef * u_orbit^sign
struct OrbitValue {
    Cyc coef;
    int sign;
    int orbit;
};

}  // namespace

std::vector<S3Action> sigma_candidates(const ChiralData& c) {
    const auto& f = c.fusion;
    for (const auto& [t, m] : f.fusion)
        if (m > 1) throw std::invalid_argument("sigma derivation needs multiplicity-free fusion");
    int e = c.e();
    auto d = [&](int a) { return c.dual(a); };
    auto G = [&](int a1, int a2, int a3, int a4, int a5, int a6) { return c.F.get({a1, a2, a3, a4, a5, a6}); };
    std::vector<Triple> T;
    for (const auto& [t, m] : nonzero_spaces(f)) T.push_back(t);
    std::map<Triple, Cyc> rho;
    for (const Triple& t : T) {
        int x = t[0], y = t[1], z = t[2];
        Cyc den = G(x, y, d(y), x, e, z) * G(z, d(z), x, x, d(y), e);
        if (den.is_zero()) throw std::runtime_error("vanishing fusing entry in sigma derivation");
        rho[t] = f_a(c, x) / den;
    }
    auto rot = [&](const Triple& t) { return rot123(f, t); };

    std::map<Triple, OrbitValue> val;
    std::vector<std::vector<Cyc>> choices;  // per orbit: admissible seed values
    for (const Triple& t0 : T) {
        if (val.count(t0)) continue;
        int k = (int)choices.size();
        val[t0] = {c.one(), 1, k};
        std::vector<Triple> stack{t0};
        std::optional<Cyc> seed;
        bool pinned = false;
        while (!stack.empty()) {
            Triple t = stack.back();
            stack.pop_back();
            OrbitValue cur = val.at(t);
            std::pair<Triple, OrbitValue> next[2] = {
                {swap12(t), {cur.coef.inverse(), -cur.sign, k}},
                {rot(t), {cur.coef / (rho.at(t) * rho.at(swap23(f, t))), cur.sign, k}}};
            for (auto& [nt, nv] : next) {
                auto it = val.find(nt);
                if (it == val.end()) {
                    val[nt] = nv;
                    stack.push_back(nt);
                    continue;
                }
                // coef_old u^s_old = coef_new u^s_new
                const OrbitValue& ov = it->second;
                if (ov.sign == nv.sign) {
                    if (ov.coef != nv.coef) throw std::runtime_error("sigma orbit relations are inconsistent");
                    continue;
                }
                Cyc r = nv.coef / ov.coef;  // u^(s_old - s_new) = r
                Cyc sq = ov.sign - nv.sign == 2 ? r : r.inverse();
                if (!pinned) {
                    auto root = sqrt_in_field(sq);
                    if (!root) throw std::runtime_error("sigma seed needs a square root outside the field");
                    seed = *root;
                    pinned = true;
                } else if (*seed * *seed != sq)
                    throw std::runtime_error("sigma orbit relations are inconsistent");
            }
        }
        if (seed) choices.push_back({*seed, -*seed});
        else choices.push_back({c.one()});
    }

    std::vector<S3Action> out;
    size_t total = 1;
    for (const auto& ch : choices) total *= ch.size();
    for (size_t code = 0; code < total; ++code) {
        std::vector<Cyc> u;
        size_t rem = code;
        for (const auto& ch : choices) {
            u.push_back(ch[rem % ch.size()]);
            rem /= ch.size();
        }
        S3Action s;
        std::map<Triple, Cyc> s12;
        for (const Triple& t : T) {
            const auto& v = val.at(t);
            s12[t] = v.coef * u[v.orbit].pow(v.sign);
        }
        for (const Triple& t : T) {
            s.s12[t] = CMat::scalar(s12.at(t));
            s.s23[t] = CMat::scalar(rho.at(t) * s12.at(rot(t)));
        }
        out.push_back(std::move(s));
    }
    return out;
}

bool sigma_battery(const ChiralData& c) {
    try {
        if (!verify_s3_relations(c).pass()) return false;
        if (!verify_pairing(c).pass()) return false;
        if (!verify_formula1(c).pass()) return false;
        if (!verify_dual_basis(c).pass()) return false;
        if (!verify_prop_fusing(c).pass()) return false;
        return verify_s3_invariance(c).pass();
    } catch (const std::exception&) {
        return false;
    }
}

S3Action derive_sigma(const ChiralData& c) {
    for (auto& s : sigma_candidates(c)) {
        ChiralData t = c;
        t.sigma = s;
        if (sigma_battery(t)) return s;
    }
    throw std::runtime_error("no sigma candidate satisfies the chiral identities");
}

}  // namespace ffw
