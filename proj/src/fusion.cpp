#include "ffw/fusion.hpp"

#include <numeric>
#include <stdexcept>

namespace ffw {

int FusionData::N(int a1, int a2, int a3) const {
    auto it = fusion.find({a1, a2, a3});
    return it == fusion.end() ? 0 : it->second;
}

int FusionData::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == name) return i;
    throw std::invalid_argument("unknown label '" + name + "'");
}

std::vector<std::string> FusionData::names(const Triple& t) const {
    return {labels.at(t[0]), labels.at(t[1]), labels.at(t[2])};
}

long FusionData::min_field_order() const {
    long l = 1;
    for (const auto& w : weight) l = std::lcm(l, w.get_den().get_si());
    return 2 * l;
}

Triple primed(const FusionData& d, const Triple& t) { return {d.dual[t[0]], d.dual[t[1]], d.dual[t[2]]}; }

Triple swap12(const Triple& t) { return {t[1], t[0], t[2]}; }

Triple swap23(const FusionData& d, const Triple& t) { return {t[0], d.dual[t[2]], d.dual[t[1]]}; }

Report validate(const FusionData& d, int field_order) {
    Report r;
    r.suite = "validate";
    r.identity = "structural conditions on the label set, duality, weights and fusion rules";
    const int n = d.size();
    auto L = [&](int a) { return d.labels[a]; };
    bool shape_ok = n > 0 && (int)d.dual.size() == n && (int)d.weight.size() == n && d.unit >= 0 &&
                    d.unit < n;
    r.add("shape", {}, shape_ok, shape_ok ? "" : "labels, dual and weight lists disagree in length");
    if (!shape_ok) return r;
    for (const auto& [t, m] : d.fusion) {
        bool ok = m > 0 && t[0] >= 0 && t[1] >= 0 && t[2] >= 0 && t[0] < n && t[1] < n && t[2] < n;
        if (!ok) {
            r.add("fusion-entry", {}, false, "bad fusion record");
            return r;
        }
    }
    const int e = d.unit;
    for (int a = 0; a < n; ++a) {
        int b = d.dual[a];
        bool inv = b >= 0 && b < n && d.dual[b] == a;
        r.add("dual-involution", {L(a)}, inv);
        if (!inv) return r;
    }
    r.add("unit-self-dual", {L(e)}, d.dual[e] == e);
    r.add("unit-weight-zero", {L(e)}, d.weight[e] == 0);
    for (int a = 0; a < n; ++a)
        r.add("dual-weight", {L(a)}, d.weight[a] == d.weight[d.dual[a]],
              mpq_class(d.weight[a] - d.weight[d.dual[a]]).get_str());
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            int want = a == b ? 1 : 0;
            bool ok = d.N(e, a, b) == want && d.N(a, e, b) == want;
            r.add("unit-fusion", {L(a), L(b)}, ok);
            bool okd = d.N(a, b, e) == (b == d.dual[a] ? 1 : 0);
            r.add(b == d.dual[a] ? "unit-duality" : "unit-duality-off", {L(a), L(b)}, okd);
        }
    }
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2)
            for (int a3 = 0; a3 < n; ++a3) {
                int v = d.N(a1, a2, a3);
                bool s12 = v == d.N(a2, a1, a3);
                bool s23 = v == d.N(a1, d.dual[a3], d.dual[a2]);
                bool pr = v == d.N(d.dual[a1], d.dual[a2], d.dual[a3]);
                if (!s12 || !s23) r.add("sigma-symmetry", {L(a1), L(a2), L(a3)}, false);
                if (!pr) r.add("prime-symmetry", {L(a1), L(a2), L(a3)}, false);
            }
    if (field_order > 0) {
        long need = d.min_field_order();
        r.add("phase-divisibility", {std::to_string(field_order)}, field_order % need == 0,
              "field order must be divisible by " + std::to_string(need));
    }
    r.add("sigma-symmetry", {"all"}, true);
    return r;
}

std::vector<std::pair<Triple, int>> nonzero_spaces(const FusionData& d) {
    std::vector<std::pair<Triple, int>> out;
    for (const auto& [t, m] : d.fusion)  // std::map order is lexicographic in label index
        if (m > 0) out.emplace_back(t, m);
    return out;
}

FusionData cyclic_fusion(int n, const std::vector<mpq_class>& weights) {
    FusionData d;
    for (int i = 0; i < n; ++i) d.labels.push_back(std::to_string(i));
    d.unit = 0;
    for (int i = 0; i < n; ++i) d.dual.push_back((n - i) % n);
    d.weight = weights;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d.fusion[{a, b, (a + b) % n}] = 1;
    return d;
}

}  // namespace ffw
