#include "ffw/fixtures.hpp"

#include <functional>
#include <stdexcept>

#include "ffw/ffa.hpp"
#include "ffw/lattice.hpp"

#include "ffw/pentagon.hpp"
#include "ffw/sigma.hpp"

namespace ffw {

FusionData trivial_fusion() {
    FusionData d;
    d.labels = {"e"};
    d.unit = 0;
    d.dual = {0};
    d.weight = {0};
    d.fusion[{0, 0, 0}] = 1;
    return d;
}

FusionData ising_fusion() {
    FusionData d;
    d.labels = {"1", "psi", "sigma"};
    d.unit = 0;
    d.dual = {0, 1, 2};
    d.weight = {mpq_class(0), mpq_class(1, 2), mpq_class(1, 16)};
    auto add = [&](int a, int b, int c) {
        d.fusion[{a, b, c}] = 1;
        d.fusion[{b, a, c}] = 1;
    };
    for (int a = 0; a < 3; ++a) add(0, a, a);
    add(1, 1, 0);
    add(1, 2, 2);
    add(2, 2, 0);
    add(2, 2, 1);
    return d;
}

FusionData fibonacci_fusion() {
    FusionData d;
    d.labels = {"1", "tau"};
    d.unit = 0;
    d.dual = {0, 1};
    d.weight = {mpq_class(0), mpq_class(2, 5)};
    d.fusion[{0, 0, 0}] = 1;
    d.fusion[{0, 1, 1}] = 1;
    d.fusion[{1, 0, 1}] = 1;
    d.fusion[{1, 1, 0}] = 1;
    d.fusion[{1, 1, 1}] = 1;
    return d;
}

}  // namespace ffw

namespace ffw {

Bundle assemble_bundle(const FusionData& fusion, int order, const std::map<FKey, Cyc>& F, const std::string& generator) {
    Bundle b;
    ChiralData& c = b.chiral;
    c.order = order;
    c.fusion = fusion;
    c.F = FTensor(order, &c.fusion);
    fill_tensor(c.F, F);
    for (const Triple& t : canonical_spaces(fusion)) c.canonical[t] = 0;
    c.sigma = derive_sigma(c);
    b.provenance = {generator, "0", FFW_VERSION};
    return b;
}

Bundle trivial_bundle() {
    FusionData f = trivial_fusion();
    FTensor probe(1, &f);
    std::map<FKey, Cyc> F;
    for (const FKey& k : probe.admissible_keys()) F[k] = Cyc(2, 1);
    return assemble_bundle(f, 2, F, "trivial");
}

namespace {

// Pentagon solution whose F_a for the given label embeds as a positive real.
Bundle solved_bundle(const FusionData& f, int order, int label, const std::string& name) {
    auto sols = solve_pentagon(f, order);
    for (const auto& s : sols) {
        int d = f.dual[label];
        auto z = s.values.at({label, d, label, label, f.unit, f.unit}).to_complex();
        if (z.real() > 0 && std::abs(z.imag()) < 1e-12) return assemble_bundle(f, order, s.values, name);
    }
    throw std::runtime_error("no pentagon solution with positive F for " + f.labels[label]);
}

}  // namespace

Bundle ising_bundle() { return solved_bundle(ising_fusion(), kIsingOrder, 2, "pentagon-solver:ising"); }

Bundle fibonacci_bundle() { return solved_bundle(fibonacci_fusion(), kFibonacciOrder, 1, "pentagon-solver:fibonacci"); }

}  // namespace ffw

namespace ffw {

FusionData lattice_fusion(int k) {
    LatticeSpec s{k};
    std::vector<mpq_class> h;
    for (int j = 0; j < s.sectors(); ++j) h.push_back(s.h(j));
    FusionData d = cyclic_fusion(s.sectors(), h);
    for (int j = 0; j < s.sectors(); ++j) d.labels[j] = j == 0 ? "e" : j == 1 ? "a" : "a" + std::to_string(j);
    return d;
}

int lattice_order(int k) { return 8 * k; }

Bundle lattice_bundle(int k, int truncation) {
    FusionData f = lattice_fusion(k);
    LatticeSpec s{k, truncation};
    FTensor probe(lattice_order(k), &f);
    std::map<FKey, Cyc> F;
    for (const FKey& key : probe.admissible_keys()) F[key] = derive_f_entry(s, key, truncation);
    Bundle b = assemble_bundle(f, lattice_order(k), F, "lattice-oracle:k=" + std::to_string(k));
    b.provenance.seed = "T=" + std::to_string(truncation);
    return b;
}

namespace {

Mutation with_ffa(const std::string& suite, const std::string& name, Bundle b,
                  const std::function<void(FFAStructure&)>& edit) {
    FFAStructure s = construct(b.chiral);
    edit(s);
    b.ffa = ffa_to_json(s);
    b.provenance.generator += "+mutation:" + name;
    return {suite, name, b};
}

Mutation with_chiral(const std::string& suite, const std::string& name, Bundle b,
                     const std::function<void(ChiralData&)>& edit) {
    edit(b.chiral);
    b.provenance.generator += "+mutation:" + name;
    return {suite, name, b};
}

}  // namespace

std::vector<Mutation> mutation_fixtures() {
    const Bundle z2 = lattice_bundle(1), z4 = lattice_bundle(2), ising = ising_bundle();
    const int e = 0, a = 1;
    std::vector<Mutation> out;
    out.push_back(with_chiral("validate", "missing-canonical-marker", z2,
                              [&](ChiralData& c) { c.canonical.erase({a, a, e}); }));
    out.push_back(with_chiral("pentagon", "ising-f-entry-negated", ising, [&](ChiralData& c) {
        const FusionData& f = c.fusion;
        int s = f.index("sigma"), p = f.index("psi");
        FKey key{s, s, s, s, p, p};
        c.F.set(key, 0, 0, 0, 0, -c.F.get(key));
    }));
    out.push_back(with_chiral("pairing", "sigma23-rescaled", z4, [&](ChiralData& c) {
        Triple t{1, 1, 2};
        c.sigma.s23[t] = c.sigma.s23[t] * Cyc(c.order, 2);
    }));
    out.push_back(with_chiral("nondegeneracy", "sigma23-zero", z2, [&](ChiralData& c) {
        Triple t{a, a, e};
        c.sigma.s23[t] = c.sigma.s23[t] * c.zero();
    }));
    out.push_back(with_chiral("dual", "sigma23-negated", z2, [&](ChiralData& c) {
        Triple t{a, a, e};
        c.sigma.s23[t] = c.sigma.s23[t] * Cyc(c.order, -1);
    }));
    out.push_back(with_chiral("fusing", "f-entry-doubled", z2, [&](ChiralData& c) {
        FKey key{a, a, a, a, e, e};
        c.F.set(key, 0, 0, 0, 0, c.F.get(key) * Cyc(c.order, 2));
    }));
    out.push_back(with_chiral("s3", "sigma12-negated", z2, [&](ChiralData& c) {
        Triple t{a, a, e};
        c.sigma.s12[t] = c.sigma.s12[t] * Cyc(c.order, -1);
    }));
    out.push_back(with_ffa("ffa-assoc", "right-factor-not-dual", z4, [&](FFAStructure& s) {
        auto& r = s.blocks.at({1, 1, 2}).right;
        r = r * Cyc(s.order(), 2);
    }));
    out.push_back(with_chiral("skew", "sigma12-normalization-broken", z4, [&](ChiralData& c) {
        Triple t{e, 1, 1};
        c.sigma.s12[t] = c.sigma.s12[t] * Cyc(c.order, -1);
    }));
    out.push_back(with_ffa("single-valued", "right-weight-shifted", z2, [&](FFAStructure& s) {
        for (auto& x : s.sectors)
            if (x.left == a) x.h_right += mpq_class(1, 3);
    }));
    out.push_back(with_ffa("invariance", "form-factor-omitted", z2, [&](FFAStructure& s) {
        for (auto& [l, w] : s.weights) w = Cyc(s.order(), 1);
    }));
    return out;
}

}  // namespace ffw
