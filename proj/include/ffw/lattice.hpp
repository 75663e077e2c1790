#pragma once

#include <complex>
#include <cstdint>
#include <map>

#include "ffw/chiral.hpp"
#include "ffw/fock.hpp"
#include "ffw/report.hpp"

namespace ffw {

// Graded components of Y(e^{lambda}, z)v keyed by output weight; empty when
// the target sector does not match.
struct GradedComponents {
    std::map<mpq_class, QVec> by_weight;
    bool truncated = false;
};
GradedComponents chiral_io_apply(const LatticeSpec& s, long lambda, const QVec& v, int target_sector);

// Four-point terms c z1^{e1} z2^{e2} (iterate: c z0^{e1} z2^{e2}) of the chiral
// matrix elements <w'|Y(u,z1)Y(v,z2)w> and <w'|Y(Y(u,z0)v,z2)w>, w' the dual
// basis functional of `wp`; intermediate states truncated at weight tmax.
struct Term2 {
    mpq_class c, e1, e2;
};
std::vector<Term2> product_terms(const LatticeSpec& s, const BasisState& wp, const QVec& u, const QVec& v,
                                 const QVec& w, const mpq_class& tmax);
std::vector<Term2> iterate_terms(const LatticeSpec& s, const BasisState& wp, const QVec& u, const QVec& v,
                                 const QVec& w, const mpq_class& tmax);
// sum c exp(e1 l1 + e2 l2) for given logarithms.
std::complex<double> eval_terms(const std::vector<Term2>& t, std::complex<double> l1, std::complex<double> l2);

// log z with 0 <= arg z < 2 pi.
std::complex<double> log_branch(std::complex<double> z);

struct PairState {
    BasisState left, right;
    auto operator<=>(const PairState&) const = default;
};
using PairQ = std::map<PairState, mpq_class>;  // element of sum_a W^a (x) W^{a'}
using FullVector = std::map<PairState, std::complex<double>>;

// Truncated sum_{r,s} c_{r,s} z^r zbar^s with coefficients in W^a (x) W^{a'}.
struct BivariateSeries {
    std::map<std::pair<mpq_class, mpq_class>, FullVector> terms;
    bool truncated = false;
};

// Lattice chiral data together with the dual-basis coefficient of the right
// factor on each left label triple (all spaces are one-dimensional).
struct LatticeModel {
    LatticeSpec spec;
    std::map<Triple, std::complex<double>> coupling;
};
LatticeModel lattice_model(const LatticeSpec& s, const ChiralData& chiral);

BivariateSeries full_series(const LatticeModel& m, const PairQ& u, const PairQ& v, const mpq_class& tmax);
FullVector evaluate(const BivariateSeries& b, std::complex<double> z);

struct FullValue {
    FullVector value;
    BivariateSeries series;
    double tail = 0;  // largest term on the last retained weight shell
};
FullValue full_vertex_apply(const LatticeModel& m, const PairQ& u, const PairQ& v, std::complex<double> z, int T);

struct Sample {
    std::complex<double> z1, z2;
};
// First sample (1.0, 0.8), the rest seeded in |z1| > |z2| > |z1 - z2|.
std::vector<Sample> region_samples(int count, std::uint64_t seed);

Report check_associativity(const LatticeModel& m, const std::vector<Sample>& samples, int T, double tol,
                           std::uint64_t seed);
Report check_skew_symmetry(const LatticeModel& m, int samples, int T, double tol, std::uint64_t seed);
Report check_grading_axioms(const LatticeModel& m);
Report check_virasoro(const LatticeSpec& s, int T);
Report check_residue_lemma(const LatticeSpec& s, int T);

struct JacobiConfig {
    double r = 0.5, r_out = 1.2, r_in = 0.2;
};
Report check_jacobi_residues(const LatticeModel& m, const JacobiConfig& cfg, int T, double tol);

// F entry of the abelian lattice chiral data on the key (a1..a6), labels being
// sectors of Z/2k; exact over Q(zeta_{8k}).  Throws when the product/iterate
// ratio is not the same rational on at least three matrix elements.
Cyc derive_f_entry(const LatticeSpec& s, const FKey& key, int T);

}  // namespace ffw
