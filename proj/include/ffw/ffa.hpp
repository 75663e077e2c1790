#pragma once

#include <memory>

#include "ffw/chiral.hpp"

namespace ffw {

// Sum_p Y_p (x) Y'_p on one label triple: left coefficients in the basis of V_t,
// right coefficients (dual basis) in the basis of V_{t'}; column p is the p-th pair.
struct VertexBlock {
    Triple t;
    CMat left;
    CMat right;
};

struct Sector {
    int left, right;             // (a, a')
    mpq_class h_left, h_right;   // lowest weights of the two chiral halves
};

struct FFAStructure {
    std::shared_ptr<const ChiralData> chiral;
    std::vector<Sector> sectors;
    std::map<Triple, VertexBlock> blocks;
    std::map<int, Cyc> weights;  // F_a, keyed by the left label

    int order() const { return chiral->order; }
};

class ConstructionRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FFAStructure construct(const ChiralData& chiral);

// Coefficient matrix of the canonical element on V_t (x) V_{t'}: left * right^T.
CMat canonical_element(const VertexBlock& b);

Report verify_associativity_structure(const FFAStructure& ffa);
Report verify_identity_property(const FFAStructure& ffa);
Report verify_skew_symmetry_structure(const FFAStructure& ffa);
Report verify_single_valuedness(const FFAStructure& ffa);
std::map<std::pair<int, int>, Cyc> bilinear_form_weights(const FFAStructure& ffa);
Report verify_invariance_structure(const FFAStructure& ffa, bool with_factor = true);

// Transport of F and the sigma matrices under Y~_i = sum_r B_t[r][i] Y_r on every space.
ChiralData change_basis(const ChiralData& c, const std::map<Triple, CMat>& basis);

}  // namespace ffw
