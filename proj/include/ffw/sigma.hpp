#pragma once

#include "ffw/chiral.hpp"

namespace ffw {

// sigma12 / sigma23 scalars for multiplicity-free data, determined by the
// fusing matrices up to one sign per S3 orbit of spaces:
//   rho(x,y,z) = F_x / (F(x,y,y',x,e,z) F(z,z',x,x,y',e)),
//   s23(t) = rho(t) s12(sigma12 sigma23 t).
// Candidates are returned in a fixed order; none is checked.
std::vector<S3Action> sigma_candidates(const ChiralData& c);

// First candidate passing S3 relations, canonical normalization, both
// pairing formulas, the left-inverse formula, the F F' delta identity and
// invariance of the modified form.  Throws when none does.
S3Action derive_sigma(const ChiralData& c);

bool sigma_battery(const ChiralData& c);

}  // namespace ffw
