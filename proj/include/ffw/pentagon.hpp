#pragma once

#include <map>
#include <optional>

#include "ffw/chiral.hpp"

namespace ffw {

// Multiplicity-free fusing data: one scalar per admissible key.
using FValues = std::map<FKey, Cyc>;

// A gauge parameter lambda(t) acts on F(a1..a6) by
//   lambda(a1,a5,a4) lambda(a2,a3,a5) / (lambda(a6,a3,a4) lambda(a1,a2,a6)).
// A pivot records an entry set to 1 together with its row reduced against
// the earlier pivots; the pivot parameter has coefficient +-1.
struct GaugePivot {
    FKey entry;
    Triple param;
    std::map<Triple, int> row;
};

struct PentagonSolution {
    FValues values;
    std::vector<GaugePivot> pivots;
};

struct SolveStats {
    int unknowns = 0;
    int equations = 0;
    int branches = 0;
};

// Every solution of the pentagon system over Q(zeta_N) with unit-normalized
// entries, one per gauge class reachable by the pivot choices; each is
// re-verified with verify_pentagon.  Requires multiplicity-free fusion and
// at most four labels.
std::vector<PentagonSolution> solve_pentagon(const FusionData& fusion, int order, SolveStats* stats = nullptr);

// Gauge row of an admissible key (parameters with the unit in the first two slots are frozen).
std::map<Triple, int> gauge_row(const FusionData& f, const FKey& k);

// Gauge-transforms G so that every pivot entry of the solution becomes 1;
// absent when a pivot entry of G vanishes.
std::optional<FValues> to_solver_gauge(const FusionData& f, const FValues& G, const PentagonSolution& s);

// True when G is gauge equivalent to one of the solutions.
bool gauge_equivalent(const FusionData& f, const FValues& G, const std::vector<PentagonSolution>& sols);

FValues values_of(const FTensor& F);
void fill_tensor(FTensor& F, const FValues& v);

}  // namespace ffw
