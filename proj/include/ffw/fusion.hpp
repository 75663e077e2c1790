#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ffw/report.hpp"

namespace ffw {

using Triple = std::array<int, 3>;

struct FusionData {
    std::vector<std::string> labels;
    int unit = 0;
    std::vector<int> dual;
    std::vector<mpq_class> weight;
    std::map<Triple, int> fusion;  // N_{a1 a2}^{a3}, only positive entries stored

    int size() const { return (int)labels.size(); }
    int N(int a1, int a2, int a3) const;
    int N(const Triple& t) const { return N(t[0], t[1], t[2]); }
    int index(const std::string& name) const;  // throws on unknown label
    const std::string& name(int a) const { return labels.at(a); }
    std::vector<std::string> names(const Triple& t) const;
    // lcm of weight denominators times two: the smallest admissible field order
    long min_field_order() const;
};

// Every violated structural invariant, with the offending labels.  When
// field_order > 0 the divisibility rule for the weight phases is checked too.
Report validate(const FusionData& data, int field_order = 0);

std::vector<std::pair<Triple, int>> nonzero_spaces(const FusionData& data);

// Dual (primed) partner of a space: (a1,a2,a3) -> (a1',a2',a3').
Triple primed(const FusionData& data, const Triple& t);
Triple swap12(const Triple& t);
Triple swap23(const FusionData& data, const Triple& t);  // (a1,a2,a3) -> (a1,a3',a2')

// Group-law fusion ring Z/n with the given weights.
FusionData cyclic_fusion(int n, const std::vector<mpq_class>& weights);

}  // namespace ffw
