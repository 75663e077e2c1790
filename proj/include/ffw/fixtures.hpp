#pragma once

#include <string>
#include <vector>

#include "ffw/bundle.hpp"

namespace ffw {

FusionData trivial_fusion();
FusionData ising_fusion();      // 1, psi, sigma with h = 0, 1/2, 1/16
FusionData fibonacci_fusion();  // 1, tau with h = 0, 2/5
FusionData lattice_fusion(int k);  // Z/2k, labels e, a, a2, ...; h_j = r(j)^2/4k

// Field orders used by the shipped fixtures.
constexpr int kIsingOrder = 32;
constexpr int kFibonacciOrder = 20;
int lattice_order(int k);

Bundle trivial_bundle();
Bundle ising_bundle();
Bundle fibonacci_bundle();
Bundle lattice_bundle(int k, int truncation = 8);

// Builds a bundle from fusion data and multiplicity-free F values: canonical
// markers on every canonical space, sigma matrices from derive_sigma.
Bundle assemble_bundle(const FusionData& fusion, int order, const std::map<FKey, Cyc>& F, const std::string& generator);

struct Mutation {
    std::string suite;  // suite expected to fail
    std::string name;
    Bundle bundle;
};
std::vector<Mutation> mutation_fixtures();

}  // namespace ffw
