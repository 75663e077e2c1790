#pragma once

#include <string>
#include <vector>

#include "ffw/bundle.hpp"

namespace ffw {

// Suites in dependency order.
const std::vector<std::string>& suite_names();
std::vector<std::string> suite_prerequisites(const std::string& suite);

class UnknownSuite : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Runs the selected suites plus their prerequisites in dependency order.  A
// suite whose prerequisite failed is reported as failed without running.
// Throws UnknownSuite for names outside suite_names().
std::vector<Report> run_suites(const Bundle& bundle, const std::vector<std::string>& selected);
Report run_suite(const Bundle& bundle, const std::string& suite);

// Full-field structure of the bundle: the stored "ffa" section when present,
// otherwise construct() on the chiral data.
FFAStructure bundle_structure(const Bundle& bundle);

// Lattice F oracle against the pentagon solver (gauge equivalence) and the
// chiral suites on the lattice-emitted bundle.
Report lattice_cross_validation(const Bundle& lattice, int order);

std::vector<std::string> split_list(const std::string& s);

}  // namespace ffw
