#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ffw/chiral.hpp"
#include "ffw/ffa.hpp"

namespace ffw {

struct Provenance {
    std::string generator;
    std::string seed;
    std::string version;
};

struct Bundle {
    ChiralData chiral;  // carries the field order and the fusion section
    nlohmann::json ffa;  // optional, null when absent
    Provenance provenance;

    int order() const { return chiral.order; }
    const FusionData& fusion() const { return chiral.fusion; }
};

// Parse or schema error; `where` is a field path such as chiral.F[3].value,
// or line:column for syntax errors.
class BundleError : public std::runtime_error {
public:
    BundleError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

nlohmann::json scalar_to_json(const Cyc& x);
Cyc scalar_from_json(const nlohmann::json& j, int order, const std::string& where);

nlohmann::json bundle_to_json(const Bundle& b);
Bundle bundle_from_json(const nlohmann::json& j);
std::string dump_bundle(const Bundle& b);
Bundle parse_bundle(const std::string& text);

// Loads and checks the structural invariants (fusion validation including
// the phase-divisibility rule, F entries on nonzero spaces, sigma shapes,
// canonical markers); throws BundleError on any failure.  With check off
// only parse and field-order errors are raised.
Bundle load_bundle(const std::string& path, bool check = true);
void save_bundle(const Bundle& b, const std::string& path);

// The optional "ffa" section: sectors, vertex-tensor blocks and form weights.
nlohmann::json ffa_to_json(const FFAStructure& s);
// Rebuilds the structure over `chiral` from a stored section.
FFAStructure ffa_from_json(const ChiralData& chiral, const nlohmann::json& j);

// Structural report used by load_bundle and the validate command.
Report validate_bundle(const Bundle& b);

}  // namespace ffw
