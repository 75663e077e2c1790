#pragma once

#include <string>
#include <vector>

namespace ffw {

struct CheckRecord {
    std::string id;                  // identity being checked
    std::vector<std::string> index;  // label/multiplicity tuple
    bool pass = true;
    std::string path = "exact";      // "exact" or "numeric"
    std::string residual;            // exact residual or numeric magnitude
};

struct Report {
    std::string suite;
    std::string identity;  // human-readable name of the identity family
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;

    bool pass() const;
    size_t failures() const;
    void add(CheckRecord r) { checks.push_back(std::move(r)); }
    void add(const std::string& id, std::vector<std::string> index, bool ok,
             std::string residual = "", std::string path = "exact");
    void merge(const Report& other);
};

std::string render_text(const std::vector<Report>& reports, bool verbose = false);
std::string render_json(const std::vector<Report>& reports);
std::vector<Report> parse_json_reports(const std::string& text);

}  // namespace ffw
