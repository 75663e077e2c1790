#include "ffw/report.hpp"

#include <json.hpp>
#include <sstream>

namespace ffw {

bool Report::pass() const { return failures() == 0; }

size_t Report::failures() const {
    size_t n = 0;
    for (const auto& c : checks)
        if (!c.pass) ++n;
    return n;
}

void Report::add(const std::string& id, std::vector<std::string> index, bool ok, std::string residual,
                 std::string path) {
    checks.push_back({id, std::move(index), ok, std::move(path), std::move(residual)});
}

void Report::merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i];
    }
    return s;
}

}  // namespace

std::string render_text(const std::vector<Report>& reports, bool verbose) {
    std::ostringstream os;
    bool all = true;
    for (const auto& r : reports) {
        all = all && r.pass();
        os << "[" << (r.pass() ? "PASS" : "FAIL") << "] " << r.suite << " -- " << r.identity << " ("
           << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks)\n";
        for (const auto& n : r.notes) os << "    note: " << n << "\n";
        for (const auto& c : r.checks) {
            if (c.pass && !verbose) continue;
            os << "    " << (c.pass ? "ok   " : "FAIL ") << c.id << " (" << join(c.index, ",") << ")";
            if (!c.residual.empty()) os << " residual=" << c.residual;
            if (c.path != "exact") os << " [" << c.path << "]";
            os << "\n";
        }
    }
    os << "verdict: " << (all ? "pass" : "fail") << "\n";
    return os.str();
}

std::string render_json(const std::vector<Report>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["suite"] = r.suite;
        j["identity"] = r.identity;
        j["verdict"] = r.pass() ? "pass" : "fail";
        j["notes"] = r.notes;
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& c : r.checks) {
            cs.push_back({{"id", c.id}, {"index", c.index}, {"status", c.pass ? "pass" : "fail"},
                          {"path", c.path}, {"residual", c.residual}});
        }
        j["checks"] = cs;
        out.push_back(j);
    }
    return out.dump(2) + "\n";
}

std::vector<Report> parse_json_reports(const std::string& text) {
    auto in = nlohmann::json::parse(text);
    std::vector<Report> out;
    for (const auto& j : in) {
        Report r;
        r.suite = j.at("suite").get<std::string>();
        r.identity = j.at("identity").get<std::string>();
        r.notes = j.value("notes", std::vector<std::string>{});
        for (const auto& c : j.at("checks")) {
            r.add(c.at("id").get<std::string>(), c.at("index").get<std::vector<std::string>>(),
                  c.at("status").get<std::string>() == "pass", c.at("residual").get<std::string>(),
                  c.at("path").get<std::string>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ffw
