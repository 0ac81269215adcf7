#include "jacsob/report.hpp"

#include "jacsob/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jacsob {

bool ExperimentReport::overall() const {
    for (const Check& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

void ExperimentReport::add(std::string description, double measured, double threshold, bool pass) {
    if (!std::isfinite(measured)) {
        throw DomainError("non-finite measured value for check: " + description);
    }
    checks.push_back({std::move(description), measured, threshold, pass});
}

void ExperimentReport::add_le(std::string description, double measured, double threshold) {
    add(std::move(description), measured, threshold, measured <= threshold);
}

void ExperimentReport::add_ge(std::string description, double measured, double threshold) {
    add(std::move(description), measured, threshold, measured >= threshold);
}

void ExperimentReport::add_gt(std::string description, double measured, double threshold) {
    add(std::move(description), measured, threshold, measured > threshold);
}

ReportFormat parse_format(const std::string& s) {
    if (s == "json") {
        return ReportFormat::json;
    }
    if (s == "csv") {
        return ReportFormat::csv;
    }
    throw ConfigError("unknown output format '" + s + "' (expected json or csv)");
}

namespace {

nlohmann::json number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

std::string g17(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

} // namespace

std::string report_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["params"] = nlohmann::json::array();
    for (const auto& p : r.params) {
        j["params"].push_back({{"alpha", p.alpha()}, {"beta", p.beta()}});
    }
    nlohmann::ordered_json s;
    s["N"] = r.settings.N ? nlohmann::json(*r.settings.N) : nlohmann::json(nullptr);
    s["p"] = r.settings.p ? number(*r.settings.p) : nlohmann::json(nullptr);
    s["m"] = r.settings.m ? nlohmann::json(*r.settings.m) : nlohmann::json(nullptr);
    s["seed"] = r.settings.seed ? nlohmann::json(*r.settings.seed) : nlohmann::json(nullptr);
    s["grid"] = {{"panels_per_side", r.settings.grid.panels_per_side},
                 {"ratio", r.settings.grid.ratio},
                 {"nodes_per_panel", r.settings.grid.nodes_per_panel}};
    j["settings"] = s;
    j["checks"] = nlohmann::json::array();
    for (const Check& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["description"] = c.description;
        cj["measured"] = c.measured;
        cj["threshold"] = number(c.threshold);
        cj["pass"] = c.pass;
        j["checks"].push_back(cj);
    }
    j["overall"] = r.overall();
    return j.dump(2) + "\n";
}

std::string report_csv(const ExperimentReport& r) {
    std::ostringstream out;
    out << "name,check,measured,threshold,pass\n";
    for (const Check& c : r.checks) {
        out << csv_field(r.name) << ',' << csv_field(c.description) << ',' << g17(c.measured) << ','
            << g17(c.threshold) << ',' << (c.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

void write_report(const ExperimentReport& r, ReportFormat format, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << (format == ReportFormat::json ? report_json(r) : report_csv(r));
    f.close();
    if (!f) {
        throw std::runtime_error("failed writing " + path);
    }
}

} // namespace jacsob
