#pragma once

#include "jacsob/jacobi.hpp"
#include "jacsob/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jacsob {

struct Check {
    std::string description;
    double measured;
    double threshold;
    bool pass;
};

struct ReportSettings {
    std::optional<int> N;
    std::optional<double> p;
    std::optional<int> m;
    std::optional<std::uint64_t> seed;
    GridSpec grid;
};

struct ExperimentReport {
    std::string name;
    std::vector<JacobiParams> params;
    ReportSettings settings;
    std::vector<Check> checks;

    /// Conjunction of the per-check flags (true for an empty list).
    bool overall() const;

    /// Throws DomainError for a non-finite measured value.
    void add(std::string description, double measured, double threshold, bool pass);
    /// pass iff measured <= threshold
    void add_le(std::string description, double measured, double threshold);
    /// pass iff measured >= threshold
    void add_ge(std::string description, double measured, double threshold);
    /// pass iff measured > threshold
    void add_gt(std::string description, double measured, double threshold);
};

enum class ReportFormat { json, csv };

ReportFormat parse_format(const std::string& s);

std::string report_json(const ExperimentReport& r);
std::string report_csv(const ExperimentReport& r);

/// Throws std::runtime_error when the file cannot be written.
void write_report(const ExperimentReport& r, ReportFormat format, const std::string& path);

} // namespace jacsob
