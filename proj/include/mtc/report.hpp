#pragma once

#include <string>

#include "json.hpp"
#include "mtc/coset.hpp"
#include "mtc/spectral.hpp"

namespace mtc {

enum class Status { Pass, Fail, Skip, Info };

struct ReportItem {
    std::string label;
    Status status = Status::Info;
    double residual = -1.0; // negative: no residual attached
    std::string detail;
};

struct ReportSection {
    std::string name;
    Status status = Status::Pass;
    std::vector<ReportItem> items;

    ReportItem& add(std::string label, Status st, double residual = -1.0, std::string detail = {});
};

struct Report {
    std::string title;
    std::vector<ReportSection> sections;

    ReportSection& section(std::string name);
    bool pass() const;
};

nlohmann::json report_to_json(const Report& report);
std::string report_to_markdown(const Report& report);

/// Report for a validate run of a single ModularData.
Report validation_report(const ModularData& md, Tolerances tol = {});

/// The full coset analysis: KW set, covariance, dimension formulas, field
/// identification, group diagnostics, KW hypothesis, stabilizers and
/// multiplicity structure, mixed branching, and (for simple-current
/// algebras) the spectral verification.
Report analyze_coset(const CosetSystem& cs, Tolerances tol = {});

/// Just the spectral part (module category construction, joint
/// diagonalization, membership criterion, spectral identities).
Report spectral_verification(const CosetSystem& cs, Tolerances tol = {});

} // namespace mtc
