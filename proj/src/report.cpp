#include "mtc/report.hpp"

#include <cstdio>
#include <sstream>

namespace mtc {

using nlohmann::json;

namespace {

std::string fmt_residual(double r) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", r);
    return buf;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skip: return "skip";
        case Status::Info: return "info";
    }
    return "info";
}

Status of(bool ok) { return ok ? Status::Pass : Status::Fail; }

} // namespace

ReportItem& ReportSection::add(std::string label, Status st, double residual, std::string detail) {
    items.push_back({std::move(label), st, residual, std::move(detail)});
    if (st == Status::Fail) status = Status::Fail;
    return items.back();
}

ReportSection& Report::section(std::string name) {
    sections.push_back(ReportSection{std::move(name), Status::Pass, {}});
    return sections.back();
}

bool Report::pass() const {
    for (const auto& s : sections)
        if (s.status == Status::Fail) return false;
    return true;
}

json report_to_json(const Report& report) {
    json j;
    j["title"] = report.title;
    j["pass"] = report.pass();
    json sections = json::array();
    for (const auto& s : report.sections) {
        json sec;
        sec["name"] = s.name;
        sec["status"] = status_name(s.status);
        json items = json::array();
        for (const auto& it : s.items) {
            json item;
            item["label"] = it.label;
            item["status"] = status_name(it.status);
            if (it.residual >= 0.0) item["residual"] = it.residual;
            if (!it.detail.empty()) item["detail"] = it.detail;
            items.push_back(std::move(item));
        }
        sec["items"] = std::move(items);
        sections.push_back(std::move(sec));
    }
    j["sections"] = std::move(sections);
    return j;
}

std::string report_to_markdown(const Report& report) {
    std::ostringstream out;
    out << "# " << report.title << "\n\n";
    out << "overall: **" << (report.pass() ? "pass" : "fail") << "**\n";
    for (const auto& s : report.sections) {
        out << "\n## " << s.name << " [" << status_name(s.status) << "]\n\n";
        for (const auto& it : s.items) {
            out << "- " << status_name(it.status) << "  " << it.label;
            if (it.residual >= 0.0) out << "  (residual " << fmt_residual(it.residual) << ")";
            if (!it.detail.empty()) out << "  — " << it.detail;
            out << "\n";
        }
    }
    return out.str();
}

Report validation_report(const ModularData& md, Tolerances tol) {
    Report report;
    report.title = "validate " + md.name;
    ReportSection& sec = report.section("invariants");
    const ValidationReport v = validate(md, tol);
    for (const auto& c : v.checks) sec.add(c.name, of(c.pass), c.residual);
    return report;
}

namespace {

std::string label_list(const ModularData& md, const std::vector<int>& idx) {
    std::string out = "{";
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ", ";
        out += md.labels[idx[i]];
    }
    return out + "}";
}

void spectral_sections(Report& report, const CosetSystem& cs, Tolerances tol) {
    ReportSection& sec = report.section("spectral verification");
    if (!cs.algebra.support_is_group(tol)) {
        sec.status = Status::Skip;
        sec.add("module category", Status::Skip, -1.0,
                "algebra support is not a group of simple currents; not constructible here");
        return;
    }
    try {
        const ModuleClassBasis basis = decompose_module_category(cs.algebra, tol);
        const ValidationReport bc = check_basis(basis, tol);
        for (const auto& c : bc.checks) sec.add("basis " + c.name, of(c.pass), c.residual);
        sec.add("simple classes", Status::Info, -1.0, std::to_string(basis.size()) + " total, " +
                                                          std::to_string(basis.local_indices.size()) +
                                                          " local");
        const SpectralDecomposition sd = diagonalize(basis, cs.mdc, cs.product, tol);
        double worst = 0.0;
        for (const auto& rec : sd.vectors) worst = std::max(worst, rec.residual);
        sec.add("joint eigenbasis", of(sd.vectors.size() == static_cast<size_t>(basis.size())), worst,
                std::to_string(sd.vectors.size()) + " labeled eigenvectors");
        const ECriterionReport ec = verify_E_criterion(sd, basis);
        sec.add("membership criterion", of(ec.pass), -1.0,
                std::to_string(ec.pairs_checked) + " (i, mu) pairs, exact biconditional");
        const SpectralIdentityReport si = verify_spectral_identities(sd, basis, cs.mdc, cs.product, tol);
        sec.add("branching covariance (step 1)", of(si.step1 < 1e-8), si.step1);
        sec.add("component proportionality (step 2)", of(si.step2 < 1e-8), si.step2);
        sec.add("weight identity (step 3)", of(si.step3 < 1e-8), si.step3);
        sec.add("spectral resolution", of(si.resolution < 1e-8), si.resolution);
    } catch (const InconsistencyError& e) {
        sec.add("module category", Status::Fail, -1.0, e.what());
    }
}

} // namespace

Report analyze_coset(const CosetSystem& cs, Tolerances tol) {
    Report report;
    report.title = "coset analysis: " + cs.mdc.name + " over " + cs.md1.name + " (x) " + cs.md2.name;

    {
        ReportSection& sec = report.section("assumptions");
        const ValidationReport a = check_assumptions(cs, tol);
        for (const auto& c : a.checks) sec.add(c.name, of(c.pass), c.residual);
    }

    std::vector<std::pair<int, int>> jmap;
    {
        ReportSection& sec = report.section("Kac-Wakimoto set");
        try {
            const std::vector<int> kw = kw_set(cs, tol);
            sec.add("KW", Status::Info, -1.0, label_list(cs.md1, kw));
            jmap = induced_labels(cs, tol);
            for (const auto& [beta, i] : jmap)
                sec.add("a_{" + cs.md1.labels[beta] + " (x) 1}", Status::Info, -1.0,
                        "= " + cs.mdc.labels[i]);
            sec.add("criteria agreement", Status::Pass);
        } catch (const InconsistencyError& e) {
            sec.add("criteria agreement", Status::Fail, -1.0, e.what());
            return report;
        }
    }

    {
        ReportSection& sec = report.section("dimension formulas");
        const DimFormulaReport d = check_dim_formulas(cs, tol);
        sec.add("b(1,1) = s2(1,1)", of(d.b11_residual < tol.num), d.b11_residual,
                "b(1,1) = " + fmt_residual(d.b11));
        for (int i = 0; i < cs.nI(); ++i)
            sec.add("c_" + cs.mdc.labels[i], of(d.c[i] <= 1.0 + tol.num), -1.0, fmt_residual(d.c[i]));
        sec.add("three-way agreement", of(d.pass), d.worst,
                std::to_string(d.entries.size()) + " pairs (i, alpha)");
    }

    {
        ReportSection& sec = report.section("field identification");
        const FieldIdentification f = field_identification(cs, tol);
        for (size_t o = 0; o < f.orbits.size(); ++o)
            sec.add("orbit " + std::to_string(o + 1), Status::Info, -1.0,
                    label_list(cs.mdc, f.orbits[o]) + " supports " + label_list(cs.md2, f.supports[o]));
        sec.add("supports equal inside, disjoint across", of(f.supports_consistent));
    }

    GroupDiagnostics g;
    {
        ReportSection& sec = report.section("KW group diagnostics");
        g = kw_group_diagnostics(cs, tol);
        sec.add("(1) KW members invertible", Status::Info, -1.0, g.kw_invertible ? "true" : "false");
        sec.add("(2) dims factorize", Status::Info, -1.0, g.dims_factorize ? "true" : "false");
        sec.add("(3) all c_i = 1", Status::Info, -1.0, g.all_ci_one ? "true" : "false");
        sec.add("(4) dual fusion in J_1", Status::Info, -1.0, g.dual_fusion_in_j1 ? "true" : "false");
        sec.add("four conditions agree", of(g.agree));
    }

    {
        ReportSection& sec = report.section("Kac-Wakimoto hypothesis");
        const KwHypothesisReport h = kw_hypothesis(cs, tol);
        sec.add("min real part", of(h.min_real > -tol.num), std::abs(std::min(0.0, h.min_real)),
                fmt_residual(h.min_real) + " over " + std::to_string(h.triples) + " triples");
        sec.add("max |imag|", of(h.max_abs_imag < tol.num), h.max_abs_imag);
    }

    {
        ReportSection& sec = report.section("stabilizers and multiplicity structure");
        if (!g.kw_invertible) {
            sec.status = Status::Skip;
            sec.add("stabilizers", Status::Skip, -1.0, "KW is not a group; refusing to extrapolate");
        } else {
            bool bounds = true, same_dim = true, orbits = true;
            for (int i = 0; i < cs.nI(); ++i)
                for (int alpha : cs.ji[i]) {
                    const MultiplicityReport m = multiplicity_structure(cs, i, alpha, tol);
                    bounds = bounds && m.bound_holds;
                    same_dim = same_dim && m.summands_same_dim;
                    orbits = orbits && m.orbit_equivalence;
                    const StabilizerReport st = stabilizers(cs, i, alpha, tol);
                    sec.add("(" + cs.mdc.labels[i] + ", " + cs.md1.labels[alpha] + ")", Status::Info, -1.0,
                            "G^i = " + label_list(cs.md1, st.g_i) + ", G^(i,alpha) = " +
                                label_list(cs.md1, st.g_i_alpha) + ", <.,.> = " + std::to_string(m.inner) +
                                ", bound " + std::to_string(m.pairing_bound) +
                                (m.cyclic ? std::string(", cyclic") : std::string()) +
                                (m.multiplicity_free ? ", multiplicity-free" : ""));
                }
            sec.add("pairing bound holds", of(bounds));
            sec.add("summands share dimension", of(same_dim));
            sec.add("orbit equivalence of rows", of(orbits));
        }
    }

    {
        ReportSection& sec = report.section("mixed branching rule");
        const Int dev = mixed_branching_check(cs);
        sec.add("max deviation", of(dev == 0), static_cast<double>(dev));
    }

    spectral_sections(report, cs, tol);
    return report;
}

Report spectral_verification(const CosetSystem& cs, Tolerances tol) {
    Report report;
    report.title = "spectral verification: " + cs.md1.name + " (x) " + cs.md2.name + " algebra";
    spectral_sections(report, cs, tol);
    if (!report.sections.empty() && report.sections.front().status == Status::Skip)
        report.sections.front().status = Status::Fail; // standalone run: not constructible is a failure
    return report;
}

} // namespace mtc
