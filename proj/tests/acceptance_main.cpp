// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <vector>

#include "fixtures.hpp"
#include "mtc/coset.hpp"
#include "mtc/generators.hpp"
#include "mtc/spectral.hpp"

using namespace mtc;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail = {}) {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, what,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Int su2_fusion_rule(int k, int a, int b, int c) {
    if ((a + b + c) % 2 != 0) return 0;
    if (c < std::abs(a - b) || c > std::min(a + b, 2 * k - a - b)) return 0;
    return 1;
}

double check_residual(const ValidationReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return c.residual;
    return std::numeric_limits<double>::infinity();
}

// ---- criterion 1: generator validity -------------------------------------
void criterion_generators() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 8 && ok; ++k) {
        const ModularData md = su2_level(k);
        const ValidationReport rep = validate(md);
        ok = rep.pass && rep.worst() < 1e-9 && check_residual(rep, "verlinde_integral") < 1e-6;
        if (!ok) detail = md.name + " residual " + std::to_string(rep.worst());
        const FusionTensor n = verlinde(md);
        for (int a = 0; a <= k && ok; ++a)
            for (int b = 0; b <= k && ok; ++b)
                for (int c = 0; c <= k && ok; ++c)
                    if (n.at(a, b, c) != su2_fusion_rule(k, a, b, c)) {
                        ok = false;
                        detail = md.name + " fusion differs from the Clebsch-Gordan oracle";
                    }
    }
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{{3, 4}, {4, 5}, {5, 6}}) {
        if (!ok) break;
        const ValidationReport rep = validate(minimal_model(p, q));
        ok = rep.pass && rep.worst() < 1e-9 && check_residual(rep, "verlinde_integral") < 1e-6;
        if (!ok) detail = "minimal_model residuals";
    }
    const double dt = seconds_since(t0);
    if (dt >= 2.0) {
        ok = false;
        detail = "runtime " + std::to_string(dt) + " s";
    }
    report(1, "generator validity (su2 k<=8, minimal models; residuals, CG oracle, <2 s)", ok, detail);
}

// ---- criterion 2: Ising coset end-to-end ----------------------------------
void criterion_ising() {
    bool ok = true;
    std::string detail;
    try {
        const CosetSystem& cs = fixtures::ising_coset();
        if (kw_set(cs) != std::vector<int>{0, 2}) {
            ok = false;
            detail = "KW set";
        }
        const FieldIdentification f = field_identification(cs);
        if (!(f.orbits == std::vector<std::vector<int>>{{0, 3}, {1, 2}} &&
              f.supports == std::vector<std::vector<int>>{{0, 2}, {1}} && f.supports_consistent)) {
            ok = false;
            detail = "field identification orbits";
        }
        const DimFormulaReport d = check_dim_formulas(cs);
        for (double c : d.c)
            if (std::abs(c - 1.0) >= 1e-9) ok = false;
        if (d.worst >= 1e-9) {
            ok = false;
            detail = "dimension agreement " + std::to_string(d.worst);
        }
        if (std::abs(d.b11 - 0.5) >= 1e-12 || d.b11_residual >= 1e-12) {
            ok = false;
            detail = "b(1,1)";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(2, "Ising coset end-to-end (KW, orbits, c_i, dimensions, b(1,1))", ok, detail);
}

// ---- criterion 3: Kac-Wakimoto hypothesis ---------------------------------
void criterion_kw_hypothesis() {
    bool ok = true;
    std::string detail;
    try {
        const std::vector<CosetSystem> systems{fixtures::ising_coset(), fixtures::k2_diagonal_coset(),
                                               fixtures::trivial_system(minimal_model(3, 4)),
                                               fixtures::double_system(minimal_model(3, 4))};
        for (const CosetSystem& cs : systems) {
            const KwHypothesisReport h = kw_hypothesis(cs);
            if (!(h.max_abs_imag < 1e-9 && h.min_real > -1e-9)) {
                ok = false;
                detail = "extremes re=" + std::to_string(h.min_real) +
                         " |im|=" + std::to_string(h.max_abs_imag);
            }
        }
        const CosetSystem& cs = fixtures::ising_coset();
        const Complex prod = cs.mdc.s(1, identify_induced(cs, 2)) * std::conj(cs.md1.s(1, 2));
        if (std::abs(prod - Complex(std::sqrt(2.0) / 4.0, 0.0)) >= 1e-10) {
            ok = false;
            detail = "specific product (i=(0,1), alpha=1, beta=2)";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(3, "KW hypothesis products real nonnegative on all fixtures; sqrt(2)/4 entry", ok, detail);
}

// ---- criterion 4: group-equivalence agreement ------------------------------
void criterion_group_equivalence() {
    bool ok = true;
    std::string detail;
    try {
        for (const CosetSystem& cs : {fixtures::ising_coset(), fixtures::k2_diagonal_coset(),
                                      fixtures::trivial_system(minimal_model(3, 4)),
                                      fixtures::double_system(minimal_model(3, 4))})
            if (!kw_group_diagnostics(cs).agree) ok = false;

        // 100 randomized pointed systems, deterministic seed
        unsigned state = 20260810u;
        auto next = [&state] {
            state = state * 1664525u + 1013904223u;
            return state >> 16;
        };
        auto random_pointed = [&](int max_n) {
            while (true) {
                const int n = 1 + static_cast<int>(next() % max_n);
                const int t = static_cast<int>(next() % (2 * n));
                const int tm = ((t % n) + n) % n;
                if (std::gcd(tm == 0 ? n : tm, n) != 1 || (n * t) % 2 != 0) continue;
                return pointed_cyclic(n, t);
            }
        };
        for (int built = 0; built < 100; ++built) {
            const ModularData x = random_pointed(12);
            CosetSystem cs = [&]() -> CosetSystem {
                switch (built % 3) {
                    case 0: return fixtures::double_system(x);
                    case 1: return fixtures::trivial_system(x);
                    default: return fixtures::double_system(deligne_product(random_pointed(3), random_pointed(3)));
                }
            }();
            const GroupDiagnostics g = kw_group_diagnostics(cs);
            if (!g.agree) {
                ok = false;
                detail = "disagreement on " + cs.md1.name + " variant " + std::to_string(built % 3);
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(4, "four group-equivalence conditions agree on fixtures and 100 random pointed systems", ok,
           detail);
}

// ---- criterion 5: module category and simultaneous diagonalization --------
void criterion_spectral() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        const CosetSystem& cs = fixtures::ising_coset();
        const ModuleClassBasis basis = decompose_module_category(cs.algebra);
        std::vector<double> dims;
        for (const auto& sc : basis.simples) dims.push_back(sc.dim);
        std::sort(dims.begin(), dims.end());
        const std::vector<double> want{1, 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0)};
        if (basis.size() != 6 || basis.local_indices.size() != 4) {
            ok = false;
            detail = "class count";
        }
        for (size_t i = 0; i < 6 && ok; ++i)
            if (std::abs(dims[i] - want[i]) >= 1e-9) {
                ok = false;
                detail = "dimension multiset";
            }
        const SpectralDecomposition sd = diagonalize(basis, cs.mdc, cs.product);
        if (sd.vectors.size() != 6) {
            ok = false;
            detail = "eigenvector count";
        }
        if (!verify_E_criterion(sd, basis).pass) {
            ok = false;
            detail = "membership biconditional";
        }
        const SpectralIdentityReport si = verify_spectral_identities(sd, basis, cs.mdc, cs.product);
        if (si.worst >= 1e-8) {
            ok = false;
            detail = "identity residual " + std::to_string(si.worst);
        }
        if (si.step3 >= 1e-8) ok = false;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    const double dt = seconds_since(t0);
    if (dt >= 5.0) {
        ok = false;
        detail = "runtime " + std::to_string(dt) + " s";
    }
    report(5, "module category + joint diagonalization of the Ising extension (<5 s)", ok, detail);
}

// ---- criterion 6: branching solver oracle ----------------------------------
void criterion_solver() {
    bool ok = true;
    std::string detail;
    try {
        const auto ising = solve_branching(su2_level(2), minimal_model(3, 4),
                                           deligne_product(su2_level(1), su2_level(1)), 2);
        const auto k2 = solve_branching(su2_level(3), minimal_model(4, 5),
                                        deligne_product(su2_level(2), su2_level(1)), 2);
        if (ising.size() != 1 || k2.size() != 1) {
            ok = false;
            detail = "solution counts " + std::to_string(ising.size()) + ", " + std::to_string(k2.size());
        } else {
            for (const CosetSystem* cs : {&ising.front(), &k2.front()}) {
                if (s_covariance_check(*cs).residual >= 1e-8) ok = false;
                if (!check_dim_formulas(*cs).pass) ok = false;
            }
        }
        const auto none = solve_branching(su2_level(2), minimal_model(3, 4), su2_level(1), 2);
        if (!none.empty()) {
            ok = false;
            detail = "inconsistent triple produced solutions";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(6, "solver: unique solutions for Ising and k=2 triples, none for the inconsistent one", ok,
           detail);
}

// ---- criterion 7: negative controls ----------------------------------------
// A tampered-twist system must fail at least one of: validate, KW criteria
// agreement, covariance / system construction. No silent pass.
bool tamper_flips(const CosetSystem& good, int which_md, int label) {
    ModularData bad1 = good.md1, bad2 = good.md2, badc = good.mdc;
    ModularData* target = which_md == 0 ? &bad1 : (which_md == 1 ? &bad2 : &badc);
    target->twists(label) *= std::polar(1.0, kPi / 5.0);
    if (!validate(*target).pass) return true;
    try {
        const CosetSystem cs = CosetSystem::build(bad1, bad2, badc, good.branching);
        if (s_covariance_check(cs).residual >= 1e-9) return true;
        kw_set(cs); // throws on criteria disagreement
    } catch (const InconsistencyError&) {
        return true;
    }
    return false;
}

void criterion_negative_controls() {
    bool ok = true;
    std::string detail;
    try {
        // su2_2 label 2 sits in the algebra support of the Ising coset
        if (!tamper_flips(fixtures::ising_coset(), 0, 2)) {
            ok = false;
            detail = "ising coset md1";
        }
        if (!tamper_flips(fixtures::ising_coset(), 1, 2)) {
            ok = false;
            detail = "ising coset md2";
        }
        if (!tamper_flips(fixtures::k2_diagonal_coset(), 0, 2)) {
            ok = false;
            detail = "k2 coset md1";
        }
        if (!tamper_flips(fixtures::trivial_system(minimal_model(3, 4)), 1, 2)) {
            ok = false;
            detail = "trivial system md2";
        }
        if (!tamper_flips(fixtures::double_system(minimal_model(3, 4)), 0, 1)) {
            ok = false;
            detail = "double system md1";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(7, "tampered twists flip validate / KW agreement / covariance, never silent", ok, detail);
}

} // namespace

int main() {
    criterion_generators();
    criterion_ising();
    criterion_kw_hypothesis();
    criterion_group_equivalence();
    criterion_spectral();
    criterion_solver();
    criterion_negative_controls();
    if (failures > 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
