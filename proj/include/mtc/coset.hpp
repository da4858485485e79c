#pragma once

#include <optional>

#include "mtc/extension.hpp"

namespace mtc {

/// A categorical coset system: C1 and C2, the extension category C, and for
/// each simple M^i of C a nonnegative integer branching matrix Z^i over
/// J x K expressing M^i = (+)_{alpha} W^alpha (x) (i, alpha) with
/// (i, alpha) = sum_phi Z^i_{alpha phi} N^phi.
struct CosetSystem {
    ModularData md1, md2, mdc;
    std::vector<IntMatrix> branching;

    // caches
    ModularData product;
    FusionTensor n1, n2, nc;
    QuantumDims d1, d2, dc;
    std::vector<int> dual1, dual2, dualc;
    AlgebraObject algebra;
    std::vector<std::vector<int>> ji; // J_i per i
    std::vector<int> j1;

    int nI() const { return mdc.rank(); }
    int nJ() const { return md1.rank(); }
    int nK() const { return md2.rank(); }

    /// Builds the system and its caches. Shape problems throw
    /// StructuralError; assumption failures (malformed Z^1, non twist-trivial
    /// algebra, dimension mismatch) throw InconsistencyError.
    static CosetSystem build(ModularData md1, ModularData md2, ModularData mdc,
                             std::vector<IntMatrix> branching, Tolerances tol = {});
};

/// Structural and assumption checks as a report (validate of the three
/// categories, Z^1 shape, dimension match per i, modular covariance).
ValidationReport check_assumptions(const CosetSystem& cs, Tolerances tol = {});

struct CovarianceReport {
    double residual = 0.0;
    bool surjective = false; // every simple of C2 appears in some (i, alpha)
};

/// Residual of the S-covariance identity
///   s2 . Z^i_alpha = sum_{j, beta} conj(s1_{alpha beta}) sc_{ij} Z^j_beta
/// over all (i, alpha), plus the surjectivity statement.
CovarianceReport s_covariance_check(const CosetSystem& cs);

/// The Kac-Wakimoto set, computed by two independent criteria that must
/// agree: (a) twist constancy of beta (x) alpha over beta in J_1 and
/// (b) trivial monodromy with every member of J_1. Contains the unit, is
/// closed under duality, and fusion of members is supported in the set.
std::vector<int> kw_set(const CosetSystem& cs, Tolerances tol = {});

/// The label i in I with M^i = a_{beta (x) 1}, matched by exact restriction
/// vectors; the map is injective (Lemma-level uniqueness).
int identify_induced(const CosetSystem& cs, int beta, Tolerances tol = {});

/// All KW members at once: kw[beta] -> i.
std::vector<std::pair<int, int>> induced_labels(const CosetSystem& cs, Tolerances tol = {});

/// b(i, alpha) = sum_{beta in KW} conj(s1_{alpha beta}) sc_{i j(beta)}.
Complex b_coeff(const CosetSystem& cs, int i, int alpha, Tolerances tol = {});

struct DimFormulaEntry {
    int i = 0, alpha = 0;
    double z_sum = 0.0;       // sum_phi Z^i_{alpha phi} d2_phi
    double via_b = 0.0;       // b(i, alpha) / b(1, 1)
    double via_ci = 0.0;      // c_i d_i d_alpha
    double residual = 0.0;    // max pairwise deviation
};

struct DimFormulaReport {
    std::vector<DimFormulaEntry> entries;
    std::vector<double> c;        // c_i per i
    double b11 = 0.0;             // must equal s2(0,0)
    double b11_residual = 0.0;
    double worst = 0.0;
    bool pass = false;
};

DimFormulaReport check_dim_formulas(const CosetSystem& cs, Tolerances tol = {});

struct GroupDiagnostics {
    bool kw_invertible = false;   // (1) every KW member has dimension 1
    bool dims_factorize = false;  // (2) d_(i,alpha) = d_i d_alpha
    bool all_ci_one = false;      // (3) c_i = 1 for all i
    bool dual_fusion_in_j1 = false; // (4) alpha' x alpha supported in J_1
    bool agree = false;
};

/// The four equivalent conditions, evaluated independently; disagreement is
/// reported (it signals data outside the standing assumptions).
GroupDiagnostics kw_group_diagnostics(const CosetSystem& cs, Tolerances tol = {});

struct KwHypothesisReport {
    double min_real = 0.0;
    double max_abs_imag = 0.0;
    long triples = 0;
};

/// Extremes of the products sc_{i j(beta)} * conj(s1_{alpha beta}) over all
/// i in I, alpha in J_i, beta in KW. The hypothesis asserts them real >= 0.
KwHypothesisReport kw_hypothesis(const CosetSystem& cs, Tolerances tol = {});

struct FieldIdentification {
    std::vector<std::vector<int>> orbits;          // partition of I
    std::vector<std::vector<int>> supports;        // C2 support per orbit
    bool supports_consistent = false;              // equal inside, disjoint across
};

FieldIdentification field_identification(const CosetSystem& cs, Tolerances tol = {});

struct StabilizerReport {
    std::vector<int> g_i;        // G^i, subset of KW
    std::vector<int> g_i_alpha;  // G^{(i, alpha)}
    bool subgroups = false;
    bool in_j1 = false;          // each member of G^{(i,alpha)} lies in J_1
};

/// G^i and G^{(i,alpha)}. Requires KW to be a group of simple currents.
StabilizerReport stabilizers(const CosetSystem& cs, int i, int alpha, Tolerances tol = {});

struct MultiplicityReport {
    int i = 0, alpha = 0;
    Int inner = 0;               // <(i,alpha), (i,alpha)> = sum_phi Z^2
    Int stabilizer_order = 0;    // o(G^{(i,alpha)})
    Int pairing_bound = 0;       // sum_{eps in KW} N1_{alpha alpha'}^eps Nc_{i' i}^{k(eps)}
    bool summands_same_dim = false;
    bool orbit_equivalence = false; // (i,alpha) = (i,gamma) iff same G^i-orbit
    bool bound_holds = false;       // inner <= pairing_bound
    bool pairing_equality = false;  // inner == pairing_bound
    bool inner_matches_order = false; // reported, not asserted
    bool cyclic = false;
    bool multiplicity_free = false; // Z entries 0/1, t summands of dim d_i d_alpha / t
};

MultiplicityReport multiplicity_structure(const CosetSystem& cs, int i, int alpha, Tolerances tol = {});

/// Mixed branching rule: (1,beta) x (i,alpha) = sum_gamma N1_{beta alpha}^gamma (i,gamma)
/// in K(C2), an exact integer identity; also checks the module-closure
/// statement supp(beta x alpha) in J_i. Returns the max absolute deviation.
Int mixed_branching_check(const CosetSystem& cs);

/// Exhaustive branching solver: all families {Z^i} with entries in
/// [0, bound] satisfying the Z^1 structure, algebra validity, dimension
/// match, the row bound sum_phi Z^i d2 <= d_i d_alpha, and S-covariance.
std::vector<CosetSystem> solve_branching(const ModularData& md1, const ModularData& md2,
                                         const ModularData& mdc, Int bound, Tolerances tol = {});

} // namespace mtc
