#pragma once

#include "mtc/extension.hpp"

namespace mtc {

/// One joint eigenvector of the commuting family {T_j, V^lambda}, labeled by
/// the local simple i (a label of the local-module modular data) and the
/// ambient label mu whose S-matrix characters match its eigenvalues.
struct EigvecRecord {
    int local_label = -1;   // i, as a label of local_s
    int ambient_label = -1; // mu, as a label of the ambient data
    int mult_index = 0;     // m, 1-based within (i, mu)
    CVector v;              // components over the class basis, unit norm
    double residual = 0.0;  // worst eigen-equation residual
};

struct SpectralDecomposition {
    std::vector<EigvecRecord> vectors;
    std::vector<int> local_class_to_label; // basis.local_indices[j] carries local_s label [j]
};

/// Matches the local classes of the basis to the labels of `local_s` by
/// dimension, twist, and fusion ring; throws when no bijection exists.
std::vector<int> match_local_labels(const ModuleClassBasis& basis, const ModularData& local_s,
                                    Tolerances tol = {});

/// Simultaneous diagonalization of {T_j} and {V^lambda} by iterative common
/// eigenspace refinement. Every eigenvector must receive a unique (i, mu)
/// label within the matching radius 1e-6; anything else is an error.
SpectralDecomposition diagonalize(const ModuleClassBasis& basis, const ModularData& local_s,
                                  const ModularData& ambient_s, Tolerances tol = {});

struct ECriterionReport {
    bool pass = false;
    long pairs_checked = 0;
    std::vector<std::pair<int, int>> mismatches; // (i, mu) where the biconditional fails
};

/// Theorem-7.1 membership: an eigenvector labeled (i, mu) exists iff
/// sigma_i is a direct summand of a_mu, i.e. b_{i mu} = <sigma_i, a_mu> > 0.
/// Exact biconditional, no tolerance on the integer side.
ECriterionReport verify_E_criterion(const SpectralDecomposition& sd, const ModuleClassBasis& basis);

struct SpectralIdentityReport {
    double step1 = 0.0;      // S-covariance of b_{j lambda}
    double step2 = 0.0;      // v_{sigma_j} = (s_{j' i}/s_{1i}) v_1
    double step3 = 0.0;      // sum_m |v_1|^2 / (s^D_{1 delta} s_{1 k}) = b_{k delta}
    double resolution = 0.0; // spectral resolution of every V^lambda
    double worst = 0.0;
    bool pass = false;
};

SpectralIdentityReport verify_spectral_identities(const SpectralDecomposition& sd,
                                                  const ModuleClassBasis& basis,
                                                  const ModularData& local_s,
                                                  const ModularData& ambient_s, Tolerances tol = {});

} // namespace mtc
