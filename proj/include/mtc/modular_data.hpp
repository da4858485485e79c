#pragma once

#include <string>
#include <vector>

#include "mtc/types.hpp"

namespace mtc {

/// The numerical skeleton of a pseudo-unitary modular tensor category:
/// an ordered label set (index 0 is the tensor unit), the *normalized*
/// unitary S-matrix, and the ribbon twist of each simple object. The
/// unnormalized matrix is recovered as D*s with D = 1/s(0,0).
struct ModularData {
    std::string name;
    std::vector<std::string> labels;
    CMatrix s;
    CVector twists;

    int rank() const { return static_cast<int>(labels.size()); }
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass = true;

    void add(std::string name, bool ok, double residual);
    double worst() const;
};

/// Nonnegative-integer structure constants N_{ab}^c of a fusion ring,
/// stored as a dense rank^3 array.
struct FusionTensor {
    int rank = 0;
    std::vector<Int> n;

    Int at(int a, int b, int c) const { return n[(static_cast<size_t>(a) * rank + b) * rank + c]; }
    Int& at(int a, int b, int c) { return n[(static_cast<size_t>(a) * rank + b) * rank + c]; }

    /// Fusion matrix (N_a)_{bc} = N_{ab}^c.
    IntMatrix matrix(int a) const;
    /// a applied to an integer vector: (N_a v)_c = sum_b N_{ab}^c v_b.
    IntVector apply(int a, const IntVector& v) const;
};

/// Grothendieck-group elements (multiplicity vectors over the labels of a
/// ModularData) are plain IntVector values throughout.
using ObjectVector = IntVector;

/// Quantum dimensions d_a = s(0,a)/s(0,0) and the positive square root of
/// the global dimension, D = 1/s(0,0).
struct QuantumDims {
    std::vector<double> d;
    double total = 1.0;
};

/// Runs every ModularData invariant and reports per-check residuals.
/// Throws StructuralError when shapes are inconsistent (that is malformed
/// input, not an invariant failure).
ValidationReport validate(const ModularData& md, Tolerances tol = {});

/// Verlinde formula, N_{ab}^c = sum_x s_{ax} s_{bx} conj(s_{cx}) / s_{0x},
/// rounded to integers. Throws InconsistencyError when any coefficient is
/// farther than tol.integer from a nonnegative integer.
FusionTensor verlinde(const ModularData& md, Tolerances tol = {});

QuantumDims quantum_dims(const ModularData& md);

/// Charge conjugation a -> a' read off from s*s, which must be a
/// permutation matrix. The result is an involution fixing the unit.
std::vector<int> dual_permutation(const ModularData& md, Tolerances tol = {});

/// True iff the double braiding of a and b is trivial, via the S-matrix
/// test |D*s_{ab} - d_a*d_b| < tol.num.
bool monodromy_is_trivial(const ModularData& md, int a, int b, Tolerances tol = {});

/// Deligne product: labels are ordered pairs (left-major), S is the
/// entrywise tensor product, twists multiply.
ModularData deligne_product(const ModularData& lhs, const ModularData& rhs);

/// Fusion tensor of a Deligne product from the factors (exact; avoids the
/// quartic Verlinde sum on the product).
FusionTensor fusion_tensor_product(const FusionTensor& lhs, const FusionTensor& rhs);

/// Max residual of the twist/S/fusion consistency identity
///   D * s_{ab} * theta_a * theta_b = sum_c N_{ab}^c theta_c d_c.
/// The convention (no dual on either index) is pinned by the su2 and
/// pointed-cyclic generators and frozen.
double balancing_check(const ModularData& md, const FusionTensor& fusion);

/// The reverse category: conjugate S and conjugate twists.
ModularData mirror(const ModularData& md);

/// Structural consistency of a fusion tensor: unit row, commutativity,
/// duality against the given permutation, associativity.
ValidationReport check_fusion_invariants(const FusionTensor& fusion, const std::vector<int>& dual);

} // namespace mtc
