#pragma once

#include "mtc/modular_data.hpp"

namespace mtc {

/// A commutative algebra object inside a ModularData, given by its
/// multiplicity vector. Construction enforces the invariants: unit
/// multiplicity 1, trivial twist on the support, support closed under
/// duality. Caches the fusion tensor and dimensions of the base.
struct AlgebraObject {
    ModularData base;
    FusionTensor fusion;
    QuantumDims dims;
    std::vector<int> dual;
    IntVector mult;

    /// `known_fusion` skips the Verlinde computation when the caller already
    /// has the fusion tensor of the base (e.g. for Deligne products).
    static AlgebraObject build(ModularData base, IntVector mult, Tolerances tol = {},
                               const FusionTensor* known_fusion = nullptr);

    double algebra_dim() const;
    /// True when the support consists of invertible objects forming a group
    /// under fusion, each with multiplicity one.
    bool support_is_group(Tolerances tol = {}) const;
};

/// Free module induction, (A (x) x)_c = sum_a m_a N_{ax}^c.
IntVector induce(const AlgebraObject& a, int x);

/// dim Hom_A(a_x, a_y) = sum_a m_a N_{ay}^x (Frobenius reciprocity).
Int induced_hom(const AlgebraObject& a, int x, int y);

/// Locality of the induced module a_x: the twist is constant (= theta_x)
/// on the support of induce(a, x).
bool is_local_induced(const AlgebraObject& a, int x, Tolerances tol = {});

/// One simple A-module class: its restriction to the base category, its
/// A-module dimension, and whether it is local.
struct SimpleClass {
    IntVector restriction;
    double dim = 0.0;
    bool local = false;
    int partner = -1; // index of the other half of a split induced module, -1 if none
};

/// Basis of simple A-module classes together with the fusion matrices
/// N_c of K(D_A): (N_c)_{vw} = <c (x)_A v, w>.
struct ModuleClassBasis {
    AlgebraObject algebra;
    std::vector<SimpleClass> simples;
    std::vector<IntMatrix> class_fusion;
    std::vector<int> local_indices;

    int size() const { return static_cast<int>(simples.size()); }
    int unit_class() const { return 0; }
};

/// Decomposes the module category of A into simple classes. Group-support
/// algebras are handled by orbit analysis (fixed points of order two split
/// into two halves; larger multiplicity spaces are rejected). Other
/// algebras go through a bounded exhaustive Gram factorization and fail
/// with an explicit error when the search is inconclusive.
ModuleClassBasis decompose_module_category(const AlgebraObject& a, Tolerances tol = {});

/// Action of the induced module a_lambda on the class basis,
/// V^lambda = sum_c <a_lambda, c> N_c.
IntMatrix module_fusion(const ModuleClassBasis& basis, int lambda);

/// Action of the j-th local simple (index into basis.local_indices).
IntMatrix module_fusion_local(const ModuleClassBasis& basis, int j);

/// Checks the basis against its defining identities: Gram realization,
/// FPdim sum rules, commutation of the class fusion matrices, and the
/// ring-homomorphism property of lambda -> V^lambda.
ValidationReport check_basis(const ModuleClassBasis& basis, Tolerances tol = {});

} // namespace mtc
