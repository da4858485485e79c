#include "mtc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

namespace mtc {

std::vector<int> match_local_labels(const ModuleClassBasis& basis, const ModularData& local_s,
                                    Tolerances tol) {
    const int L = static_cast<int>(basis.local_indices.size());
    if (local_s.rank() != L)
        throw InconsistencyError("local modular data rank does not match the number of local simples");
    const FusionTensor nloc = verlinde(local_s, tol);
    const QuantumDims dloc = quantum_dims(local_s);

    // candidate labels by dimension and twist; the twist of a local class is
    // the constant twist on its restriction support
    std::vector<std::vector<int>> candidates(L);
    for (int j = 0; j < L; ++j) {
        const SimpleClass& sc = basis.simples[basis.local_indices[j]];
        Complex theta{0.0, 0.0};
        for (int x = 0; x < basis.algebra.base.rank(); ++x)
            if (sc.restriction(x) != 0) {
                theta = basis.algebra.base.twists(x);
                break;
            }
        for (int lab = 0; lab < L; ++lab)
            if (std::abs(sc.dim - dloc.d[lab]) < 1e-6 && std::abs(theta - local_s.twists(lab)) < 1e-6)
                candidates[j].push_back(lab);
    }

    // the local block of the class fusion, in local ordering
    auto local_fusion = [&](int a, int b, int c) {
        return basis.class_fusion[basis.local_indices[a]](basis.local_indices[b], basis.local_indices[c]);
    };

    std::vector<int> assign(L, -1);
    std::vector<bool> used(L, false);
    std::function<bool(int)> dfs = [&](int j) -> bool {
        if (j == L) return true;
        for (int lab : candidates[j]) {
            if (used[lab]) continue;
            assign[j] = lab;
            used[lab] = true;
            bool ok = true;
            for (int a = 0; a <= j && ok; ++a)
                for (int b = 0; b <= j && ok; ++b)
                    for (int c = 0; c <= j && ok; ++c)
                        ok = local_fusion(a, b, c) == nloc.at(assign[a], assign[b], assign[c]);
            if (ok && dfs(j + 1)) return true;
            assign[j] = -1;
            used[lab] = false;
        }
        return false;
    };
    if (!dfs(0))
        throw InconsistencyError("local simples do not match the supplied local modular data");
    return assign;
}

namespace {

CMatrix to_complex(const IntMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) = Complex(static_cast<double>(m(r, c)), 0.0);
    return out;
}

// Refine a list of orthonormal-column subspaces into common eigenspaces of M.
void refine(std::vector<CMatrix>& subspaces, const CMatrix& M, double cluster_tol) {
    std::vector<CMatrix> next;
    for (const CMatrix& Q : subspaces) {
        const int d = static_cast<int>(Q.cols());
        if (d == 1) {
            next.push_back(Q);
            continue;
        }
        const CMatrix R = Q.adjoint() * M * Q;
        Eigen::ComplexEigenSolver<CMatrix> es(R);
        if (es.info() != Eigen::Success) throw InconsistencyError("eigensolver failed");
        // deterministic clustering: sort eigenvalues, split on gaps
        std::vector<int> order(d);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Complex va = es.eigenvalues()(a), vb = es.eigenvalues()(b);
            if (std::abs(va.real() - vb.real()) > 1e-12) return va.real() < vb.real();
            return va.imag() < vb.imag();
        });
        std::vector<std::vector<int>> clusters;
        for (int idx : order) {
            if (!clusters.empty() &&
                std::abs(es.eigenvalues()(idx) - es.eigenvalues()(clusters.back().back())) < cluster_tol)
                clusters.back().push_back(idx);
            else
                clusters.push_back({idx});
        }
        for (const auto& cluster : clusters) {
            CMatrix W(d, cluster.size());
            for (size_t c = 0; c < cluster.size(); ++c) W.col(c) = es.eigenvectors().col(cluster[c]);
            const CMatrix lifted = Q * W;
            Eigen::HouseholderQR<CMatrix> qr(lifted);
            const CMatrix thinQ =
                qr.householderQ() * CMatrix::Identity(lifted.rows(), static_cast<int>(cluster.size()));
            next.push_back(thinQ);
        }
    }
    subspaces = std::move(next);
}

} // namespace

SpectralDecomposition diagonalize(const ModuleClassBasis& basis, const ModularData& local_s,
                                  const ModularData& ambient_s, Tolerances tol) {
    if (ambient_s.rank() != basis.algebra.base.rank())
        throw StructuralError("ambient modular data rank does not match the algebra base");
    const int n = basis.size();
    const int L = static_cast<int>(basis.local_indices.size());
    const std::vector<int> localLabel = match_local_labels(basis, local_s, tol);

    std::vector<CMatrix> family;
    for (int j = 0; j < L; ++j) family.push_back(to_complex(module_fusion_local(basis, j)));
    for (int lam = 0; lam < ambient_s.rank(); ++lam) family.push_back(to_complex(module_fusion(basis, lam)));

    for (size_t a = 0; a < family.size(); ++a)
        for (size_t b = a + 1; b < family.size(); ++b)
            if ((family[a] * family[b] - family[b] * family[a]).cwiseAbs().maxCoeff() > 1e-12)
                throw InconsistencyError("operator family does not commute");

    std::vector<CMatrix> subspaces{CMatrix::Identity(n, n)};
    for (const CMatrix& M : family) refine(subspaces, M, 1e-7);

    // predicted eigenvalue tuples per (i, mu)
    const int nAmb = ambient_s.rank();
    auto predicted = [&](int i, int mu, size_t f) -> Complex {
        if (f < static_cast<size_t>(L)) {
            const int j = localLabel[f];
            return local_s.s(j, i) / local_s.s(0, i);
        }
        const int lam = static_cast<int>(f) - L;
        return ambient_s.s(lam, mu) / ambient_s.s(0, mu);
    };

    SpectralDecomposition sd;
    sd.local_class_to_label = localLabel;
    int total = 0;
    for (const CMatrix& Q : subspaces) {
        // eigenvalue tuple of this joint eigenspace
        std::vector<Complex> tuple(family.size());
        for (size_t f = 0; f < family.size(); ++f) tuple[f] = (Q.adjoint() * family[f] * Q)(0, 0);

        int bi = -1, bmu = -1;
        for (int i = 0; i < L; ++i)
            for (int mu = 0; mu < nAmb; ++mu) {
                double dist = 0.0;
                for (size_t f = 0; f < family.size(); ++f)
                    dist = std::max(dist, std::abs(tuple[f] - predicted(i, mu, f)));
                if (dist < 1e-6) {
                    if (bi >= 0)
                        throw InconsistencyError("ambiguous eigenvalue labeling: two (i, mu) pairs match");
                    bi = i;
                    bmu = mu;
                }
            }
        if (bi < 0) throw InconsistencyError("eigenvalue tuple matches no (i, mu) pair");

        for (int mcol = 0; mcol < Q.cols(); ++mcol) {
            EigvecRecord rec;
            rec.local_label = bi;
            rec.ambient_label = bmu;
            rec.mult_index = mcol + 1;
            rec.v = Q.col(mcol);
            // phase normalization: the coefficient on the class of A is real
            // nonnegative; fall back to the largest component when it vanishes
            Complex pivot = rec.v(basis.unit_class());
            if (std::abs(pivot) < 1e-12) {
                int arg = 0;
                for (int t = 1; t < n; ++t)
                    if (std::abs(rec.v(t)) > std::abs(rec.v(arg))) arg = t;
                pivot = rec.v(arg);
            }
            rec.v *= std::conj(pivot) / std::abs(pivot);
            double res = 0.0;
            for (size_t f = 0; f < family.size(); ++f)
                res = std::max(res, (family[f] * rec.v - tuple[f] * rec.v).cwiseAbs().maxCoeff());
            rec.residual = res;
            sd.vectors.push_back(std::move(rec));
            ++total;
        }
    }
    if (total != n) throw InconsistencyError("joint eigenbasis is incomplete");

    std::sort(sd.vectors.begin(), sd.vectors.end(), [](const EigvecRecord& a, const EigvecRecord& b) {
        return std::tie(a.local_label, a.ambient_label, a.mult_index) <
               std::tie(b.local_label, b.ambient_label, b.mult_index);
    });
    return sd;
}

namespace {

// b_{i lambda} = <sigma_i, a_lambda> = restriction multiplicity of lambda in sigma_i
IntMatrix b_matrix(const SpectralDecomposition& sd, const ModuleClassBasis& basis) {
    const int L = static_cast<int>(basis.local_indices.size());
    const int nAmb = basis.algebra.base.rank();
    IntMatrix b = IntMatrix::Zero(L, nAmb);
    for (int j = 0; j < L; ++j) {
        const int label = sd.local_class_to_label[j];
        for (int lam = 0; lam < nAmb; ++lam)
            b(label, lam) = basis.simples[basis.local_indices[j]].restriction(lam);
    }
    return b;
}

} // namespace

ECriterionReport verify_E_criterion(const SpectralDecomposition& sd, const ModuleClassBasis& basis) {
    ECriterionReport rep;
    const IntMatrix b = b_matrix(sd, basis);
    const int L = static_cast<int>(b.rows());
    const int nAmb = static_cast<int>(b.cols());
    std::set<std::pair<int, int>> present;
    for (const auto& rec : sd.vectors) present.insert({rec.local_label, rec.ambient_label});
    rep.pass = true;
    for (int i = 0; i < L; ++i)
        for (int mu = 0; mu < nAmb; ++mu) {
            ++rep.pairs_checked;
            const bool has = present.count({i, mu}) > 0;
            if (has != (b(i, mu) > 0)) {
                rep.pass = false;
                rep.mismatches.push_back({i, mu});
            }
        }
    return rep;
}

SpectralIdentityReport verify_spectral_identities(const SpectralDecomposition& sd,
                                                  const ModuleClassBasis& basis,
                                                  const ModularData& local_s,
                                                  const ModularData& ambient_s, Tolerances tol) {
    SpectralIdentityReport rep;
    const IntMatrix b = b_matrix(sd, basis);
    const int L = static_cast<int>(b.rows());
    const int nAmb = static_cast<int>(b.cols());
    const std::vector<int> dualLoc = dual_permutation(local_s, tol);

    // (1)  sum_j s_{kj} b_{j lambda} = sum_mu b_{k mu} s^D_{mu lambda}
    for (int k = 0; k < L; ++k)
        for (int lam = 0; lam < nAmb; ++lam) {
            Complex lhs = 0.0, rhs = 0.0;
            for (int j = 0; j < L; ++j) lhs += local_s.s(k, j) * static_cast<double>(b(j, lam));
            for (int mu = 0; mu < nAmb; ++mu) rhs += static_cast<double>(b(k, mu)) * ambient_s.s(mu, lam);
            rep.step1 = std::max(rep.step1, std::abs(lhs - rhs));
        }

    // (2)  v_{sigma_j} = (s_{j' i} / s_{1 i}) v_1
    for (const auto& rec : sd.vectors)
        for (int j = 0; j < L; ++j) {
            const int classIdx = basis.local_indices[j];
            const int jlab = sd.local_class_to_label[j];
            const Complex want =
                local_s.s(dualLoc[jlab], rec.local_label) / local_s.s(0, rec.local_label) *
                rec.v(basis.unit_class());
            rep.step2 = std::max(rep.step2, std::abs(rec.v(classIdx) - want));
        }

    // (3)  sum_m |v_1|^2 / (s^D_{1 delta} s_{1 k}) = b_{k delta}
    for (int k = 0; k < L; ++k)
        for (int delta = 0; delta < nAmb; ++delta) {
            Complex acc = 0.0;
            for (const auto& rec : sd.vectors)
                if (rec.local_label == k && rec.ambient_label == delta) {
                    const Complex v1 = rec.v(basis.unit_class());
                    acc += std::norm(v1) / (ambient_s.s(0, delta) * local_s.s(0, k));
                }
            rep.step3 = std::max(rep.step3, std::abs(acc - static_cast<double>(b(k, delta))));
        }

    // spectral resolution of V^lambda
    const int n = basis.size();
    for (int lam = 0; lam < nAmb; ++lam) {
        const IntMatrix V = module_fusion(basis, lam);
        CMatrix R = CMatrix::Zero(n, n);
        for (const auto& rec : sd.vectors) {
            const Complex eig = ambient_s.s(lam, rec.ambient_label) / ambient_s.s(0, rec.ambient_label);
            R += eig * rec.v * rec.v.adjoint();
        }
        double res = 0.0;
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c)
                res = std::max(res, std::abs(R(a, c) - Complex(static_cast<double>(V(a, c)), 0.0)));
        rep.resolution = std::max(rep.resolution, res);
    }

    rep.worst = std::max({rep.step1, rep.step2, rep.step3, rep.resolution});
    rep.pass = rep.worst < 1e-8;
    return rep;
}

} // namespace mtc
