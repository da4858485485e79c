#include "mtc/modular_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mtc {

void ValidationReport::add(std::string name, bool ok, double residual) {
    checks.push_back({std::move(name), ok, residual});
    pass = pass && ok;
}

double ValidationReport::worst() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
}

IntMatrix FusionTensor::matrix(int a) const {
    IntMatrix m(rank, rank);
    for (int b = 0; b < rank; ++b)
        for (int c = 0; c < rank; ++c) m(b, c) = at(a, b, c);
    return m;
}

IntVector FusionTensor::apply(int a, const IntVector& v) const {
    IntVector out = IntVector::Zero(rank);
    for (int b = 0; b < rank; ++b) {
        if (v(b) == 0) continue;
        for (int c = 0; c < rank; ++c) out(c) += at(a, b, c) * v(b);
    }
    return out;
}

namespace {

void require_shape(const ModularData& md) {
    const int r = md.rank();
    if (r == 0) throw StructuralError("modular data has no labels");
    if (md.s.rows() != md.s.cols()) throw StructuralError("S-matrix is not square");
    if (md.s.rows() != r) throw StructuralError("S-matrix size does not match label count");
    if (md.twists.size() != r) throw StructuralError("twist vector size does not match label count");
}

// Raw Verlinde numbers before rounding.
CMatrix verlinde_slice(const ModularData& md, int a) {
    const int r = md.rank();
    CMatrix out = CMatrix::Zero(r, r);
    for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c) {
            Complex acc = 0.0;
            for (int x = 0; x < r; ++x)
                acc += md.s(a, x) * md.s(b, x) * std::conj(md.s(c, x)) / md.s(0, x);
            out(b, c) = acc;
        }
    return out;
}

double verlinde_round(const ModularData& md, FusionTensor& fusion, double& worst_negative) {
    const int r = md.rank();
    fusion.rank = r;
    fusion.n.assign(static_cast<size_t>(r) * r * r, 0);
    double worst = 0.0;
    worst_negative = 0.0;
    for (int a = 0; a < r; ++a) {
        CMatrix slice = verlinde_slice(md, a);
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c) {
                const Complex v = slice(b, c);
                const double n = std::round(v.real());
                worst = std::max(worst, std::abs(v - Complex(n, 0.0)));
                if (n < 0) worst_negative = std::max(worst_negative, -n);
                fusion.at(a, b, c) = static_cast<Int>(n);
            }
    }
    return worst;
}

} // namespace

ValidationReport validate(const ModularData& md, Tolerances tol) {
    require_shape(md);
    const int r = md.rank();
    ValidationReport report;

    double sym = 0.0;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) sym = std::max(sym, std::abs(md.s(a, b) - md.s(b, a)));
    report.add("s_symmetric", sym < tol.num, sym);

    const double unit = (md.s * md.s.adjoint() - CMatrix::Identity(r, r)).cwiseAbs().maxCoeff();
    report.add("s_unitary", unit < tol.num, unit);

    double row_im = 0.0, row_re_min = std::numeric_limits<double>::infinity();
    for (int a = 0; a < r; ++a) {
        row_im = std::max(row_im, std::abs(md.s(0, a).imag()));
        row_re_min = std::min(row_re_min, md.s(0, a).real());
    }
    report.add("first_row_real", row_im < tol.num, row_im);
    report.add("first_row_positive", row_re_min > tol.num, row_re_min > 0 ? 0.0 : -row_re_min);

    const double t0 = std::abs(md.twists(0) - Complex(1.0, 0.0));
    report.add("unit_twist", t0 < tol.num, t0);
    double tmod = 0.0;
    for (int a = 0; a < r; ++a) tmod = std::max(tmod, std::abs(std::abs(md.twists(a)) - 1.0));
    report.add("twists_unimodular", tmod < tol.num, tmod);

    // s*s must be a permutation matrix (charge conjugation), an involution
    // fixing the unit.
    CMatrix ss = md.s * md.s;
    double perm_res = 0.0;
    std::vector<int> perm(r, -1);
    bool perm_ok = true;
    for (int a = 0; a < r; ++a) {
        int hit = -1;
        for (int b = 0; b < r; ++b) {
            const double d1 = std::abs(ss(a, b) - Complex(1.0, 0.0));
            const double d0 = std::abs(ss(a, b));
            if (d1 < 0.5) {
                if (hit >= 0) perm_ok = false;
                hit = b;
                perm_res = std::max(perm_res, d1);
            } else {
                perm_res = std::max(perm_res, d0);
            }
        }
        if (hit < 0) perm_ok = false;
        perm[a] = hit;
    }
    perm_ok = perm_ok && perm_res < tol.num;
    if (perm_ok) {
        for (int a = 0; a < r; ++a) perm_ok = perm_ok && perm[a] >= 0 && perm[perm[a]] == a;
        perm_ok = perm_ok && perm[0] == 0;
    }
    report.add("charge_conjugation", perm_ok, perm_res);

    FusionTensor fusion;
    double worst_negative = 0.0;
    const double integrality = verlinde_round(md, fusion, worst_negative);
    report.add("verlinde_integral", integrality < tol.integer, integrality);
    report.add("verlinde_nonnegative", worst_negative == 0.0, worst_negative);

    if (integrality < tol.integer && worst_negative == 0.0) {
        const double bal = balancing_check(md, fusion);
        report.add("balancing", bal < tol.num, bal);
    } else {
        report.add("balancing", false, std::numeric_limits<double>::infinity());
    }
    return report;
}

FusionTensor verlinde(const ModularData& md, Tolerances tol) {
    require_shape(md);
    FusionTensor fusion;
    double worst_negative = 0.0;
    const double integrality = verlinde_round(md, fusion, worst_negative);
    if (integrality >= tol.integer)
        throw InconsistencyError("not modular data: Verlinde coefficients deviate from integers by " +
                                 std::to_string(integrality));
    if (worst_negative > 0)
        throw InconsistencyError("not modular data: negative Verlinde coefficient");
    return fusion;
}

QuantumDims quantum_dims(const ModularData& md) {
    require_shape(md);
    QuantumDims q;
    q.total = 1.0 / md.s(0, 0).real();
    q.d.resize(md.rank());
    for (int a = 0; a < md.rank(); ++a) q.d[a] = md.s(0, a).real() / md.s(0, 0).real();
    return q;
}

std::vector<int> dual_permutation(const ModularData& md, Tolerances tol) {
    require_shape(md);
    const int r = md.rank();
    CMatrix ss = md.s * md.s;
    std::vector<int> perm(r, -1);
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) {
            const Complex v = ss(a, b);
            if (std::abs(v - Complex(1.0, 0.0)) < tol.num) {
                if (perm[a] >= 0) throw InconsistencyError("s^2 is not a permutation matrix");
                perm[a] = b;
            } else if (std::abs(v) >= tol.num) {
                throw InconsistencyError("s^2 is not a permutation matrix");
            }
        }
        if (perm[a] < 0) throw InconsistencyError("s^2 is not a permutation matrix");
    }
    for (int a = 0; a < r; ++a)
        if (perm[perm[a]] != a) throw InconsistencyError("charge conjugation is not an involution");
    if (perm[0] != 0) throw InconsistencyError("charge conjugation moves the unit");
    return perm;
}

bool monodromy_is_trivial(const ModularData& md, int a, int b, Tolerances tol) {
    const QuantumDims q = quantum_dims(md);
    return std::abs(q.total * md.s(a, b) - Complex(q.d[a] * q.d[b], 0.0)) < tol.num;
}

ModularData deligne_product(const ModularData& lhs, const ModularData& rhs) {
    require_shape(lhs);
    require_shape(rhs);
    const int rl = lhs.rank(), rr = rhs.rank();
    ModularData out;
    out.name = lhs.name + "(x)" + rhs.name;
    out.labels.reserve(static_cast<size_t>(rl) * rr);
    for (int a = 0; a < rl; ++a)
        for (int b = 0; b < rr; ++b) out.labels.push_back(lhs.labels[a] + "(x)" + rhs.labels[b]);
    out.s = CMatrix(rl * rr, rl * rr);
    out.twists = CVector(rl * rr);
    for (int a = 0; a < rl; ++a)
        for (int b = 0; b < rr; ++b) {
            out.twists(a * rr + b) = lhs.twists(a) * rhs.twists(b);
            for (int c = 0; c < rl; ++c)
                for (int d = 0; d < rr; ++d)
                    out.s(a * rr + b, c * rr + d) = lhs.s(a, c) * rhs.s(b, d);
        }
    return out;
}

FusionTensor fusion_tensor_product(const FusionTensor& lhs, const FusionTensor& rhs) {
    FusionTensor out;
    out.rank = lhs.rank * rhs.rank;
    out.n.assign(static_cast<size_t>(out.rank) * out.rank * out.rank, 0);
    for (int a1 = 0; a1 < lhs.rank; ++a1)
        for (int a2 = 0; a2 < rhs.rank; ++a2)
            for (int b1 = 0; b1 < lhs.rank; ++b1)
                for (int b2 = 0; b2 < rhs.rank; ++b2)
                    for (int c1 = 0; c1 < lhs.rank; ++c1) {
                        const Int nl = lhs.at(a1, b1, c1);
                        if (nl == 0) continue;
                        for (int c2 = 0; c2 < rhs.rank; ++c2)
                            out.at(a1 * rhs.rank + a2, b1 * rhs.rank + b2, c1 * rhs.rank + c2) =
                                nl * rhs.at(a2, b2, c2);
                    }
    return out;
}

double balancing_check(const ModularData& md, const FusionTensor& fusion) {
    require_shape(md);
    if (fusion.rank != md.rank()) throw StructuralError("fusion tensor rank mismatch");
    const QuantumDims q = quantum_dims(md);
    double worst = 0.0;
    for (int a = 0; a < md.rank(); ++a)
        for (int b = 0; b < md.rank(); ++b) {
            Complex rhs = 0.0;
            for (int c = 0; c < md.rank(); ++c) {
                const Int n = fusion.at(a, b, c);
                if (n != 0) rhs += static_cast<double>(n) * md.twists(c) * q.d[c];
            }
            const Complex lhs = q.total * md.s(a, b) * md.twists(a) * md.twists(b);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

ModularData mirror(const ModularData& md) {
    ModularData out = md;
    out.name = md.name + "_mirror";
    out.s = md.s.conjugate();
    out.twists = md.twists.conjugate();
    return out;
}

ValidationReport check_fusion_invariants(const FusionTensor& fusion, const std::vector<int>& dual) {
    const int r = fusion.rank;
    ValidationReport report;

    bool unit_ok = true;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) unit_ok = unit_ok && fusion.at(0, a, b) == (a == b ? 1 : 0);
    report.add("unit_row", unit_ok, unit_ok ? 0.0 : 1.0);

    bool comm_ok = true;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c) comm_ok = comm_ok && fusion.at(a, b, c) == fusion.at(b, a, c);
    report.add("commutative", comm_ok, comm_ok ? 0.0 : 1.0);

    bool dual_ok = static_cast<int>(dual.size()) == r;
    if (dual_ok)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) dual_ok = dual_ok && fusion.at(a, b, 0) == (b == dual[a] ? 1 : 0);
    report.add("duality", dual_ok, dual_ok ? 0.0 : 1.0);

    bool assoc_ok = true;
    for (int a = 0; a < r && assoc_ok; ++a)
        for (int b = 0; b < r && assoc_ok; ++b)
            for (int c = 0; c < r && assoc_ok; ++c)
                for (int d = 0; d < r && assoc_ok; ++d) {
                    Int lhs = 0, rhs = 0;
                    for (int e = 0; e < r; ++e) {
                        lhs += fusion.at(a, b, e) * fusion.at(e, c, d);
                        rhs += fusion.at(b, c, e) * fusion.at(a, e, d);
                    }
                    assoc_ok = lhs == rhs;
                }
    report.add("associative", assoc_ok, assoc_ok ? 0.0 : 1.0);
    return report;
}

} // namespace mtc
