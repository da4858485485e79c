#include "mtc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mtc {

namespace {

Complex unit_phase(double turns) {
    // exp(2 pi i * turns)
    return {std::cos(2.0 * kPi * turns), std::sin(2.0 * kPi * turns)};
}

} // namespace

ModularData su2_level(int k) {
    if (k < 0) throw StructuralError("su2 level must be nonnegative");
    const int r = k + 1;
    ModularData md;
    md.name = "su2_level_" + std::to_string(k);
    md.s = CMatrix(r, r);
    md.twists = CVector(r);
    for (int a = 0; a < r; ++a) {
        md.labels.push_back(std::to_string(a));
        const double h = static_cast<double>(a) * (a + 2) / (4.0 * (k + 2));
        md.twists(a) = unit_phase(h);
        for (int b = 0; b < r; ++b)
            md.s(a, b) = std::sqrt(2.0 / (k + 2)) *
                         std::sin(kPi * (a + 1.0) * (b + 1.0) / (k + 2));
    }
    return md;
}

ModularData minimal_model(int p, int q) {
    if (p < 2 || q <= p) throw StructuralError("minimal model needs 2 <= p < q");
    if (std::gcd(p, q) != 1) throw StructuralError("minimal model needs coprime (p, q)");

    std::vector<std::pair<int, int>> reps;
    for (int r = 1; r < p; ++r)
        for (int s = 1; s < q; ++s) {
            const std::pair<int, int> mirror{p - r, q - s};
            if (std::pair<int, int>{r, s} <= mirror) reps.push_back({r, s});
        }
    std::sort(reps.begin(), reps.end());

    const int rank = static_cast<int>(reps.size());
    ModularData md;
    md.name = "minimal_model_" + std::to_string(p) + "_" + std::to_string(q);
    md.s = CMatrix(rank, rank);
    md.twists = CVector(rank);
    for (int i = 0; i < rank; ++i) {
        const auto [r, s] = reps[i];
        md.labels.push_back("(" + std::to_string(r) + "," + std::to_string(s) + ")");
        const double num = static_cast<double>(q * r - p * s) * (q * r - p * s) -
                           static_cast<double>(p - q) * (p - q);
        md.twists(i) = unit_phase(num / (4.0 * p * q));
        for (int j = 0; j < rank; ++j) {
            const auto [rho, sig] = reps[j];
            const double sign = ((1 + s * rho + r * sig) % 2 == 0) ? 1.0 : -1.0;
            md.s(i, j) = 2.0 * std::sqrt(2.0 / (p * q)) * sign *
                         std::sin(kPi * q * r * rho / p) * std::sin(kPi * p * s * sig / q);
        }
    }
    if (md.s(0, 0).real() < 0) md.s = -md.s;
    return md;
}

ModularData pointed_cyclic(int n, int t) {
    if (n < 1) throw StructuralError("pointed cyclic data needs n >= 1");
    const int tm = ((t % n) + n) % n;
    if (std::gcd(tm == 0 ? n : tm, n) != 1)
        throw StructuralError("pointed cyclic form (n=" + std::to_string(n) + ", t=" + std::to_string(t) +
                              ") is degenerate: s is not unitary");
    ModularData md;
    md.name = "pointed_" + std::to_string(n) + "_" + std::to_string(t);
    md.s = CMatrix(n, n);
    md.twists = CVector(n);
    for (int j = 0; j < n; ++j) {
        md.labels.push_back(std::to_string(j));
        md.twists(j) = unit_phase(0.5 * t * j * j / n);
        for (int k = 0; k < n; ++k)
            md.s(j, k) = unit_phase(static_cast<double>(t) * j * k / n) / std::sqrt(static_cast<double>(n));
    }
    return md;
}

ModularData trivial_data() {
    ModularData md;
    md.name = "trivial";
    md.labels = {"1"};
    md.s = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
    md.twists = CVector::Constant(1, Complex(1.0, 0.0));
    return md;
}

} // namespace mtc
