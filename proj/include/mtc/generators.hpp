#pragma once

#include "mtc/modular_data.hpp"

namespace mtc {

/// Affine su(2) at level k (Kac-Peterson). Labels 0..k,
///   s_{ab} = sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2)),
///   theta_a = exp(2 pi i a(a+2)/(4(k+2))).
/// k = 0 yields the rank-1 unit data; negative k is rejected.
ModularData su2_level(int k);

/// Virasoro minimal model M(p,q), gcd(p,q) = 1, 2 <= p < q. Labels are the
/// Kac-table pairs (r,s) with 1<=r<p, 1<=s<q modulo (r,s)~(p-r,q-s),
/// represented by the lexicographically smallest member, sorted. The global
/// S sign is fixed by positivity of the unit row.
ModularData minimal_model(int p, int q);

/// Pointed category on Z_n with quadratic form exp(pi i t j^2 / n):
///   s_{jk} = n^{-1/2} exp(2 pi i t j k / n),  theta_j = exp(pi i t j^2 / n).
/// Degenerate forms (gcd(t, n) != 1, so s is not unitary) are rejected.
/// Note n*t odd makes the form ill-defined on Z_n; such data is constructible
/// here but fails the balancing check in validate.
ModularData pointed_cyclic(int n, int t);

/// Rank-1 unit data, s = [[1]], theta = [1].
ModularData trivial_data();

} // namespace mtc
