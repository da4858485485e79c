#include "mtc/extension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace mtc {

AlgebraObject AlgebraObject::build(ModularData base_in, IntVector mult_in, Tolerances tol,
                                   const FusionTensor* known_fusion) {
    AlgebraObject a;
    a.base = std::move(base_in);
    if (mult_in.size() != a.base.rank()) throw StructuralError("algebra multiplicity vector size mismatch");
    if (known_fusion != nullptr) {
        if (known_fusion->rank != a.base.rank()) throw StructuralError("fusion tensor rank mismatch");
        a.fusion = *known_fusion;
    } else {
        a.fusion = verlinde(a.base, tol);
    }
    a.dims = quantum_dims(a.base);
    a.dual = dual_permutation(a.base, tol);
    a.mult = std::move(mult_in);

    if (a.mult(0) != 1) throw InconsistencyError("algebra must contain the unit with multiplicity one");
    for (int x = 0; x < a.base.rank(); ++x) {
        if (a.mult(x) < 0) throw StructuralError("algebra multiplicities must be nonnegative");
        if (a.mult(x) > 0 && std::abs(a.base.twists(x) - Complex(1.0, 0.0)) >= tol.num)
            throw InconsistencyError("algebra support must have trivial twist (label " + a.base.labels[x] + ")");
        if (a.mult(x) != a.mult(a.dual[x]))
            throw InconsistencyError("algebra support must be closed under duality");
    }
    return a;
}

double AlgebraObject::algebra_dim() const {
    double s = 0.0;
    for (int x = 0; x < base.rank(); ++x) s += static_cast<double>(mult(x)) * dims.d[x];
    return s;
}

bool AlgebraObject::support_is_group(Tolerances tol) const {
    std::vector<int> support;
    for (int x = 0; x < base.rank(); ++x)
        if (mult(x) > 0) {
            if (mult(x) != 1) return false;
            if (std::abs(dims.d[x] - 1.0) >= tol.num) return false;
            support.push_back(x);
        }
    for (int h : support)
        for (int g : support) {
            int image = -1;
            for (int c = 0; c < base.rank(); ++c)
                if (fusion.at(h, g, c) != 0) {
                    if (image >= 0 || fusion.at(h, g, c) != 1) return false;
                    image = c;
                }
            if (image < 0 || mult(image) == 0) return false;
        }
    return true;
}

IntVector induce(const AlgebraObject& a, int x) {
    IntVector v = IntVector::Zero(a.base.rank());
    for (int s = 0; s < a.base.rank(); ++s) {
        if (a.mult(s) == 0) continue;
        for (int c = 0; c < a.base.rank(); ++c) v(c) += a.mult(s) * a.fusion.at(s, x, c);
    }
    return v;
}

Int induced_hom(const AlgebraObject& a, int x, int y) {
    Int h = 0;
    for (int s = 0; s < a.base.rank(); ++s)
        if (a.mult(s) != 0) h += a.mult(s) * a.fusion.at(s, y, x);
    return h;
}

bool is_local_induced(const AlgebraObject& a, int x, Tolerances tol) {
    const IntVector v = induce(a, x);
    for (int c = 0; c < a.base.rank(); ++c)
        if (v(c) != 0 && std::abs(a.base.twists(c) - a.base.twists(x)) >= tol.num) return false;
    return true;
}

namespace {

bool twist_constant_on(const ModularData& md, const IntVector& support, Tolerances tol) {
    Complex ref{0.0, 0.0};
    bool seen = false;
    for (int c = 0; c < md.rank(); ++c) {
        if (support(c) == 0) continue;
        if (!seen) {
            ref = md.twists(c);
            seen = true;
        } else if (std::abs(md.twists(c) - ref) >= tol.num) {
            return false;
        }
    }
    return seen;
}

// ---------------------------------------------------------------------------
// Group-support decomposition: H-orbits, fixed-point splitting, and the
// constraint solver that pins down the fusion ring of the class basis.
// ---------------------------------------------------------------------------

struct GroupDecomposer {
    const AlgebraObject& A;
    Tolerances tol;
    int nlab;
    std::vector<int> support; // the group H

    struct Orbit {
        std::vector<int> labels; // sorted
        int stab = 1;
    };
    std::vector<Orbit> orbits;

    // classes
    std::vector<IntVector> res;
    std::vector<double> dim;
    std::vector<bool> local;
    std::vector<int> partner;  // split partner, -1 for free
    std::vector<int> rep;      // representative label (min of orbit)
    std::vector<int> fixedLab; // for splits: the class's orbit rep (same as rep)
    int m = 0;

    std::vector<int> classOfOrbit; // orbit -> first class index
    std::vector<int> orbitOfLabel;

    explicit GroupDecomposer(const AlgebraObject& alg, Tolerances t) : A(alg), tol(t), nlab(alg.base.rank()) {}

    int act(int h, int x) const {
        for (int c = 0; c < nlab; ++c)
            if (A.fusion.at(h, x, c) != 0) return c;
        throw InconsistencyError("invertible fusion has no image");
    }

    void build_orbits() {
        for (int x = 0; x < nlab; ++x)
            if (A.mult(x) > 0) support.push_back(x);
        orbitOfLabel.assign(nlab, -1);
        for (int x = 0; x < nlab; ++x) {
            if (orbitOfLabel[x] >= 0) continue;
            Orbit o;
            std::set<int> seen;
            int fixed = 0;
            for (int h : support) {
                const int y = act(h, x);
                seen.insert(y);
                if (y == x) ++fixed;
            }
            o.labels.assign(seen.begin(), seen.end());
            o.stab = fixed;
            if (o.stab > 2)
                throw InconsistencyError("fixed-point multiplicity space of dimension " +
                                         std::to_string(o.stab) + " exceeds 2");
            if (static_cast<int>(o.labels.size()) * o.stab != static_cast<int>(support.size()))
                throw InconsistencyError("orbit size does not divide the group order");
            const int id = static_cast<int>(orbits.size());
            for (int y : o.labels) orbitOfLabel[y] = id;
            orbits.push_back(std::move(o));
        }
        // deterministic order: by minimal label; the unit's orbit comes first
        std::vector<int> order(orbits.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return orbits[a].labels.front() < orbits[b].labels.front(); });
        std::vector<Orbit> tmp;
        for (int id : order) tmp.push_back(orbits[id]);
        orbits = std::move(tmp);
        for (size_t id = 0; id < orbits.size(); ++id)
            for (int y : orbits[id].labels) orbitOfLabel[y] = static_cast<int>(id);
    }

    void build_classes() {
        classOfOrbit.assign(orbits.size(), -1);
        const double dimA = A.algebra_dim();
        for (size_t id = 0; id < orbits.size(); ++id) {
            const Orbit& o = orbits[id];
            IntVector r = IntVector::Zero(nlab);
            double rd = 0.0;
            for (int y : o.labels) {
                r(y) = 1;
                rd += A.dims.d[y];
            }
            IntVector supportVec = r;
            const bool loc = twist_constant_on(A.base, supportVec, tol);
            classOfOrbit[id] = m;
            for (int k = 0; k < o.stab; ++k) {
                res.push_back(r);
                dim.push_back(rd / dimA);
                local.push_back(loc);
                rep.push_back(o.labels.front());
                partner.push_back(o.stab == 2 ? m + (k == 0 ? 1 : -1) : -1);
                ++m;
            }
        }
    }

    int class_of_free_orbit(int orbitId) const { return classOfOrbit[orbitId]; }

    // restriction of a_x (x)_B v, i.e. x (x) res(v), as a label vector
    IntVector t_route(int x, int v) const { return A.fusion.apply(x, res[v]); }

    // ----- fusion table solving -----

    static size_t key(int a, int b, int c, int m) { return (static_cast<size_t>(a) * m + b) * m + c; }

    struct Equation {
        std::vector<int> vars; // variable ids (may repeat)
        Int rhs = 0;
    };

    std::vector<IntMatrix> solve_fusion() {
        const size_t cells = static_cast<size_t>(m) * m * m;
        std::vector<Int> known(cells, -1);

        auto is_split = [&](int c) { return partner[c] >= 0; };

        // exact entries via induced-module routes
        for (int u = 0; u < m; ++u) {
            if (is_split(u)) continue;
            for (int v = 0; v < m; ++v) {
                const IntVector rho = t_route(rep[u], v);
                for (int w = 0; w < m; ++w) {
                    if (is_split(w)) continue;
                    const Int val = rho(rep[w]);
                    known[key(u, v, w, m)] = val;
                    known[key(v, u, w, m)] = val;
                }
            }
        }
        // free x free -> split component, via the dual route:
        // <u v, Z_s> = <v, u' (x) Z_s> = coefficient of the free class v in u' (x) Z_s
        for (int u = 0; u < m; ++u) {
            if (is_split(u)) continue;
            const int udual = class_of_free_orbit(orbitOfLabel[A.dual[rep[u]]]);
            for (int zs = 0; zs < m; ++zs) {
                if (!is_split(zs)) continue;
                const IntVector rho = t_route(rep[udual], zs);
                for (int v = 0; v < m; ++v) {
                    if (is_split(v)) continue;
                    known[key(u, v, zs, m)] = rho(rep[v]);
                    known[key(v, u, zs, m)] = rho(rep[v]);
                }
            }
        }

        // split pairs in class order
        std::vector<int> pairFirst;
        for (int c = 0; c < m; ++c)
            if (partner[c] == c + 1) pairFirst.push_back(c);
        const int npairs = static_cast<int>(pairFirst.size());

        std::vector<std::vector<IntMatrix>> solutions;
        std::vector<std::vector<int>> solutionDuals;

        // enumerate split dual assignments (sigma), then solve cells
        const int sigmaCombos = npairs == 0 ? 1 : (1 << npairs);
        for (int sig = 0; sig < sigmaCombos; ++sig) {
            std::vector<int> dualClass(m, -1);
            bool sigOk = true;
            for (int c = 0; c < m && sigOk; ++c) {
                if (is_split(c)) continue;
                dualClass[c] = class_of_free_orbit(orbitOfLabel[A.dual[rep[c]]]);
            }
            for (int pi = 0; pi < npairs && sigOk; ++pi) {
                const int c0 = pairFirst[pi];
                const int y = rep[c0];
                const int yd = A.dual[y];
                const int od = orbitOfLabel[yd];
                if (orbits[od].stab != 2) {
                    sigOk = false;
                    break;
                }
                const int d0 = classOfOrbit[od];
                const bool swap = (sig >> pi) & 1;
                // only let the lower-indexed pair choose the pairing
                if (d0 < c0) continue;
                dualClass[c0] = swap ? d0 + 1 : d0;
                dualClass[c0 + 1] = swap ? d0 : d0 + 1;
                if (d0 != c0) {
                    dualClass[d0] = swap ? c0 + 1 : c0;
                    dualClass[d0 + 1] = swap ? c0 : c0 + 1;
                }
            }
            for (int c = 0; c < m && sigOk; ++c)
                sigOk = dualClass[c] >= 0 && dualClass[dualClass[c]] == c;
            if (!sigOk) continue;

            solve_cells(known, dualClass, solutions, solutionDuals);
        }

        if (solutions.empty())
            throw InconsistencyError("decomposition not found: no consistent module fusion structure");

        // dedupe up to relabeling of split halves
        std::set<std::vector<Int>> canon;
        std::vector<IntMatrix> result;
        for (size_t si = 0; si < solutions.size(); ++si) {
            std::vector<Int> best;
            for (int mask = 0; mask < (1 << npairs); ++mask) {
                std::vector<int> perm(m);
                std::iota(perm.begin(), perm.end(), 0);
                for (int pi = 0; pi < npairs; ++pi)
                    if ((mask >> pi) & 1) std::swap(perm[pairFirst[pi]], perm[pairFirst[pi] + 1]);
                std::vector<Int> flat(cells);
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        for (int c = 0; c < m; ++c)
                            flat[key(perm[a], perm[b], perm[c], m)] = solutions[si][a](b, c);
                if (best.empty() || flat < best) best = std::move(flat);
            }
            if (canon.insert(best).second && result.empty()) result = solutions[si];
        }
        if (canon.size() > 1)
            throw InconsistencyError("decomposition not found: module fusion structure is ambiguous");
        return result;
    }

    void solve_cells(const std::vector<Int>& knownIn, const std::vector<int>& dualClass,
                     std::vector<std::vector<IntMatrix>>& solutions,
                     std::vector<std::vector<int>>& solutionDuals) {
        const size_t cells = static_cast<size_t>(m) * m * m;
        auto is_split = [&](int c) { return partner[c] >= 0; };

        // merge cells into variables: commutativity and Frobenius
        std::vector<int> uf(cells);
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find = [&](int a) {
            while (uf[a] != a) a = uf[a] = uf[uf[a]];
            return a;
        };
        auto unite = [&](size_t a, size_t b) { uf[find(static_cast<int>(a))] = find(static_cast<int>(b)); };
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) {
                    unite(key(a, b, c, m), key(b, a, c, m));
                    unite(key(a, b, c, m), key(dualClass[a], c, b, m));
                }
        std::vector<int> rootOf(cells);
        for (size_t cell = 0; cell < cells; ++cell) rootOf[cell] = find(static_cast<int>(cell));

        std::vector<Int> value(cells, -1);
        auto set_value = [&](size_t cell, Int v) -> bool {
            const int root = rootOf[cell];
            if (value[root] >= 0) return value[root] == v;
            if (v < 0) return false;
            value[root] = v;
            return true;
        };
        for (size_t cell = 0; cell < cells; ++cell)
            if (knownIn[cell] >= 0 && !set_value(cell, knownIn[cell])) return;

        // unit row and duality pins
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (!set_value(key(0, b, c, m), b == c ? 1 : 0)) return;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (!set_value(key(a, b, 0, m), b == dualClass[a] ? 1 : 0)) return;

        // margin equations from induced-module pair sums
        std::vector<Equation> eqs;
        auto add_eq = [&](std::vector<size_t> cellIds, Int rhs) {
            Equation e;
            e.rhs = rhs;
            for (size_t id : cellIds) e.vars.push_back(rootOf[id]);
            eqs.push_back(std::move(e));
        };
        for (int u = 0; u < m; ++u) {
            if (is_split(u)) continue;
            for (int v = 0; v < m; ++v) {
                const IntVector rho = t_route(rep[u], v);
                for (int c = 0; c < m; ++c) {
                    if (!(partner[c] == c + 1)) continue;
                    add_eq({key(u, v, c, m), key(u, v, c + 1, m)}, rho(rep[c]));
                }
            }
        }
        for (int c0 = 0; c0 < m; ++c0) {
            if (partner[c0] != c0 + 1) continue;
            for (int v = 0; v < m; ++v) {
                const IntVector rho = t_route(rep[c0], v);
                for (int w = 0; w < m; ++w) {
                    if (is_split(w)) {
                        if (partner[w] != w + 1) continue;
                        add_eq({key(c0, v, w, m), key(c0, v, w + 1, m), key(c0 + 1, v, w, m),
                                key(c0 + 1, v, w + 1, m)},
                               rho(rep[w]));
                    } else {
                        add_eq({key(c0, v, w, m), key(c0 + 1, v, w, m)}, rho(rep[w]));
                    }
                }
            }
        }

        // propagate: a satisfied sum zeroes its free variables, a single free
        // variable is pinned by the remainder
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Equation& e : eqs) {
                Int sum = 0;
                std::vector<int> free;
                for (int v : e.vars) {
                    if (value[v] >= 0)
                        sum += value[v];
                    else
                        free.push_back(v);
                }
                if (sum > e.rhs) return; // infeasible
                if (free.empty()) {
                    if (sum != e.rhs) return;
                    continue;
                }
                if (sum == e.rhs) {
                    for (int v : free)
                        if (value[v] < 0) {
                            value[v] = 0;
                            changed = true;
                        }
                } else if (free.size() == 1) {
                    value[free.front()] = e.rhs - sum;
                    changed = true;
                }
            }
        }

        // collect unsolved variables
        std::set<int> varSet;
        for (size_t cell = 0; cell < cells; ++cell) {
            const int root = rootOf[cell];
            if (value[root] < 0) varSet.insert(root);
        }
        std::vector<int> vars(varSet.begin(), varSet.end());
        if (vars.size() > 24)
            throw InconsistencyError("decomposition not found: module fusion has too many undetermined entries");

        // upper bound per variable from margins
        std::map<int, Int> bound;
        for (int v : vars) bound[v] = std::numeric_limits<Int>::max();
        for (const Equation& e : eqs)
            for (int v : e.vars)
                if (value[v] < 0 && bound.count(v)) bound[v] = std::min(bound[v], e.rhs);
        for (int v : vars)
            if (bound[v] == std::numeric_limits<Int>::max()) bound[v] = 8; // isolated, keep finite

        long nodes = 0;
        std::function<void(size_t)> dfs = [&](size_t idx) {
            if (++nodes > 2'000'000)
                throw InconsistencyError("decomposition not found: fusion search budget exceeded");
            // propagate single-free equations and check saturated ones
            for (const Equation& e : eqs) {
                Int sum = 0;
                int freeVar = -1, freeCount = 0;
                for (int v : e.vars) {
                    if (value[v] >= 0)
                        sum += value[v];
                    else {
                        ++freeCount;
                        freeVar = v;
                    }
                }
                if (freeCount == 0 && sum != e.rhs) return;
                if (sum > e.rhs) return;
                (void)freeVar;
            }
            if (idx == vars.size()) {
                finish_candidate(value, rootOf, dualClass, solutions, solutionDuals);
                return;
            }
            const int v = vars[idx];
            if (value[v] >= 0) {
                dfs(idx + 1);
                return;
            }
            for (Int t = 0; t <= bound[v]; ++t) {
                value[v] = t;
                dfs(idx + 1);
            }
            value[v] = -1;
        };
        dfs(0);
    }

    void finish_candidate(const std::vector<Int>& value, const std::vector<int>& rootOf,
                          const std::vector<int>& dualClass,
                          std::vector<std::vector<IntMatrix>>& solutions,
                          std::vector<std::vector<int>>& solutionDuals) {
        const size_t cells = static_cast<size_t>(m) * m * m;
        FusionTensor table;
        table.rank = m;
        table.n.assign(cells, 0);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) {
                    const Int v = value[rootOf[key(a, b, c, m)]];
                    if (v < 0) return;
                    table.at(a, b, c) = v;
                }

        const ValidationReport structural = check_fusion_invariants(table, dualClass);
        if (!structural.pass) return;

        // dimension sum rule
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                double s = 0.0;
                for (int c = 0; c < m; ++c) s += static_cast<double>(table.at(a, b, c)) * dim[c];
                if (std::abs(s - dim[a] * dim[b]) >= 1e-6 * std::max(1.0, dim[a] * dim[b])) return;
            }

        // restriction compatibility for induced rows
        for (int u = 0; u < m; ++u) {
            if (partner[u] >= 0) continue;
            for (int v = 0; v < m; ++v) {
                const IntVector rho = t_route(rep[u], v);
                IntVector sum = IntVector::Zero(nlab);
                for (int w = 0; w < m; ++w)
                    if (table.at(u, v, w) != 0) sum += table.at(u, v, w) * res[w];
                if (sum != rho) return;
            }
        }

        // the local classes must close under fusion and carry genuine modular data
        std::vector<int> locals;
        for (int c = 0; c < m; ++c)
            if (local[c]) locals.push_back(c);
        for (int a : locals)
            for (int b : locals)
                for (int c = 0; c < m; ++c)
                    if (table.at(a, b, c) != 0 && !local[c]) return;
        if (!local_block_is_modular(table, locals)) return;

        std::vector<IntMatrix> mats(m);
        for (int c = 0; c < m; ++c) mats[c] = table.matrix(c);
        solutions.push_back(std::move(mats));
        solutionDuals.push_back(dualClass);
    }

    bool local_block_is_modular(const FusionTensor& table, const std::vector<int>& locals) const {
        const int k = static_cast<int>(locals.size());
        if (k == 0) return false;
        // twist of a local class = the constant twist on its restriction support
        CVector theta(k);
        RVector d(k);
        for (int i = 0; i < k; ++i) {
            const int c = locals[i];
            theta(i) = A.base.twists(rep[c]);
            d(i) = dim[c];
        }
        double dloc2 = 0.0;
        for (int i = 0; i < k; ++i) dloc2 += d(i) * d(i);
        const double dloc = std::sqrt(dloc2);
        CMatrix s(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Complex acc = 0.0;
                for (int l = 0; l < k; ++l) {
                    const Int n = table.at(locals[i], locals[j], locals[l]);
                    if (n != 0) acc += static_cast<double>(n) * theta(l) * d(l);
                }
                s(i, j) = acc / (theta(i) * theta(j) * dloc);
            }
        if ((s * s.adjoint() - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-6) return false;
        // Verlinde of the reconstructed S must reproduce the local block
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                for (int c = 0; c < k; ++c) {
                    Complex acc = 0.0;
                    for (int x = 0; x < k; ++x) acc += s(a, x) * s(b, x) * std::conj(s(c, x)) / s(0, x);
                    if (std::abs(acc - Complex(static_cast<double>(table.at(locals[a], locals[b], locals[c])),
                                               0.0)) > 1e-6)
                        return false;
                }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Bounded exhaustive Gram factorization for algebras with non-invertible
// support: find nonnegative integer columns r_j with sum_j r_j r_j^T = G,
// G(x, y) = <a_x, a_y>. Columns are the restriction vectors of the simple
// classes (Frobenius reciprocity).
// ---------------------------------------------------------------------------

struct GramDecomposer {
    const AlgebraObject& A;
    Tolerances tol;
    int n;
    IntMatrix G;
    long nodes = 0;
    static constexpr long kBudget = 2'000'000;

    std::vector<std::vector<IntVector>> found;

    explicit GramDecomposer(const AlgebraObject& alg, Tolerances t) : A(alg), tol(t), n(alg.base.rank()) {
        if (n > 64) throw InconsistencyError("decomposition not found: rank exceeds the search bound 64");
        G = IntMatrix(n, n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) G(x, y) = induced_hom(A, x, y);
    }

    void run() {
        std::vector<IntVector> cols;
        IntMatrix R = G;
        recurse(R, cols);
        if (found.empty()) throw InconsistencyError("decomposition not found: Gram factorization failed");
        if (found.size() > 1)
            throw InconsistencyError("decomposition not found: Gram factorization is ambiguous");
    }

    void recurse(IntMatrix& R, std::vector<IntVector>& cols) {
        if (++nodes > kBudget)
            throw InconsistencyError("decomposition not found: Gram search budget exceeded");
        if (found.size() > 1) return;
        int pivot = -1;
        for (int x = 0; x < n; ++x)
            if (R(x, x) > 0) {
                pivot = x;
                break;
            }
        if (pivot < 0) {
            if (R.cwiseAbs().maxCoeff() == 0) found.push_back(cols);
            return;
        }
        IntVector r = IntVector::Zero(n);
        enumerate_column(R, cols, r, pivot, pivot);
    }

    void enumerate_column(IntMatrix& R, std::vector<IntVector>& cols, IntVector& r, int pivot, int pos) {
        if (++nodes > kBudget)
            throw InconsistencyError("decomposition not found: Gram search budget exceeded");
        if (pos == n) {
            if (r(pivot) < 1) return;
            // canonical ordering avoids permuted duplicates
            if (!cols.empty() && lex_less(cols.back(), r)) return;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (r(x) * r(y) > R(x, y)) return;
            IntMatrix next = R;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) next(x, y) -= r(x) * r(y);
            cols.push_back(r);
            recurse(next, cols);
            cols.pop_back();
            return;
        }
        Int cap = static_cast<Int>(std::floor(std::sqrt(static_cast<double>(R(pos, pos))) + 0.5));
        while (cap * cap > R(pos, pos)) --cap;
        for (Int v = 0; v <= cap; ++v) {
            bool ok = true;
            for (int y = 0; y < pos && ok; ++y) ok = r(y) * v <= R(y, pos);
            if (!ok) continue;
            r(pos) = v;
            enumerate_column(R, cols, r, pivot, pos + 1);
        }
        r(pos) = 0;
    }

    static bool lex_less(const IntVector& a, const IntVector& b) {
        for (int i = 0; i < a.size(); ++i) {
            if (a(i) != b(i)) return a(i) < b(i);
        }
        return false;
    }
};

std::vector<IntMatrix> solve_class_fusion_linear(const AlgebraObject& A,
                                                 const std::vector<SimpleClass>& simples, Tolerances tol) {
    const int n = A.base.rank();
    const int k = static_cast<int>(simples.size());
    RMatrix R(n, k);
    for (int j = 0; j < k; ++j)
        for (int x = 0; x < n; ++x) R(x, j) = static_cast<double>(simples[j].restriction(x));
    Eigen::ColPivHouseholderQR<RMatrix> qr(R);
    if (qr.rank() < k)
        throw InconsistencyError(
            "inconsistent basis: restriction vectors do not span, module fusion is not determined");

    // class decomposition of a_x (x) sigma_v for every x, by solving R c = rho
    std::vector<RMatrix> M(n, RMatrix::Zero(k, k));
    for (int x = 0; x < n; ++x)
        for (int v = 0; v < k; ++v) {
            const IntVector rho = A.fusion.apply(x, simples[v].restriction);
            RVector rhs(n);
            for (int y = 0; y < n; ++y) rhs(y) = static_cast<double>(rho(y));
            const RVector c = qr.solve(rhs);
            if ((R * c - rhs).cwiseAbs().maxCoeff() > tol.integer)
                throw InconsistencyError("inconsistent basis: induced fusion does not lie in the class span");
            for (int w = 0; w < k; ++w) {
                const double val = c(w);
                if (std::abs(val - std::round(val)) > tol.integer || std::round(val) < -0.5)
                    throw InconsistencyError("inconsistent basis: non-integral re-expression");
                M[x](v, w) = std::round(val);
            }
        }

    // sum_j res(sigma_j)_x N_j = M_x, solved per matrix entry
    std::vector<IntMatrix> N(k, IntMatrix::Zero(k, k));
    for (int v = 0; v < k; ++v)
        for (int w = 0; w < k; ++w) {
            RVector rhs(n);
            for (int x = 0; x < n; ++x) rhs(x) = M[x](v, w);
            const RVector c = qr.solve(rhs);
            if ((R * c - rhs).cwiseAbs().maxCoeff() > tol.integer)
                throw InconsistencyError("inconsistent basis: class fusion system is unsolvable");
            for (int j = 0; j < k; ++j) {
                const double val = c(j);
                if (std::abs(val - std::round(val)) > tol.integer || std::round(val) < -0.5)
                    throw InconsistencyError("inconsistent basis: non-integral class fusion");
                N[j](v, w) = static_cast<Int>(std::round(val));
            }
        }
    return N;
}

} // namespace

ModuleClassBasis decompose_module_category(const AlgebraObject& a, Tolerances tol) {
    ModuleClassBasis basis;
    basis.algebra = a;

    if (a.support_is_group(tol)) {
        GroupDecomposer dec(a, tol);
        dec.build_orbits();
        dec.build_classes();
        basis.class_fusion = dec.solve_fusion();
        for (int c = 0; c < dec.m; ++c) {
            SimpleClass sc;
            sc.restriction = dec.res[c];
            sc.dim = dec.dim[c];
            sc.local = dec.local[c];
            sc.partner = dec.partner[c];
            basis.simples.push_back(std::move(sc));
        }
    } else {
        GramDecomposer dec(a, tol);
        dec.run();
        std::vector<IntVector> cols = dec.found.front();
        std::sort(cols.begin(), cols.end(), [&](const IntVector& l, const IntVector& r) {
            for (int i = 0; i < l.size(); ++i)
                if (l(i) != r(i)) return l(i) > r(i);
            return false;
        });
        // unit class (the one containing the unit label) first
        std::stable_sort(cols.begin(), cols.end(),
                         [](const IntVector& l, const IntVector& r) { return (l(0) > 0) > (r(0) > 0); });
        const double dimA = a.algebra_dim();
        for (const IntVector& r : cols) {
            SimpleClass sc;
            sc.restriction = r;
            double rd = 0.0;
            for (int x = 0; x < a.base.rank(); ++x) rd += static_cast<double>(r(x)) * a.dims.d[x];
            sc.dim = rd / dimA;
            sc.local = twist_constant_on(a.base, r, tol);
            basis.simples.push_back(std::move(sc));
        }
        basis.class_fusion = solve_class_fusion_linear(a, basis.simples, tol);
    }

    for (int c = 0; c < basis.size(); ++c)
        if (basis.simples[c].local) basis.local_indices.push_back(c);
    return basis;
}

IntMatrix module_fusion(const ModuleClassBasis& basis, int lambda) {
    if (lambda < 0 || lambda >= basis.algebra.base.rank()) throw StructuralError("label out of range");
    if (basis.class_fusion.empty())
        throw InconsistencyError("inconsistent basis: class fusion matrices unavailable");
    const int k = basis.size();
    IntMatrix V = IntMatrix::Zero(k, k);
    for (int c = 0; c < k; ++c) {
        const Int mult = basis.simples[c].restriction(lambda);
        if (mult != 0) V += mult * basis.class_fusion[c];
    }
    return V;
}

IntMatrix module_fusion_local(const ModuleClassBasis& basis, int j) {
    if (j < 0 || j >= static_cast<int>(basis.local_indices.size()))
        throw StructuralError("local simple index out of range");
    if (basis.class_fusion.empty())
        throw InconsistencyError("inconsistent basis: class fusion matrices unavailable");
    return basis.class_fusion[basis.local_indices[j]];
}

ValidationReport check_basis(const ModuleClassBasis& basis, Tolerances tol) {
    ValidationReport report;
    const AlgebraObject& A = basis.algebra;
    const int n = A.base.rank();
    const int k = basis.size();

    Int gram = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Int lhs = 0;
            for (int j = 0; j < k; ++j)
                lhs += basis.simples[j].restriction(x) * basis.simples[j].restriction(y);
            gram = std::max(gram, std::abs(lhs - induced_hom(A, x, y)));
        }
    report.add("gram_realization", gram == 0, static_cast<double>(gram));

    double total = 0.0, local_total = 0.0;
    for (const auto& sc : basis.simples) {
        total += sc.dim * sc.dim;
        if (sc.local) local_total += sc.dim * sc.dim;
    }
    double fp = 0.0;
    for (int x = 0; x < n; ++x) fp += A.dims.d[x] * A.dims.d[x];
    const double dimA = A.algebra_dim();
    const double r1 = std::abs(total - fp / dimA);
    const double r2 = std::abs(local_total - fp / (dimA * dimA));
    report.add("fpdim_module_category", r1 < tol.num * fp, r1);
    report.add("fpdim_local_modules", r2 < tol.num * fp, r2);

    if (!basis.class_fusion.empty()) {
        Int comm = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                const IntMatrix d =
                    basis.class_fusion[a] * basis.class_fusion[b] - basis.class_fusion[b] * basis.class_fusion[a];
                comm = std::max(comm, d.cwiseAbs().maxCoeff());
            }
        report.add("class_fusion_commutes", comm == 0, static_cast<double>(comm));

        // lambda -> V^lambda is a ring homomorphism from the Verlinde ring
        Int hom = 0;
        for (int l1 = 0; l1 < n; ++l1) {
            const IntMatrix V1 = module_fusion(basis, l1);
            for (int l2 = 0; l2 < n; ++l2) {
                IntMatrix lhs = V1 * module_fusion(basis, l2);
                for (int l3 = 0; l3 < n; ++l3) {
                    const Int c = A.fusion.at(l1, l2, l3);
                    if (c != 0) lhs -= c * module_fusion(basis, l3);
                }
                hom = std::max(hom, lhs.cwiseAbs().maxCoeff());
            }
        }
        report.add("verlinde_ring_hom", hom == 0, static_cast<double>(hom));
    }
    return report;
}

} // namespace mtc
