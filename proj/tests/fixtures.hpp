#pragma once

#include "mtc/coset.hpp"
#include "mtc/generators.hpp"

// Shared coset fixtures. The two nontrivial ones are produced by the
// branching solver itself, so every consumer re-verifies the solver output.
namespace fixtures {

inline const mtc::CosetSystem& ising_coset() {
    static const mtc::CosetSystem cs = [] {
        auto sols = mtc::solve_branching(mtc::su2_level(2), mtc::minimal_model(3, 4),
                                         mtc::deligne_product(mtc::su2_level(1), mtc::su2_level(1)), 2);
        if (sols.size() != 1) throw std::runtime_error("ising fixture is not unique");
        return sols.front();
    }();
    return cs;
}

inline const mtc::CosetSystem& k2_diagonal_coset() {
    static const mtc::CosetSystem cs = [] {
        auto sols = mtc::solve_branching(mtc::su2_level(3), mtc::minimal_model(4, 5),
                                         mtc::deligne_product(mtc::su2_level(2), mtc::su2_level(1)), 2);
        if (sols.size() != 1) throw std::runtime_error("k2 fixture is not unique");
        return sols.front();
    }();
    return cs;
}

inline mtc::CosetSystem trivial_system(const mtc::ModularData& x) {
    std::vector<mtc::IntMatrix> z(x.rank(), mtc::IntMatrix::Zero(1, x.rank()));
    for (int i = 0; i < x.rank(); ++i) z[i](0, i) = 1;
    return mtc::CosetSystem::build(mtc::trivial_data(), x, x, z);
}

inline mtc::CosetSystem double_system(const mtc::ModularData& x) {
    const std::vector<int> dual = mtc::dual_permutation(x);
    std::vector<mtc::IntMatrix> z(1, mtc::IntMatrix::Zero(x.rank(), x.rank()));
    for (int a = 0; a < x.rank(); ++a) z[0](a, dual[a]) = 1;
    return mtc::CosetSystem::build(x, mtc::mirror(x), mtc::trivial_data(), z);
}

} // namespace fixtures
