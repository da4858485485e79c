#include "doctest.h"

#include <cmath>

#include "mtc/generators.hpp"
#include "mtc/modular_data.hpp"

using namespace mtc;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("validate accepts genuine modular data") {
    for (const ModularData& md : {su2_level(2), minimal_model(3, 4), trivial_data(), pointed_cyclic(3, 2)}) {
        const ValidationReport rep = validate(md);
        CHECK(rep.pass);
        CHECK(rep.worst() < 1e-12);
    }
}

TEST_CASE("validate flags a tampered twist through the balancing identity") {
    ModularData md = su2_level(2);
    md.twists(2) = Complex(1.0, 0.0); // true value is -1
    const ValidationReport rep = validate(md);
    CHECK_FALSE(rep.pass);
    bool balancing_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "balancing") balancing_failed = !c.pass;
    CHECK(balancing_failed);
}

TEST_CASE("validate rejects malformed shapes as structural errors") {
    ModularData md = su2_level(1);
    md.labels.push_back("extra");
    CHECK_THROWS_AS(validate(md), StructuralError);
}

TEST_CASE("verlinde on su2 level 2") {
    const ModularData md = su2_level(2);
    const FusionTensor n = verlinde(md);
    CHECK(n.at(1, 1, 0) == 1);
    CHECK(n.at(1, 1, 2) == 1);
    CHECK(n.at(1, 1, 1) == 0);
}

TEST_CASE("verlinde rejects non-modular data") {
    ModularData md = su2_level(2);
    md.s(1, 2) += 0.05; // breaks unitarity and integrality
    CHECK_THROWS_AS(verlinde(md), InconsistencyError);
}

TEST_CASE("dual permutation rejects a non-permutation square") {
    ModularData md = su2_level(2);
    md.s *= 0.5;
    CHECK_THROWS_AS(dual_permutation(md), InconsistencyError);
}

TEST_CASE("verlinde unit row is the identity") {
    for (const ModularData& md : {su2_level(3), minimal_model(4, 5), pointed_cyclic(5, 2)}) {
        const FusionTensor n = verlinde(md);
        for (int a = 0; a < md.rank(); ++a)
            for (int b = 0; b < md.rank(); ++b) CHECK(n.at(0, a, b) == (a == b ? 1 : 0));
    }
}

TEST_CASE("verlinde of the Ising model: sigma x sigma = 1 + eps") {
    const ModularData md = minimal_model(3, 4); // labels (1,1), (1,2)=sigma, (1,3)=eps
    const FusionTensor n = verlinde(md);
    CHECK(n.at(1, 1, 0) == 1);
    CHECK(n.at(1, 1, 2) == 1);
    CHECK(n.at(1, 1, 1) == 0);
}

TEST_CASE("fusion tensors satisfy the ring axioms") {
    for (const ModularData& md : {su2_level(4), minimal_model(4, 5), pointed_cyclic(6, 1)}) {
        const FusionTensor n = verlinde(md);
        const ValidationReport rep = check_fusion_invariants(n, dual_permutation(md));
        CHECK(rep.pass);
    }
}

TEST_CASE("quantum dimensions") {
    SUBCASE("su2 level 2") {
        const QuantumDims q = quantum_dims(su2_level(2));
        CHECK(q.d[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(q.d[1] == doctest::Approx(kSqrt2).epsilon(1e-12));
        CHECK(q.d[2] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(q.total == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("rank one") {
        const QuantumDims q = quantum_dims(trivial_data());
        CHECK(q.d[0] == doctest::Approx(1.0));
        CHECK(q.total == doctest::Approx(1.0));
    }
    SUBCASE("Ising") {
        const QuantumDims q = quantum_dims(minimal_model(3, 4));
        CHECK(q.d[1] == doctest::Approx(kSqrt2).epsilon(1e-12));
        CHECK(q.total == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("sum rule") {
        const ModularData md = su2_level(5);
        const QuantumDims q = quantum_dims(md);
        double sum = 0.0;
        for (double d : q.d) sum += d * d;
        CHECK(sum == doctest::Approx(q.total * q.total).epsilon(1e-12));
    }
}

TEST_CASE("dual permutation") {
    for (int k = 1; k <= 5; ++k) {
        const std::vector<int> perm = dual_permutation(su2_level(k));
        for (int a = 0; a <= k; ++a) CHECK(perm[a] == a); // all self-dual
    }
    CHECK(dual_permutation(trivial_data()) == std::vector<int>{0});
    // Z3 charge conjugation swaps the nontrivial pair
    CHECK(dual_permutation(pointed_cyclic(3, 1)) == std::vector<int>{0, 2, 1});

    // N_{ab}^1 = delta_{b, a'} against the Verlinde output
    const ModularData md = pointed_cyclic(5, 2);
    const FusionTensor n = verlinde(md);
    const std::vector<int> perm = dual_permutation(md);
    for (int a = 0; a < md.rank(); ++a)
        for (int b = 0; b < md.rank(); ++b) CHECK(n.at(a, b, 0) == (b == perm[a] ? 1 : 0));
}

TEST_CASE("monodromy triviality via the S-matrix test") {
    const ModularData md = su2_level(2);
    CHECK(monodromy_is_trivial(md, 2, 2));       // D s_22 = 1 = d_2^2
    CHECK_FALSE(monodromy_is_trivial(md, 1, 2)); // D s_12 = -sqrt2
    for (int b = 0; b < md.rank(); ++b) CHECK(monodromy_is_trivial(md, 0, b));
    // symmetry in (a, b)
    for (const ModularData& m : {su2_level(3), pointed_cyclic(4, 1)})
        for (int a = 0; a < m.rank(); ++a)
            for (int b = 0; b < m.rank(); ++b)
                CHECK(monodromy_is_trivial(m, a, b) == monodromy_is_trivial(m, b, a));
}

TEST_CASE("deligne product") {
    SUBCASE("su2_1 squared") {
        const ModularData md = deligne_product(su2_level(1), su2_level(1));
        CHECK(md.rank() == 4);
        const QuantumDims q = quantum_dims(md);
        CHECK(q.total == doctest::Approx(2.0).epsilon(1e-12));
        for (double d : q.d) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(validate(md).pass);
    }
    SUBCASE("unit factor gives an isomorphic copy") {
        const ModularData x = minimal_model(4, 5);
        const ModularData md = deligne_product(x, trivial_data());
        CHECK(md.rank() == x.rank());
        CHECK((md.s - x.s).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((md.twists - x.twists).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("su2_2 x Ising") {
        const ModularData md = deligne_product(su2_level(2), minimal_model(3, 4));
        CHECK(md.rank() == 9);
        CHECK(quantum_dims(md).total == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(validate(md).pass);
    }
    SUBCASE("fusion, dimensions and duality factor through the product") {
        const ModularData a = su2_level(2), b = pointed_cyclic(3, 2);
        const ModularData md = deligne_product(a, b);
        const FusionTensor na = verlinde(a), nb = verlinde(b), n = verlinde(md);
        const int rb = b.rank();
        for (int x1 = 0; x1 < a.rank(); ++x1)
            for (int x2 = 0; x2 < rb; ++x2)
                for (int y1 = 0; y1 < a.rank(); ++y1)
                    for (int y2 = 0; y2 < rb; ++y2)
                        for (int z1 = 0; z1 < a.rank(); ++z1)
                            for (int z2 = 0; z2 < rb; ++z2)
                                CHECK(n.at(x1 * rb + x2, y1 * rb + y2, z1 * rb + z2) ==
                                      na.at(x1, y1, z1) * nb.at(x2, y2, z2));
        const QuantumDims qa = quantum_dims(a), qb = quantum_dims(b), q = quantum_dims(md);
        for (int x1 = 0; x1 < a.rank(); ++x1)
            for (int x2 = 0; x2 < rb; ++x2)
                CHECK(q.d[x1 * rb + x2] == doctest::Approx(qa.d[x1] * qb.d[x2]).epsilon(1e-12));
        const auto da = dual_permutation(a), db = dual_permutation(b), d = dual_permutation(md);
        for (int x1 = 0; x1 < a.rank(); ++x1)
            for (int x2 = 0; x2 < rb; ++x2) CHECK(d[x1 * rb + x2] == da[x1] * rb + db[x2]);
    }
}

TEST_CASE("balancing identity") {
    SUBCASE("holds on genuine data") {
        const ModularData md = su2_level(3);
        CHECK(balancing_check(md, verlinde(md)) < 1e-10);
        const ModularData t = trivial_data();
        CHECK(balancing_check(t, verlinde(t)) == doctest::Approx(0.0));
    }
    SUBCASE("detects a tampered twist") {
        ModularData md = su2_level(2);
        md.twists(2) = Complex(1.0, 0.0);
        CHECK(balancing_check(md, verlinde(md)) > 0.1);
    }
    SUBCASE("the mirror is valid data and passes") {
        // conjugating both S and the twists gives the reverse category,
        // which is genuine modular data; no scalar identity can reject it
        const ModularData md = mirror(su2_level(2));
        CHECK(validate(md).pass);
        CHECK(balancing_check(md, verlinde(md)) < 1e-12);
    }
}
