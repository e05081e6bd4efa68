#include <doctest.h>

#include <cmath>

#include "qdp/accountant.hpp"
#include "qdp/adversary.hpp"

using namespace qdp;

namespace {

DensityOperator ket0() { return DensityOperator::computational(2, 0); }
DensityOperator ket1() { return DensityOperator::computational(2, 1); }

void check_valid_test_operator(const CMat& m) {
    const Spectrum s = hermitian_eig(m);
    CHECK(s.eigenvalues(s.dim() - 1) >= -1e-10);
    CHECK(s.eigenvalues(0) <= 1.0 + 1e-10);
}

} // namespace

TEST_CASE("one-way LOCC acceptance operators are measurement operators") {
    Rng rng(131);
    for (int i = 0; i < 25; ++i) {
        const auto test = sample_oneway_locc(rng, {2, 3}, 2);
        check_valid_test_operator(test.acceptance_operator());
    }
}

TEST_CASE("single-outcome LOCC tests are product tests") {
    Rng rng(137);
    const auto test = sample_oneway_locc(rng, {2, 2}, 1);
    const CMat expected = tensor(CMat::Identity(2, 2), test.conditional_effects[0].mat());
    CHECK((test.acceptance_operator() - expected).norm() < 1e-10);
}

TEST_CASE("deterministic accept collapses to the identity") {
    Rng rng(139);
    auto test = sample_oneway_locc(rng, {2, 2}, 2);
    for (auto& effect : test.conditional_effects) {
        effect = MeasurementOperator(CMat::Identity(2, 2));
    }
    CHECK((test.acceptance_operator() - CMat::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("LOCC acceptance factorizes on product states") {
    Rng rng(149);
    for (int i = 0; i < 10; ++i) {
        const auto test = sample_oneway_locc(rng, {2, 2}, 2);
        const DensityOperator xi1 = random_density(rng, 2);
        const DensityOperator xi2 = random_density(rng, 2);
        const CMat joint = tensor(xi1.mat(), xi2.mat());
        const double direct = (test.acceptance_operator() * joint).trace().real();
        const double factorized = test.factorized_acceptance(xi1.mat(), xi2.mat());
        CHECK(direct == doctest::Approx(factorized).epsilon(1e-10));
    }
}

TEST_CASE("LO* tests with unit weights accept everything") {
    Rng rng(151);
    auto test = sample_lostar(rng, {2, 2});
    for (double& w : test.weights) w = 1.0;
    CHECK((test.acceptance_operator() - CMat::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("parity fixture acceptance operator is exact") {
    CMat expected = CMat::Zero(4, 4);
    expected(1, 1) = 1.0;
    expected(2, 2) = 1.0;
    CHECK((parity_lostar_test().acceptance_operator() - expected).norm() == 0.0);
}

TEST_CASE("LO* acceptance operators are measurement operators") {
    Rng rng(157);
    for (int i = 0; i < 25; ++i) {
        const auto test = sample_lostar(rng, {2, 2}, i % 4 == 3);
        check_valid_test_operator(test.acceptance_operator());
    }
}

TEST_CASE("LO* acceptance equals the classical expectation of the weights") {
    Rng rng(163);
    for (int i = 0; i < 10; ++i) {
        const auto test = sample_lostar(rng, {2, 2});
        const DensityOperator a = random_density(rng, 2);
        const DensityOperator b = random_density(rng, 2);
        const double direct =
            (test.acceptance_operator() * tensor(a.mat(), b.mat())).trace().real();
        CHECK(direct == doctest::Approx(test.classical_expectation({a, b})).epsilon(1e-10));
    }
}

TEST_CASE("falsifier exposes the no-go configuration") {
    const KrausChannel bell = bell_joint_channel();
    const NeighborRelation rel({{ket0(), ket1()}});
    const ViolationReport report =
        falsify(bell.map(), rel, CompositionClaim{10.0, 0.9}, TestClass::unrestricted,
                {2, 2}, 100, 42);
    CHECK(report.found);
    CHECK(report.worst_margin == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(report.worst_trial == -1); // the deterministic fixture finds it

    CVec phi = CVec::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    CHECK((report.witness - CMat(phi * phi.adjoint())).norm() < 1e-9);
}

TEST_CASE("falsifier cannot break the proved LOCC composition bound") {
    Rng rng(167);
    const KrausChannel ch1 = mix_with_depolarizing(random_channel(rng, 2, 2), 0.1);
    const KrausChannel ch2 = mix_with_depolarizing(random_channel(rng, 2, 2), 0.1);
    const NeighborRelation rel1({{random_density(rng, 2, 0.2), random_density(rng, 2, 0.2)}});
    const NeighborRelation rel2({{random_density(rng, 2, 0.2), random_density(rng, 2, 0.2)}});
    const double eps1 = 0.4;
    const double eps2 = 0.7;
    const double delta1 = std::max(verify_qdp(ch1.map(), rel1, eps1, 0.0).margin, 0.0);
    const double delta2 = std::max(verify_qdp(ch2.map(), rel2, eps2, 0.0).margin, 0.0);

    const ViolationReport report = falsify(
        compose_tensor({ch1, ch2}).map(), product_relation({rel1, rel2}),
        CompositionClaim{eps1 + eps2, std::exp(eps2) * delta1 + delta2},
        TestClass::one_way_locc, {2, 2}, 500, 7);
    CHECK(!report.found);
    CHECK(report.worst_margin <= tol::verdict);
}

TEST_CASE("falsifier finds nothing on the identity relation") {
    const NeighborRelation rel({{ket0(), ket0()}});
    const ViolationReport report =
        falsify(identity_channel(2).map(), rel, CompositionClaim{0.0, 0.0},
                TestClass::unrestricted, {2}, 50, 3);
    CHECK(!report.found);
}

TEST_CASE("falsifier reports are reproducible for a fixed seed") {
    Rng rng(173);
    const KrausChannel ch = mix_with_depolarizing(random_channel(rng, 2, 2), 0.1);
    const NeighborRelation rel({{random_density(rng, 2, 0.2), random_density(rng, 2, 0.2)}});
    const ViolationReport a =
        falsify(ch.map(), rel, CompositionClaim{0.1, 0.2}, TestClass::unrestricted, {2},
                200, 11);
    const ViolationReport b =
        falsify(ch.map(), rel, CompositionClaim{0.1, 0.2}, TestClass::unrestricted, {2},
                200, 11);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.worst_trial == b.worst_trial);
    CHECK((a.witness - b.witness).norm() == 0.0);
}
