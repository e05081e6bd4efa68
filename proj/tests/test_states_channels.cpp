#include <doctest.h>

#include <cmath>

#include "qdp/serialize.hpp"
#include "qdp/states_channels.hpp"

using namespace qdp;

namespace {

DensityOperator ket0() { return DensityOperator::computational(2, 0); }
DensityOperator ket1() { return DensityOperator::computational(2, 1); }

DensityOperator bell_phi_plus() {
    CVec phi = CVec::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    return DensityOperator::pure(phi);
}

// Von Neumann entropy in nats, from the eigenvalues.
double entropy(const CMat& rho) {
    const Spectrum s = hermitian_eig(rho);
    double h = 0.0;
    for (int i = 0; i < s.dim(); ++i) {
        const double p = s.eigenvalues(i);
        if (p > 1e-14) h -= p * std::log(p);
    }
    return h;
}

} // namespace

TEST_CASE("density operator validation") {
    CHECK_THROWS_AS(DensityOperator(CMat::Identity(2, 2)), ParameterOutOfRangeError);
    CMat neg = CMat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator(neg), ParameterOutOfRangeError);
    CMat skew(2, 2);
    skew << 0.5, 0.5, -0.5, 0.5;
    CHECK_THROWS_AS(DensityOperator(skew), NotHermitianError);
}

TEST_CASE("measurement operator validation") {
    CHECK_NOTHROW(MeasurementOperator(CMat::Identity(3, 3)));
    CHECK_THROWS_AS(MeasurementOperator(2.0 * CMat::Identity(2, 2)),
                    ParameterOutOfRangeError);
}

TEST_CASE("povm effects must resolve the identity") {
    std::vector<MeasurementOperator> effects;
    effects.emplace_back(CMat(0.5 * CMat::Identity(2, 2)));
    CHECK_THROWS_AS(Povm(effects), ParameterOutOfRangeError);
    effects.emplace_back(CMat(0.5 * CMat::Identity(2, 2)));
    CHECK_NOTHROW(Povm(effects));
}

TEST_CASE("kraus channel must be trace preserving") {
    std::vector<CMat> bad{CMat::Identity(2, 2), CMat::Identity(2, 2)};
    CHECK_THROWS_AS(KrausChannel(bad), ParameterOutOfRangeError);
}

TEST_CASE("identity channel returns its input") {
    Rng rng(3);
    const DensityOperator rho = random_density(rng, 3);
    const DensityOperator out = apply(identity_channel(3), rho);
    CHECK((out.mat() - rho.mat()).norm() < 1e-14);
}

TEST_CASE("fully depolarizing channel outputs the maximally mixed state") {
    const DensityOperator out = apply(depolarizing_channel(1.0), ket0());
    CHECK((out.mat() - 0.5 * CMat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("depolarizing(0.5) on |0><0| gives diag(0.75, 0.25)") {
    const DensityOperator out = apply(depolarizing_channel(0.5), ket0());
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = 0.75;
    expected(1, 1) = 0.25;
    CHECK((out.mat() - expected).norm() < 1e-12);
}

TEST_CASE("depolarizing(0) acts as the identity") {
    Rng rng(5);
    const DensityOperator rho = random_density(rng, 2);
    const DensityOperator out = apply(depolarizing_channel(0.0), rho);
    CHECK((out.mat() - rho.mat()).norm() < 1e-12);
}

TEST_CASE("depolarizing rejects p outside [0, 1]") {
    CHECK_THROWS_AS(depolarizing_channel(-0.1), ParameterOutOfRangeError);
    CHECK_THROWS_AS(depolarizing_channel(1.1), ParameterOutOfRangeError);
}

TEST_CASE("apply rejects dimension mismatches") {
    CHECK_THROWS_AS(apply(depolarizing_channel(0.5), DensityOperator::maximally_mixed(3)),
                    DimensionMismatchError);
}

TEST_CASE("compose_tensor of identities is the identity") {
    const KrausChannel composite =
        compose_tensor({identity_channel(2), identity_channel(2)});
    Rng rng(7);
    const DensityOperator rho = random_density(rng, 4);
    CHECK((apply(composite, rho).mat() - rho.mat()).norm() < 1e-13);
}

TEST_CASE("compose_tensor acts factor-wise on product inputs") {
    Rng rng(9);
    const KrausChannel a1 = depolarizing_channel(0.3);
    const KrausChannel a2 = depolarizing_channel(0.8);
    const DensityOperator rho1 = random_density(rng, 2);
    const DensityOperator rho2 = random_density(rng, 2);
    const DensityOperator joint =
        apply(compose_tensor({a1, a2}), DensityOperator(tensor(rho1.mat(), rho2.mat())));
    const CMat expected = tensor(apply(a1, rho1).mat(), apply(a2, rho2).mat());
    CHECK((joint.mat() - expected).norm() < 1e-10);
}

TEST_CASE("compose_tensor multiplies Kraus counts") {
    const KrausChannel composite =
        compose_tensor({depolarizing_channel(0.5), depolarizing_channel(0.5),
                        depolarizing_channel(0.5)});
    CHECK(composite.kraus().size() == 64);
    CHECK(composite.dim_in() == 8);
}

TEST_CASE("factorized composition emits product outputs") {
    std::vector<MeasurementOperator> basis;
    basis.emplace_back(ket0().mat());
    basis.emplace_back(ket1().mat());
    const Povm computational(basis);

    const StateMap fac = compose_factorized(
        {identity_channel(2), measure_and_dephase_channel(computational)});
    Rng rng(11);
    const DensityOperator rho = random_density(rng, 2);
    const DensityOperator out = fac(rho);

    CMat dephased = CMat::Zero(2, 2);
    dephased(0, 0) = rho.mat()(0, 0);
    dephased(1, 1) = rho.mat()(1, 1);
    CHECK((out.mat() - tensor(rho.mat(), dephased)).norm() < 1e-12);
}

TEST_CASE("single-element factorized composition is the channel itself") {
    const StateMap fac = compose_factorized({depolarizing_channel(0.4)});
    const DensityOperator out = fac(ket0());
    CHECK((out.mat() - apply(depolarizing_channel(0.4), ket0()).mat()).norm() < 1e-13);
}

TEST_CASE("factorized outputs carry no mutual information between blocks") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const KrausChannel a1 = random_channel(rng, 2, 2);
        const KrausChannel a2 = random_channel(rng, 2, 3);
        const StateMap fac = compose_factorized({a1, a2});
        const DensityOperator rho = random_density(rng, 2);
        const CMat joint = fac(rho).mat();
        const double mutual = entropy(partial_trace(joint, {2, 2}, {0})) +
                              entropy(partial_trace(joint, {2, 2}, {1})) - entropy(joint);
        CHECK(std::abs(mutual) <= 1e-9);
    }
}

TEST_CASE("bell joint channel maps the basis to Bell states") {
    const KrausChannel bell = bell_joint_channel();
    CHECK((apply(bell, ket0()).mat() - bell_phi_plus().mat()).norm() < 1e-14);

    CVec phi_minus = CVec::Zero(4);
    phi_minus(0) = 1.0 / std::sqrt(2.0);
    phi_minus(3) = -1.0 / std::sqrt(2.0);
    CHECK((apply(bell, ket1()).mat() - CMat(phi_minus * phi_minus.adjoint())).norm() <
          1e-14);
}

TEST_CASE("bell joint marginals are input independent") {
    const KrausChannel bell = bell_joint_channel();
    for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{1}}) {
        const StateMap marginal = marginal_channel(bell, {2, 2}, keep);
        for (const DensityOperator& input : {ket0(), ket1()}) {
            CHECK((marginal(input).mat() - 0.5 * CMat::Identity(2, 2)).norm() <= 1e-12);
        }
    }
}

TEST_CASE("keep-all marginal is the channel itself") {
    const KrausChannel bell = bell_joint_channel();
    const StateMap marginal = marginal_channel(bell, {2, 2}, {0, 1});
    CHECK((marginal(ket0()).mat() - apply(bell, ket0()).mat()).norm() < 1e-14);
}

TEST_CASE("cnot ancilla channel on basis states and |+>") {
    const KrausChannel cnot = cnot_ancilla_channel();
    const DensityOperator out1 = apply(cnot, ket1());
    CMat expected = CMat::Zero(4, 4);
    expected(3, 3) = 1.0; // |11><11|
    CHECK((out1.mat() - expected).norm() < 1e-14);

    CVec plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DensityOperator out_plus = apply(cnot, DensityOperator::pure(plus));
    CHECK((out_plus.mat() - bell_phi_plus().mat()).norm() < 1e-14);
    const CMat marginal = partial_trace(out_plus.mat(), {2, 2}, {0});
    CHECK((marginal - 0.5 * CMat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("classical embedding keeps diagonals and kills coherences") {
    CVec plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DensityOperator out =
        apply(classical_embedding_channel(2), DensityOperator::pure(plus));
    CHECK((out.mat() - 0.5 * CMat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("marginal of a tensor composite recovers the slot channel") {
    Rng rng(17);
    const KrausChannel a1 = random_channel(rng, 2, 2);
    const KrausChannel a2 = random_channel(rng, 2, 2);
    const KrausChannel composite = compose_tensor({a1, a2});
    const DensityOperator rho1 = random_density(rng, 2);
    const DensityOperator rho2 = random_density(rng, 2);
    const DensityOperator joint_in = DensityOperator(tensor(rho1.mat(), rho2.mat()));

    const StateMap marginal = marginal_channel(composite, {2, 2}, {0});
    CHECK((marginal(joint_in).mat() - apply(a1, rho1).mat()).norm() < 1e-10);

    // Kraus-form marginal agrees with the transformer.
    const KrausChannel marginal_kraus = marginal_kraus_channel(composite, {2, 2}, {0});
    CHECK((apply(marginal_kraus, joint_in).mat() - marginal(joint_in).mat()).norm() <
          1e-12);
}

TEST_CASE("every zoo channel satisfies the CPTP invariant") {
    // Construction already checks sum K^dag K = I to 1e-9; spot-check anyway.
    for (const KrausChannel& ch :
         {identity_channel(3), depolarizing_channel(0.7), cnot_ancilla_channel(),
          bell_joint_channel(), classical_embedding_channel(4)}) {
        CMat sum = CMat::Zero(ch.dim_in(), ch.dim_in());
        for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
        CHECK((sum - CMat::Identity(ch.dim_in(), ch.dim_in())).norm() <= 1e-9);
    }
}

TEST_CASE("product relation enumerates slot pairs and orientations") {
    const NeighborRelation r1({{ket0(), ket1()}});
    const NeighborRelation r2({{ket0(), ket1()}, {ket1(), ket0()}});
    const NeighborRelation prod = product_relation({r1, r2});
    // 1 x 2 pair combinations, each in two relative orientations.
    CHECK(prod.size() == 4);
    CHECK(prod.dim() == 4);
    CHECK((prod.pairs()[0].first.mat() - tensor(ket0().mat(), ket0().mat())).norm() <
          1e-14);
    CHECK((prod.pairs()[0].second.mat() - tensor(ket1().mat(), ket1().mat())).norm() <
          1e-14);
    CHECK((prod.pairs()[1].first.mat() - tensor(ket0().mat(), ket1().mat())).norm() <
          1e-14);
    CHECK((prod.pairs()[1].second.mat() - tensor(ket1().mat(), ket0().mat())).norm() <
          1e-14);
}

TEST_CASE("channel and relation files round-trip") {
    Rng rng(19);
    const KrausChannel ch = random_channel(rng, 2, 3);
    const KrausChannel back = channel_from_json(channel_to_json(ch));
    CHECK(back.dim_in() == ch.dim_in());
    CHECK(back.dim_out() == ch.dim_out());
    REQUIRE(back.kraus().size() == ch.kraus().size());
    for (std::size_t i = 0; i < ch.kraus().size(); ++i) {
        CHECK((back.kraus()[i] - ch.kraus()[i]).norm() == 0.0);
    }

    const NeighborRelation rel({{random_density(rng, 2), random_density(rng, 2)}});
    const NeighborRelation rel_back = relation_from_json(relation_to_json(rel));
    CHECK((rel_back.pairs()[0].first.mat() - rel.pairs()[0].first.mat()).norm() == 0.0);
}

TEST_CASE("malformed files name the offending field") {
    Json bad = Json{{"dim", 2},
                    {"re", Json::array({Json::array({1.0, 0.0})})},
                    {"im", Json::array({Json::array({0.0, 0.0})})}};
    CHECK_THROWS_WITH_AS(matrix_from_json(bad, "channel.kraus[0]"),
                         doctest::Contains("channel.kraus[0].re"), ParseError);

    Json unknown = Json{{"dim_in", 2}, {"dim_out", 2}, {"kraus", Json::array()},
                        {"label", ""}, {"extra", 1}};
    CHECK_THROWS_WITH_AS(channel_from_json(unknown), doctest::Contains("extra"),
                         ParseError);
}
