#include "qdp/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "qdp/version.hpp"

namespace qdp {

namespace {

std::string fmt(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", a);
    return buf;
}

void add_check(ReproResult& r, const std::string& what, bool ok, double value) {
    r.pass = r.pass && ok;
    r.lines.push_back(std::string(ok ? "  [ok]   " : "  [FAIL] ") + what + " = " +
                      fmt(value));
}

NeighborRelation bit_relation() {
    return NeighborRelation({{DensityOperator::computational(2, 0),
                              DensityOperator::computational(2, 1)}});
}

KrausChannel seeded_qubit_channel(Rng& rng) {
    const int n_kraus = 2 + rng.uniform_int(2);
    return mix_with_depolarizing(random_channel(rng, 2, n_kraus), 0.1);
}

NeighborRelation seeded_qubit_relation(Rng& rng, int n_pairs) {
    std::vector<NeighborRelation::Pair> pairs;
    for (int i = 0; i < n_pairs; ++i) {
        pairs.emplace_back(random_density(rng, 2, 0.2), random_density(rng, 2, 0.2));
    }
    return NeighborRelation(std::move(pairs));
}

} // namespace

ReproResult reproduce_no_go(std::uint64_t seed) {
    ReproResult r;
    r.name = "no-go";
    r.pass = true;

    const KrausChannel bell = bell_joint_channel();
    const NeighborRelation rel = bit_relation();
    const StateMap joint = bell.map();
    const StateMap a1 = marginal_channel(bell, {2, 2}, {0});
    const StateMap a2 = marginal_channel(bell, {2, 2}, {1});

    double marginal_worst = 0.0;
    for (const StateMap* m : {&a1, &a2}) {
        const Verdict v = verify_qdp(*m, rel, 0.0, 0.0);
        marginal_worst = std::max(marginal_worst, v.margin);
    }
    add_check(r, "marginal delta_min at eps=0", marginal_worst <= 1e-12, marginal_worst);
    r.details["marginal_delta_max"] = marginal_worst;

    Json joint_deltas = Json::array();
    bool joint_ok = true;
    for (double eps : {0.0, 1.0, 10.0}) {
        const auto& [rho, sigma] = rel.pairs()[0];
        const double d = delta_min(joint(rho), joint(sigma), eps);
        joint_deltas.push_back(Json{{"eps", eps}, {"delta_min", d}});
        joint_ok = joint_ok && d >= 1.0 - 1e-12;
    }
    add_check(r, "joint delta_min >= 1 - 1e-12 at eps in {0,1,10}", joint_ok,
              joint_deltas.back()["delta_min"].get<double>());
    r.details["joint_delta_min"] = joint_deltas;

    const Verdict witness_verdict = verify_qdp(joint, rel, 10.0, 0.99);
    CVec phi_plus = CVec::Zero(4);
    phi_plus(0) = 1.0 / std::sqrt(2.0);
    phi_plus(3) = 1.0 / std::sqrt(2.0);
    const double fidelity =
        (phi_plus.adjoint() * witness_verdict.witness * phi_plus)(0, 0).real();
    add_check(r, "witness fidelity with |Phi+>", fidelity >= 1.0 - 1e-9, fidelity);
    add_check(r, "joint channel fails at (10, 0.99)", !witness_verdict.pass,
              witness_verdict.margin);
    r.details["witness_fidelity"] = fidelity;
    r.details["witness"] = matrix_to_json(witness_verdict.witness);

    const ViolationReport falsified =
        falsify(joint, rel, CompositionClaim{10.0, 0.9}, TestClass::unrestricted, {2, 2},
                200, seed);
    add_check(r, "falsifier finds the violation (margin ~ 0.1)",
              falsified.found && std::abs(falsified.worst_margin - 0.1) <= 1e-9,
              falsified.worst_margin);
    r.details["falsification"] = violation_report_to_json(falsified);
    return r;
}

ReproResult reproduce_mmgf_additivity(std::uint64_t seed, int n_pairs) {
    ReproResult r;
    r.name = "mmgf-additivity";
    r.pass = true;

    const std::vector<double> grid = default_lambda_grid();
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
        Rng rng(task_seed(seed, static_cast<std::uint64_t>(i)));
        const KrausChannel ch1 = seeded_qubit_channel(rng);
        const KrausChannel ch2 = seeded_qubit_channel(rng);
        const NeighborRelation rel1 = seeded_qubit_relation(rng, 1);
        const NeighborRelation rel2 = seeded_qubit_relation(rng, 1);

        const MomentProfile p1 = moments_profile(ch1.map(), rel1, grid);
        const MomentProfile p2 = moments_profile(ch2.map(), rel2, grid);
        const MomentProfile sum = profile_add({p1, p2});
        const MomentProfile composite =
            moments_profile(compose_tensor({ch1, ch2}).map(), product_relation({rel1, rel2}),
                            grid);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            if (sum.log_mmgf_sup[g].is_infinite() ||
                composite.log_mmgf_sup[g].is_infinite()) {
                worst = std::numeric_limits<double>::infinity();
                continue;
            }
            worst = std::max(worst, std::abs(sum.log_mmgf_sup[g].value() -
                                             composite.log_mmgf_sup[g].value()));
        }
    }
    add_check(r, "max |composite - sum of slots| over all grid lambdas", worst <= 1e-9,
              worst);
    r.details["pairs"] = n_pairs;
    r.details["max_abs_error"] = worst;
    return r;
}

ReproResult reproduce_qma_measured(std::uint64_t seed, int n_channels, int n_povms) {
    ReproResult r;
    r.name = "qma-measured";
    r.pass = true;

    const std::vector<double> grid = {1.0, 2.0, 4.0};
    long violations = 0;
    double worst_slack = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < n_channels; ++c) {
        Rng rng(task_seed(seed, static_cast<std::uint64_t>(c)));
        const KrausChannel ch = seeded_qubit_channel(rng);
        const NeighborRelation rel = seeded_qubit_relation(rng, 1 + rng.uniform_int(2));
        const MomentProfile profile = moments_profile(ch.map(), rel, grid);

        std::vector<std::pair<DensityOperator, DensityOperator>> outputs;
        for (const auto& [rho, sigma] : rel.pairs()) {
            outputs.emplace_back(apply(ch, rho), apply(ch, sigma));
        }
        for (int i = 0; i < n_povms; ++i) {
            const Povm povm = sample_povm(rng, 2, i);
            for (const auto& [out_rho, out_sigma] : outputs) {
                const auto p = induced_distribution(povm, out_rho);
                const auto q = induced_distribution(povm, out_sigma);
                for (double lambda : grid) {
                    const double bound = qma_to_measured_rdp(profile, 1.0 + lambda);
                    for (int reversed = 0; reversed < 2; ++reversed) {
                        const XReal d = classical_renyi(reversed ? q : p, reversed ? p : q,
                                                        1.0 + lambda, 1e-13);
                        if (d.is_infinite()) {
                            ++violations;
                            continue;
                        }
                        const double slack = d.value() - bound;
                        worst_slack = std::max(worst_slack, slack);
                        if (slack > 1e-9) ++violations;
                    }
                }
            }
        }
    }
    add_check(r, "violations of the measured-RDP certificate", violations == 0,
              static_cast<double>(violations));
    add_check(r, "worst (classical Renyi - bound)", worst_slack <= 1e-9, worst_slack);
    r.details["channels"] = n_channels;
    r.details["povms_per_channel"] = n_povms;
    r.details["violations"] = violations;
    r.details["worst_slack"] = worst_slack;
    return r;
}

ReproResult reproduce_locc_basic(std::uint64_t seed, int n_pairs, long trials) {
    ReproResult r;
    r.name = "locc-basic";
    r.scope = Scope::one_way_locc;
    r.pass = true;

    double worst = -std::numeric_limits<double>::infinity();
    long found = 0;
    for (int i = 0; i < n_pairs; ++i) {
        Rng rng(task_seed(seed, static_cast<std::uint64_t>(i)));
        const KrausChannel ch1 = seeded_qubit_channel(rng);
        const KrausChannel ch2 = seeded_qubit_channel(rng);
        const NeighborRelation rel1 = seeded_qubit_relation(rng, 1);
        const NeighborRelation rel2 = seeded_qubit_relation(rng, 1);

        // Certify each slot exactly: delta_i is the worst hockey-stick value
        // at the drawn eps_i.
        const double eps1 = rng.uniform(0.2, 1.0);
        const double eps2 = rng.uniform(0.2, 1.0);
        const Verdict v1 = verify_qdp(ch1.map(), rel1, eps1, 0.0);
        const Verdict v2 = verify_qdp(ch2.map(), rel2, eps2, 0.0);
        const double delta1 = std::max(v1.margin, 0.0);
        const double delta2 = std::max(v2.margin, 0.0);

        const BasicLoccResult bound =
            basic_compose_locc({PrivacyParams{eps1, delta1}, PrivacyParams{eps2, delta2}});

        const ViolationReport report = falsify(
            compose_tensor({ch1, ch2}).map(), product_relation({rel1, rel2}),
            CompositionClaim{bound.composed.eps, std::exp(eps2) * delta1 + delta2},
            TestClass::one_way_locc, {2, 2}, trials, task_seed(seed, 1000 + i));
        worst = std::max(worst, report.worst_margin);
        if (report.found) ++found;
    }
    add_check(r, "channel pairs with a violated composition bound", found == 0,
              static_cast<double>(found));
    add_check(r, "worst margin against e^{eps2} delta1 + delta2", worst <= tol::verdict,
              worst);
    r.details["pairs"] = n_pairs;
    r.details["trials_per_pair"] = trials;
    r.details["worst_margin"] = worst;
    return r;
}

ReproResult reproduce_advanced_pure(std::uint64_t seed) {
    ReproResult r;
    r.name = "advanced-pure";
    r.pass = true;
    (void)seed;

    const std::vector<double> eps(100, 0.1);
    const AdvancedPureResult composed = advanced_compose_pure(eps, 1e-5);
    add_check(r, "eps' for k=100, eps=0.1, delta=1e-5",
              std::abs(composed.composed.eps - 5.29852) <= 1e-4, composed.composed.eps);
    add_check(r, "eps' strictly below basic sum 10",
              composed.composed.eps < composed.basic_eps_sum, composed.basic_eps_sum);
    r.details["eps_prime"] = composed.composed.eps;
    r.details["basic_eps_sum"] = composed.basic_eps_sum;

    // Per-channel Renyi premise on a concrete depolarizing instance:
    // D_sandwiched <= min(eps^2 alpha / 2, eps) for its exact pure-DP eps.
    const KrausChannel depol = depolarizing_channel(0.9);
    const NeighborRelation rel = bit_relation();
    const DensityOperator out_rho = apply(depol, rel.pairs()[0].first);
    const DensityOperator out_sigma = apply(depol, rel.pairs()[0].second);
    const double eps_ch = std::log((2.0 - 0.9) / 0.9);
    double worst = -std::numeric_limits<double>::infinity();
    for (int alpha = 2; alpha <= 10; ++alpha) {
        const double premise = std::min(eps_ch * eps_ch * alpha / 2.0, eps_ch);
        for (int reversed = 0; reversed < 2; ++reversed) {
            const XReal d = d_sandwiched(reversed ? out_sigma : out_rho,
                                         reversed ? out_rho : out_sigma,
                                         static_cast<double>(alpha));
            worst = std::max(worst, d.value() - premise);
        }
    }
    add_check(r, "sandwiched premise slack on depolarizing(0.9)", worst <= 1e-9, worst);
    r.details["premise_worst_slack"] = worst;
    r.details["depolarizing_eps"] = eps_ch;
    return r;
}

ReproResult reproduce_lostar(std::uint64_t seed, long trials) {
    ReproResult r;
    r.name = "lostar";
    r.scope = Scope::lo_star;
    r.pass = true;

    CMat expected = CMat::Zero(4, 4);
    expected(1, 1) = 1.0;
    expected(2, 2) = 1.0;
    const CMat parity = parity_lostar_test().acceptance_operator();
    add_check(r, "parity fixture equals |01><01| + |10><10| exactly",
              (parity - expected).norm() == 0.0, (parity - expected).norm());

    const LoStarResult kov = advanced_compose_lostar_approx(
        {PrivacyParams{0.1, 0.001}, PrivacyParams{0.1, 0.001}, PrivacyParams{0.1, 0.001}},
        0.01);
    add_check(r, "KOV delta_bar for k=3, delta_i=0.001, delta=0.01",
              std::abs(kov.composed.delta - 0.0129670) <= 1e-6, kov.composed.delta);
    r.details["kov_delta_bar"] = kov.composed.delta;

    long found = 0;
    double worst = -std::numeric_limits<double>::infinity();
    const int n_instances = 4;
    for (int i = 0; i < n_instances; ++i) {
        Rng rng(task_seed(seed, static_cast<std::uint64_t>(i)));
        const KrausChannel ch1 = seeded_qubit_channel(rng);
        const KrausChannel ch2 = seeded_qubit_channel(rng);
        const NeighborRelation rel1 = seeded_qubit_relation(rng, 1);
        const NeighborRelation rel2 = seeded_qubit_relation(rng, 1);
        const double eps1 = rng.uniform(0.2, 1.0);
        const double eps2 = rng.uniform(0.2, 1.0);
        const double delta1 = std::max(verify_qdp(ch1.map(), rel1, eps1, 0.0).margin, 0.0);
        const double delta2 = std::max(verify_qdp(ch2.map(), rel2, eps2, 0.0).margin, 0.0);

        const LoStarResult bound = advanced_compose_lostar_approx(
            {PrivacyParams{eps1, delta1}, PrivacyParams{eps2, delta2}}, 0.01);
        const ViolationReport report =
            falsify(compose_tensor({ch1, ch2}).map(), product_relation({rel1, rel2}),
                    CompositionClaim{bound.composed.eps, bound.composed.delta},
                    TestClass::lo_star, {2, 2}, trials / n_instances,
                    task_seed(seed, 2000 + i));
        worst = std::max(worst, report.worst_margin);
        if (report.found) ++found;
    }
    add_check(r, "instances with a violated LO* bound", found == 0,
              static_cast<double>(found));
    add_check(r, "worst margin against the composed (eps_bar, delta_bar)",
              worst <= tol::verdict, worst);
    r.details["instances"] = n_instances;
    r.details["trials_per_instance"] = trials / n_instances;
    r.details["worst_margin"] = worst;
    return r;
}

const std::vector<std::string>& reproduction_names() {
    static const std::vector<std::string> names = {
        "no-go", "locc-basic", "mmgf-additivity", "qma-measured", "advanced-pure", "lostar"};
    return names;
}

ReproResult run_reproduction(const std::string& name, std::uint64_t seed, long trials) {
    if (name == "no-go") return reproduce_no_go(seed);
    if (name == "locc-basic") {
        return trials > 0 ? reproduce_locc_basic(seed, 20, trials)
                          : reproduce_locc_basic(seed);
    }
    if (name == "mmgf-additivity") return reproduce_mmgf_additivity(seed);
    if (name == "qma-measured") return reproduce_qma_measured(seed);
    if (name == "advanced-pure") return reproduce_advanced_pure(seed);
    if (name == "lostar") {
        return trials > 0 ? reproduce_lostar(seed, trials) : reproduce_lostar(seed);
    }
    throw ParameterOutOfRangeError("unknown reproduction name: " + name);
}

Json repro_to_json(const ReproResult& r, std::uint64_t seed) {
    return Json{{"tool", "qdp"},
                {"version", kVersion},
                {"name", r.name},
                {"pass", r.pass},
                {"scope", scope_name(r.scope)},
                {"seed", seed},
                {"details", r.details}};
}

} // namespace qdp
