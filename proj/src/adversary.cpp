#include "qdp/adversary.hpp"

#include <cmath>
#include <limits>

namespace qdp {

CMat OneWayLoccTest::acceptance_operator() const {
    const int d1 = first_povm.dim();
    const int d2 = conditional_effects.front().dim();
    CMat m = CMat::Zero(d1 * d2, d1 * d2);
    for (std::size_t t = 0; t < conditional_effects.size(); ++t) {
        m += tensor(first_povm.effects()[t].mat(), conditional_effects[t].mat(),
                    d1 * d2);
    }
    return m;
}

double OneWayLoccTest::factorized_acceptance(const CMat& xi1, const CMat& xi2) const {
    double sum = 0.0;
    for (std::size_t t = 0; t < conditional_effects.size(); ++t) {
        sum += (first_povm.effects()[t].mat() * xi1).trace().real() *
               (conditional_effects[t].mat() * xi2).trace().real();
    }
    return sum;
}

OneWayLoccTest sample_oneway_locc(Rng& rng, const std::vector<int>& dims, int outcomes) {
    if (dims.size() != 2) {
        throw DimensionMismatchError("sample_oneway_locc: exactly two subsystems expected");
    }
    if (outcomes < 1) {
        throw ParameterOutOfRangeError("sample_oneway_locc: outcomes must be >= 1");
    }
    OneWayLoccTest test{
        outcomes == dims[0] ? random_projective_povm(rng, dims[0])
                            : random_resolved_povm(rng, dims[0], outcomes),
        {}};
    test.conditional_effects.reserve(outcomes);
    for (int t = 0; t < outcomes; ++t) {
        test.conditional_effects.push_back(random_effect(rng, dims[1]));
    }
    return test;
}

namespace {

int table_size(const std::vector<Povm>& povms) {
    int n = 1;
    for (const auto& p : povms) n *= p.size();
    return n;
}

} // namespace

CMat LoStarTest::acceptance_operator() const {
    int total_dim = 1;
    for (const auto& p : local_povms) total_dim *= p.dim();
    CMat m = CMat::Zero(total_dim, total_dim);
    const int n = table_size(local_povms);
    for (int z = 0; z < n; ++z) {
        if (weights[z] == 0.0) continue;
        // Decode the outcome tuple row-major (last subsystem fastest).
        int rem = z;
        std::vector<int> outcome(local_povms.size());
        for (int i = static_cast<int>(local_povms.size()) - 1; i >= 0; --i) {
            outcome[i] = rem % local_povms[i].size();
            rem /= local_povms[i].size();
        }
        CMat term = local_povms[0].effects()[outcome[0]].mat();
        for (std::size_t i = 1; i < local_povms.size(); ++i) {
            term = tensor(term, local_povms[i].effects()[outcome[i]].mat(), total_dim);
        }
        m += weights[z] * term;
    }
    return m;
}

double LoStarTest::classical_expectation(const std::vector<DensityOperator>& locals) const {
    if (locals.size() != local_povms.size()) {
        throw DimensionMismatchError("LoStarTest: one local state per subsystem expected");
    }
    std::vector<std::vector<double>> dist;
    dist.reserve(locals.size());
    for (std::size_t i = 0; i < locals.size(); ++i) {
        dist.push_back(induced_distribution(local_povms[i], locals[i]));
    }
    const int n = table_size(local_povms);
    double expectation = 0.0;
    for (int z = 0; z < n; ++z) {
        int rem = z;
        double prob = 1.0;
        for (int i = static_cast<int>(local_povms.size()) - 1; i >= 0; --i) {
            prob *= dist[i][rem % local_povms[i].size()];
            rem /= local_povms[i].size();
        }
        expectation += weights[z] * prob;
    }
    return expectation;
}

LoStarTest sample_lostar(Rng& rng, const std::vector<int>& dims, bool extremal_weights) {
    LoStarTest test;
    for (int d : dims) {
        test.local_povms.push_back(random_projective_povm(rng, d));
    }
    const int n = table_size(test.local_povms);
    test.weights.reserve(n);
    for (int z = 0; z < n; ++z) {
        const double u = rng.uniform();
        test.weights.push_back(extremal_weights ? (u < 0.5 ? 0.0 : 1.0) : u);
    }
    return test;
}

LoStarTest parity_lostar_test() {
    std::vector<MeasurementOperator> basis;
    basis.emplace_back(CMat(DensityOperator::computational(2, 0).mat()));
    basis.emplace_back(CMat(DensityOperator::computational(2, 1).mat()));
    const Povm computational(basis);
    LoStarTest test;
    test.local_povms = {computational, computational};
    test.weights = {0.0, 1.0, 1.0, 0.0}; // accept iff z1 != z2
    return test;
}

const char* test_class_name(TestClass c) {
    switch (c) {
        case TestClass::unrestricted: return "unrestricted";
        case TestClass::one_way_locc: return "one-way-locc";
        case TestClass::lo_star: return "lo-star";
    }
    return "unknown";
}

namespace {

struct PairOutputs {
    CMat rho_out;
    CMat sigma_out;
};

} // namespace

ViolationReport falsify(const StateMap& composite, const NeighborRelation& rel,
                        const CompositionClaim& claim, TestClass test_class,
                        const std::vector<int>& out_dims, long trials, std::uint64_t seed) {
    if (claim.eps < 0.0 || claim.delta < 0.0) {
        throw ParameterOutOfRangeError("falsify: claim parameters out of range");
    }
    int total_dim = 1;
    for (int d : out_dims) total_dim *= d;
    if (total_dim != composite.dim_out) {
        throw DimensionMismatchError("falsify: out_dims do not factor the channel output");
    }

    std::vector<PairOutputs> outputs;
    outputs.reserve(rel.size());
    for (const auto& [rho, sigma] : rel.pairs()) {
        outputs.push_back({composite(rho).mat(), composite(sigma).mat()});
    }

    ViolationReport report;
    report.trials = trials;
    report.seed = seed;
    report.worst_margin = -std::numeric_limits<double>::infinity();
    const double scale = std::exp(claim.eps);

    auto probe = [&](const CMat& m, long trial) {
        for (int i = 0; i < static_cast<int>(outputs.size()); ++i) {
            for (int reversed = 0; reversed < 2; ++reversed) {
                const CMat& a = reversed ? outputs[i].sigma_out : outputs[i].rho_out;
                const CMat& b = reversed ? outputs[i].rho_out : outputs[i].sigma_out;
                const double margin = (m * a).trace().real() -
                                      scale * (m * b).trace().real() - claim.delta;
                if (margin > report.worst_margin) {
                    report.worst_margin = margin;
                    report.worst_pair_index = i;
                    report.worst_reversed = reversed != 0;
                    report.worst_trial = trial;
                    report.witness = m;
                }
            }
        }
    };

    // Deterministic fixtures first, so headline counterexamples never depend
    // on sampling luck.
    for (const auto& out : outputs) {
        switch (test_class) {
            case TestClass::unrestricted: {
                probe(positive_eigenspace_projector(out.rho_out - scale * out.sigma_out), -1);
                break;
            }
            case TestClass::one_way_locc: {
                if (out_dims.size() == 2) {
                    const CMat d1 =
                        partial_trace(out.rho_out - scale * out.sigma_out, out_dims, {0});
                    const CMat d2 =
                        partial_trace(out.rho_out - scale * out.sigma_out, out_dims, {1});
                    probe(tensor(positive_eigenspace_projector(d1),
                                 positive_eigenspace_projector(d2), total_dim),
                          -1);
                }
                break;
            }
            case TestClass::lo_star: {
                if (out_dims == std::vector<int>{2, 2}) {
                    probe(parity_lostar_test().acceptance_operator(), -1);
                }
                // Likelihood-ratio weights over the local eigenbases of the
                // marginal differences.
                LoStarTest lr;
                std::vector<std::vector<double>> p_loc, q_loc;
                for (std::size_t s = 0; s < out_dims.size(); ++s) {
                    std::vector<int> keep{static_cast<int>(s)};
                    const CMat diff = partial_trace(out.rho_out - out.sigma_out, out_dims, keep);
                    const Spectrum basis = hermitian_eig(diff);
                    std::vector<MeasurementOperator> effects;
                    std::vector<double> p_i, q_i;
                    const CMat rho_m = partial_trace(out.rho_out, out_dims, keep);
                    const CMat sigma_m = partial_trace(out.sigma_out, out_dims, keep);
                    for (int k = 0; k < basis.dim(); ++k) {
                        const CMat proj =
                            basis.eigenvectors.col(k) * basis.eigenvectors.col(k).adjoint();
                        effects.emplace_back(proj);
                        p_i.push_back(std::max((proj * rho_m).trace().real(), 0.0));
                        q_i.push_back(std::max((proj * sigma_m).trace().real(), 0.0));
                    }
                    lr.local_povms.emplace_back(std::move(effects));
                    p_loc.push_back(std::move(p_i));
                    q_loc.push_back(std::move(q_i));
                }
                const int n = table_size(lr.local_povms);
                lr.weights.assign(n, 0.0);
                for (int z = 0; z < n; ++z) {
                    int rem = z;
                    double p = 1.0, q = 1.0;
                    for (int i = static_cast<int>(lr.local_povms.size()) - 1; i >= 0; --i) {
                        const int o = rem % lr.local_povms[i].size();
                        rem /= lr.local_povms[i].size();
                        p *= p_loc[i][o];
                        q *= q_loc[i][o];
                    }
                    lr.weights[z] = p > scale * q ? 1.0 : 0.0;
                }
                probe(lr.acceptance_operator(), -1);
                break;
            }
        }
    }

    for (long trial = 0; trial < trials; ++trial) {
        Rng rng(task_seed(seed, static_cast<std::uint64_t>(trial)));
        switch (test_class) {
            case TestClass::unrestricted:
                probe(random_effect(rng, total_dim).mat(), trial);
                break;
            case TestClass::one_way_locc: {
                if (out_dims.size() != 2) {
                    throw DimensionMismatchError(
                        "falsify: one-way LOCC tests need exactly two output subsystems");
                }
                const auto test = sample_oneway_locc(rng, out_dims, out_dims[0]);
                probe(test.acceptance_operator(), trial);
                break;
            }
            case TestClass::lo_star: {
                const auto test = sample_lostar(rng, out_dims, trial % 16 == 15);
                probe(test.acceptance_operator(), trial);
                break;
            }
        }
    }

    report.found = report.worst_margin > tol::verdict;
    return report;
}

} // namespace qdp
