#include "qdp/divergences.hpp"

#include <algorithm>
#include <cmath>

namespace qdp {

namespace {

// Tr(P_off rho P_off) with P_off the projector off the support of sigma.
double support_leak(const DensityOperator& rho, const Spectrum& sigma_spec) {
    const int n = sigma_spec.dim();
    const CMat p_off = CMat::Identity(n, n) - support_projector(sigma_spec);
    const CMat leak = p_off * rho.mat() * p_off;
    return positive_part_trace(0.5 * (leak + leak.adjoint()));
}

bool support_contained(const DensityOperator& rho, const DensityOperator& sigma) {
    const Spectrum s = hermitian_eig(sigma.mat());
    return support_leak(rho, s) <= tol::supp;
}

// sigma^{-1/2} rho sigma^{-1/2}, Hermitized; meaningful on supp(sigma).
CMat relative_density(const DensityOperator& rho, const DensityOperator& sigma) {
    const CMat inv_sqrt = matrix_fn_on_support(
        sigma.mat(), [](double x) { return 1.0 / std::sqrt(x); }, sigma.mat());
    CMat x = inv_sqrt * rho.mat() * inv_sqrt;
    return 0.5 * (x + CMat(x.adjoint()));
}

double real_trace(const CMat& m) { return m.trace().real(); }

} // namespace

std::vector<double> default_eps_grid() {
    std::vector<double> grid;
    grid.push_back(0.0);
    const double lo = std::log(1e-3);
    const double hi = std::log(10.0);
    const int n = 41;
    for (int i = 0; i < n; ++i) {
        grid.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / (n - 1)));
    }
    return grid;
}

double delta_min(const DensityOperator& rho, const DensityOperator& sigma, double eps) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatchError("delta_min: state dimensions differ");
    }
    if (eps < 0.0) {
        throw ParameterOutOfRangeError("delta_min: eps must be >= 0");
    }
    return positive_part_trace(rho.mat() - std::exp(eps) * sigma.mat());
}

Verdict verify_qdp(const StateMap& ch, const NeighborRelation& rel, double eps, double delta) {
    if (eps < 0.0 || delta < 0.0 || delta > 1.0) {
        throw ParameterOutOfRangeError("verify_qdp: need eps >= 0 and delta in [0, 1]");
    }
    Verdict verdict;
    double worst = -1.0;
    for (int i = 0; i < rel.size(); ++i) {
        const auto& [rho, sigma] = rel.pairs()[i];
        const DensityOperator out_rho = ch(rho);
        const DensityOperator out_sigma = ch(sigma);
        for (int reversed = 0; reversed < 2; ++reversed) {
            const CMat& a = reversed ? out_sigma.mat() : out_rho.mat();
            const CMat& b = reversed ? out_rho.mat() : out_sigma.mat();
            const CMat gap = a - std::exp(eps) * b;
            const double d = positive_part_trace(gap);
            if (d > worst) {
                worst = d;
                verdict.worst_pair_index = i;
                verdict.worst_reversed = reversed != 0;
                verdict.witness = positive_eigenspace_projector(gap);
            }
        }
    }
    verdict.margin = worst - delta;
    verdict.pass = verdict.margin <= tol::verdict;
    return verdict;
}

PrivacyCurve privacy_curve(const StateMap& ch, const NeighborRelation& rel,
                           const std::vector<double>& eps_grid) {
    std::vector<std::pair<CMat, CMat>> outputs;
    outputs.reserve(rel.size());
    for (const auto& [rho, sigma] : rel.pairs()) {
        outputs.emplace_back(ch(rho).mat(), ch(sigma).mat());
    }
    std::vector<double> grid = eps_grid;
    std::sort(grid.begin(), grid.end());
    PrivacyCurve curve;
    for (double eps : grid) {
        double worst = 0.0;
        for (const auto& [a, b] : outputs) {
            worst = std::max(worst, positive_part_trace(a - std::exp(eps) * b));
            worst = std::max(worst, positive_part_trace(b - std::exp(eps) * a));
        }
        curve.points.push_back({eps, std::min(worst, 1.0)});
    }
    return curve;
}

std::optional<CMat> privacy_loss_operator(const DensityOperator& rho,
                                          const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatchError("privacy_loss_operator: state dimensions differ");
    }
    if (!support_contained(rho, sigma)) {
        return std::nullopt;
    }
    const CMat x = relative_density(rho, sigma);
    // log restricted to supp(X) (subset of supp(sigma)); -infinity directions
    // are exactly the off-support block, which later exponentials send to 0.
    return matrix_fn_on_support(x, [](double v) { return std::log(v); }, x);
}

XReal mmgf_states(const DensityOperator& rho, const DensityOperator& sigma, double lambda) {
    if (lambda <= 0.0) {
        throw ParameterOutOfRangeError("mmgf: lambda must be > 0");
    }
    if (!support_contained(rho, sigma)) {
        return XReal::infinity();
    }
    const CMat x = relative_density(rho, sigma);
    const CMat x_pow =
        matrix_fn_on_support(x, [lambda](double v) { return std::pow(v, lambda); }, x);
    return XReal(real_trace(sigma.mat() * x_pow));
}

XReal mmgf(const StateMap& ch, const DensityOperator& rho, const DensityOperator& sigma,
           double lambda) {
    return mmgf_states(ch(rho), ch(sigma), lambda);
}

XReal mmgf_exp_route(const DensityOperator& rho, const DensityOperator& sigma, double lambda) {
    if (lambda <= 0.0) {
        throw ParameterOutOfRangeError("mmgf_exp_route: lambda must be > 0");
    }
    const auto loss = privacy_loss_operator(rho, sigma);
    if (!loss) return XReal::infinity();
    const CMat x = relative_density(rho, sigma);
    const CMat exp_loss = matrix_fn_on_support(
        *loss, [lambda](double v) { return std::exp(lambda * v); }, x);
    const CMat sqrt_sigma = matrix_fn_on_support(
        sigma.mat(), [](double v) { return std::sqrt(v); }, sigma.mat());
    return XReal(real_trace(sqrt_sigma * exp_loss * sqrt_sigma));
}

XReal d_mmgf(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
    if (alpha <= 1.0) {
        throw ParameterOutOfRangeError("d_mmgf: alpha must be > 1");
    }
    const XReal moment = mmgf_states(rho, sigma, alpha);
    if (moment.is_infinite()) return XReal::infinity();
    return XReal(std::log(moment.value()) / (alpha - 1.0));
}

XReal d_petz(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
    if (alpha <= 0.0 || alpha == 1.0) {
        throw ParameterOutOfRangeError("d_petz: alpha must lie in (0,1) or (1,inf)");
    }
    if (alpha > 1.0 && !support_contained(rho, sigma)) {
        return XReal::infinity();
    }
    const CMat rho_pow =
        matrix_fn_on_support(rho.mat(), [alpha](double v) { return std::pow(v, alpha); },
                             rho.mat());
    const CMat sigma_pow = matrix_fn_on_support(
        sigma.mat(), [alpha](double v) { return std::pow(v, 1.0 - alpha); }, sigma.mat());
    const double t = real_trace(rho_pow * sigma_pow);
    if (t <= 0.0) {
        // Orthogonal supports at alpha < 1.
        return XReal::infinity();
    }
    return XReal(std::log(t) / (alpha - 1.0));
}

XReal d_sandwiched(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
    if (alpha <= 1.0) {
        throw ParameterOutOfRangeError("d_sandwiched: alpha must be > 1");
    }
    if (!support_contained(rho, sigma)) {
        return XReal::infinity();
    }
    const double exponent = (1.0 - alpha) / (2.0 * alpha);
    const CMat g = matrix_fn_on_support(
        sigma.mat(), [exponent](double v) { return std::pow(v, exponent); }, sigma.mat());
    CMat b = g * rho.mat() * g;
    b = 0.5 * (b + CMat(b.adjoint()));
    const CMat b_pow =
        matrix_fn_on_support(b, [alpha](double v) { return std::pow(v, alpha); }, b);
    return XReal(std::log(real_trace(b_pow)) / (alpha - 1.0));
}

namespace {

void check_distribution(const std::vector<double>& p, const char* name) {
    double sum = 0.0;
    for (double v : p) {
        if (v < -tol::psd) {
            throw ParameterOutOfRangeError(std::string(name) + ": negative probability");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol::psd) {
        throw ParameterOutOfRangeError(std::string(name) + ": probabilities sum to " +
                                       std::to_string(sum));
    }
}

} // namespace

XReal classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha,
                      double zero_floor) {
    if (p.size() != q.size()) {
        throw DimensionMismatchError("classical_renyi: length mismatch");
    }
    if (alpha <= 0.0 || alpha == 1.0) {
        throw ParameterOutOfRangeError("classical_renyi: alpha must lie in (0,1) or (1,inf)");
    }
    check_distribution(p, "classical_renyi p");
    check_distribution(q, "classical_renyi q");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i] > zero_floor ? p[i] : 0.0;
        const double qi = q[i] > zero_floor ? q[i] : 0.0;
        if (qi == 0.0) {
            // With a positive floor the outcome is dropped outright; exact
            // semantics keep the support-failure infinity.
            if (zero_floor == 0.0 && pi > 0.0 && alpha > 1.0) return XReal::infinity();
            continue;
        }
        if (pi == 0.0) continue;
        sum += std::pow(pi, alpha) * std::pow(qi, 1.0 - alpha);
    }
    if (sum <= 0.0) return XReal::infinity();
    return XReal(std::log(sum) / (alpha - 1.0));
}

XReal classical_kl(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw DimensionMismatchError("classical_kl: length mismatch");
    }
    check_distribution(p, "classical_kl p");
    check_distribution(q, "classical_kl q");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return XReal::infinity();
        sum += p[i] * std::log(p[i] / q[i]);
    }
    return XReal(sum);
}

namespace {

Povm projective_povm_from(const Spectrum& s) {
    std::vector<MeasurementOperator> effects;
    for (int i = 0; i < s.dim(); ++i) {
        effects.emplace_back(CMat(s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint()));
    }
    return Povm(std::move(effects));
}

} // namespace

double measured_renyi_lower(const DensityOperator& rho, const DensityOperator& sigma,
                            double alpha, const PovmSamplerOptions& opts) {
    if (alpha <= 1.0) {
        throw ParameterOutOfRangeError("measured_renyi_lower: alpha must be > 1");
    }
    // Tiny outcome probabilities are dropped from both distributions; each
    // sampled value stays a valid lower bound on the measured divergence.
    const double floor = 1e-13;
    double best = 0.0;
    auto consider = [&](const Povm& povm) {
        const XReal d = classical_renyi(induced_distribution(povm, rho),
                                        induced_distribution(povm, sigma), alpha, floor);
        if (!d.is_infinite()) best = std::max(best, d.value());
    };

    // Deterministic fixtures: the eigenbasis of sigma^{-1/2} rho sigma^{-1/2}
    // (zero off supp(sigma), so its kernel eigenvectors complete the basis)
    // and the eigenbasis of rho - sigma. On commuting full-support pairs the
    // first fixture attains the measured divergence exactly.
    consider(projective_povm_from(hermitian_eig(relative_density(rho, sigma))));
    consider(projective_povm_from(hermitian_eig(rho.mat() - sigma.mat())));

    Rng rng(opts.seed);
    for (int i = 0; i < opts.n_samples; ++i) {
        consider(sample_povm(rng, rho.dim(), i));
    }
    return best;
}

JensenSides jensen_moment_check(const CMat& x_psd, const DensityOperator& tau, double t) {
    if (t < 1.0) {
        throw ParameterOutOfRangeError("jensen_moment_check: t must be >= 1");
    }
    if (x_psd.rows() != tau.dim()) {
        throw DimensionMismatchError("jensen_moment_check: dimension mismatch");
    }
    const CMat x_pow =
        matrix_fn_on_support(x_psd, [t](double v) { return std::pow(v, t); }, x_psd);
    JensenSides sides;
    sides.lhs = std::pow(std::max(real_trace(tau.mat() * x_psd), 0.0), t);
    sides.rhs = real_trace(tau.mat() * x_pow);
    return sides;
}

} // namespace qdp
