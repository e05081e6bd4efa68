#include "qdp/accountant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdp {

const char* scope_name(Scope s) {
    switch (s) {
        case Scope::all_povm: return "all-povm";
        case Scope::one_way_locc: return "one-way-locc";
        case Scope::lo_star: return "lo-star";
    }
    return "unknown";
}

std::vector<double> default_lambda_grid() {
    return {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 8.0, 16.0};
}

XReal privacy_loss_moment(const StateMap& ch, const DensityOperator& rho,
                          const DensityOperator& sigma, double lambda) {
    if (lambda <= 0.0) {
        throw ParameterOutOfRangeError("privacy_loss_moment: lambda must be > 0");
    }
    const XReal m = mmgf_states(ch(rho), ch(sigma), 1.0 + lambda);
    if (m.is_infinite()) return XReal::infinity();
    return XReal(std::log(m.value()));
}

MomentProfile moments_profile(const StateMap& ch, const NeighborRelation& rel,
                              const std::vector<double>& lambdas) {
    std::vector<std::pair<DensityOperator, DensityOperator>> outputs;
    outputs.reserve(rel.size());
    for (const auto& [rho, sigma] : rel.pairs()) {
        outputs.emplace_back(ch(rho), ch(sigma));
    }
    MomentProfile profile;
    profile.lambdas = lambdas;
    for (double lambda : lambdas) {
        if (lambda <= 0.0) {
            throw ParameterOutOfRangeError("moments_profile: lambdas must be > 0");
        }
        bool infinite = false;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [out_rho, out_sigma] : outputs) {
            for (int reversed = 0; reversed < 2 && !infinite; ++reversed) {
                const DensityOperator& a = reversed ? out_sigma : out_rho;
                const DensityOperator& b = reversed ? out_rho : out_sigma;
                const XReal m = mmgf_states(a, b, 1.0 + lambda);
                if (m.is_infinite()) {
                    infinite = true;
                } else {
                    best = std::max(best, std::log(m.value()));
                }
            }
            if (infinite) break;
        }
        profile.log_mmgf_sup.push_back(infinite ? XReal::infinity() : XReal(best));
    }
    return profile;
}

MomentProfile profile_add(const std::vector<MomentProfile>& profiles) {
    if (profiles.empty()) {
        throw ParameterOutOfRangeError("profile_add: empty profile list");
    }
    const auto& grid = profiles.front().lambdas;
    for (const auto& p : profiles) {
        if (p.lambdas.size() != grid.size()) {
            throw GridMismatchError("profile_add: lambda grids have different lengths");
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (p.lambdas[i] != grid[i]) {
                throw GridMismatchError("profile_add: lambda grids are not aligned");
            }
        }
    }
    MomentProfile out;
    out.lambdas = grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        XReal sum(0.0);
        for (const auto& p : profiles) sum = sum + p.log_mmgf_sup[i];
        out.log_mmgf_sup.push_back(sum);
    }
    return out;
}

double qma_to_measured_rdp(const MomentProfile& profile, double alpha) {
    if (alpha <= 1.0) {
        throw ParameterOutOfRangeError("qma_to_measured_rdp: alpha must be > 1");
    }
    const double lambda = alpha - 1.0;
    for (std::size_t i = 0; i < profile.lambdas.size(); ++i) {
        if (std::abs(profile.lambdas[i] - lambda) <= 1e-12) {
            const XReal& entry = profile.log_mmgf_sup[i];
            if (entry.is_infinite()) {
                throw InfiniteMomentError("qma_to_measured_rdp: moment at lambda is +infinity");
            }
            return entry.value() / lambda;
        }
    }
    throw GridMismatchError("qma_to_measured_rdp: alpha - 1 not on the profile grid");
}

PrivacyParams rdp_to_dp(double eps_alpha, double alpha, double delta) {
    if (alpha <= 1.0) {
        throw ParameterOutOfRangeError("rdp_to_dp: alpha must be > 1");
    }
    if (delta <= 0.0 || delta >= 1.0) {
        throw InvalidDeltaError("rdp_to_dp: delta must lie in (0, 1)");
    }
    return {eps_alpha + std::log(1.0 / delta) / (alpha - 1.0), delta};
}

MomentCurveFit fit_moment_curve(const MomentProfile& profile,
                                std::optional<double> lambda_bar) {
    if (profile.lambdas.size() < 2) {
        throw FitError("fit_moment_curve: need at least two grid points");
    }
    std::vector<std::size_t> order(profile.lambdas.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return profile.lambdas[a] < profile.lambdas[b];
    });

    double lbar;
    if (lambda_bar) {
        lbar = *lambda_bar;
    } else {
        // Largest grid point with a finite entry.
        lbar = 0.0;
        for (std::size_t i : order) {
            if (!profile.log_mmgf_sup[i].is_infinite()) lbar = profile.lambdas[i];
        }
        if (lbar <= 0.0) {
            throw FitError("fit_moment_curve: no finite moment entries");
        }
    }

    // eps from the lambda -> 0 end (the two smallest usable grid points).
    double eps_sq = 0.0;
    int used = 0;
    for (std::size_t i : order) {
        if (used >= 2) break;
        const double lambda = profile.lambdas[i];
        if (lambda > lbar) break;
        const XReal& entry = profile.log_mmgf_sup[i];
        if (entry.is_infinite()) {
            throw FitError("fit_moment_curve: infinite moment inside the fit range");
        }
        eps_sq = std::max(eps_sq, 2.0 * std::max(entry.value(), 0.0) / (lambda * lambda));
        ++used;
    }
    if (used == 0) {
        throw FitError("fit_moment_curve: no grid points at or below lambda_bar");
    }
    double eps = std::sqrt(eps_sq);
    if (eps > 1.0) {
        throw FitError("fit_moment_curve: fitted eps " + std::to_string(eps) +
                       " exceeds 1; the quadratic envelope hypothesis fails");
    }

    // Smallest nonnegative c certifying the envelope at every grid point.
    double c = 0.0;
    for (std::size_t i : order) {
        const double lambda = profile.lambdas[i];
        if (lambda > lbar) continue;
        const XReal& entry = profile.log_mmgf_sup[i];
        if (entry.is_infinite()) {
            throw FitError("fit_moment_curve: infinite moment inside the fit range");
        }
        const double excess = entry.value() - 0.5 * eps_sq * lambda * lambda;
        if (excess > 0.0) c = std::max(c, excess / (lambda * lambda * lambda));
    }
    if (!std::isfinite(c)) {
        throw FitError("fit_moment_curve: no finite cubic coefficient certifies the envelope");
    }
    return MomentCurveFit{eps, c, 1.0 + lbar};
}

QmaAdvancedResult qma_advanced_compose(const std::vector<MomentCurveFit>& fits, double delta) {
    if (delta <= 0.0 || delta >= 1.0) {
        throw InvalidDeltaError("qma_advanced_compose: delta must lie in (0, 1)");
    }
    if (fits.empty()) {
        throw ParameterOutOfRangeError("qma_advanced_compose: empty fit list");
    }
    double s = 0.0;
    double c = 0.0;
    double lbar = std::numeric_limits<double>::infinity();
    for (const auto& f : fits) {
        if (f.eps < 0.0 || f.eps > 1.0 || f.c < 0.0 || f.alpha_max <= 1.0) {
            throw ParameterOutOfRangeError("qma_advanced_compose: invalid fit parameters");
        }
        s += f.eps * f.eps;
        c += f.c;
        lbar = std::min(lbar, f.alpha_max - 1.0);
    }
    const double b = std::log(1.0 / delta);
    const double lstar = s > 0.0 ? std::sqrt(2.0 * b / s)
                                 : std::numeric_limits<double>::infinity();
    const double lhat = std::min(lbar, lstar);

    QmaAdvancedResult result;
    result.lambda_used = lhat;
    result.lambda_star = lstar;
    result.composed.eps = 0.5 * s * lhat + c * lhat * lhat + b / lhat;
    result.composed.delta = delta;
    if (s > 0.0) {
        result.explicit_bound = std::sqrt(2.0 * s * b) + 2.0 * c * b / s +
                                0.5 * s * std::max(lbar - lstar, 0.0);
    } else {
        result.explicit_bound = result.composed.eps;
    }
    return result;
}

BasicLoccResult basic_compose_locc(const std::vector<PrivacyParams>& params) {
    if (params.size() != 2) {
        throw ParameterOutOfRangeError("basic_compose_locc: exactly two channels expected");
    }
    const auto& [e1, d1] = params[0];
    const auto& [e2, d2] = params[1];
    if (e1 < 0.0 || e2 < 0.0 || d1 < 0.0 || d2 < 0.0 || d1 > 1.0 || d2 > 1.0) {
        throw ParameterOutOfRangeError("basic_compose_locc: parameters out of range");
    }
    BasicLoccResult result;
    result.composed.eps = e1 + e2;
    result.composed.delta = std::min(std::exp(e2) * d1 + d2, d1 + std::exp(e1) * d2);
    const double eps_max = std::max(e1, e2);
    result.delta_corollary = std::exp(eps_max) * (d1 + d2);
    if (eps_max <= 1.0) {
        result.delta_small_eps = (1.0 + 2.0 * eps_max) * (d1 + d2);
    }
    return result;
}

AdvancedPureResult advanced_compose_pure(const std::vector<double>& eps_list, double delta) {
    if (delta <= 0.0 || delta > 1.0) {
        throw InvalidDeltaError("advanced_compose_pure: delta must lie in (0, 1]");
    }
    double zeta = 0.0;
    double basic = 0.0;
    for (double e : eps_list) {
        if (e < 0.0 || e > 1.0) {
            throw ParameterOutOfRangeError(
                "advanced_compose_pure: every eps_i must lie in [0, 1]");
        }
        zeta += 0.5 * e * e;
        basic += e;
    }
    AdvancedPureResult result;
    result.basic_eps_sum = basic;
    result.composed.eps = zeta + 2.0 * std::sqrt(zeta * std::log(1.0 / delta));
    result.composed.delta = delta;
    return result;
}

namespace {

double kl_rate(double eps) {
    // eps (e^eps - 1)/(e^eps + 1); the tight KL bound for an eps-DP pair.
    return eps * (std::exp(eps) - 1.0) / (std::exp(eps) + 1.0);
}

} // namespace

LoStarResult advanced_compose_lostar_pure(const std::vector<double>& eps_list, double delta) {
    if (delta <= 0.0) {
        throw InvalidDeltaError("advanced_compose_lostar_pure: delta must be > 0");
    }
    double mu = 0.0;
    double s = 0.0;
    for (double e : eps_list) {
        if (e < 0.0) {
            throw ParameterOutOfRangeError("advanced_compose_lostar_pure: eps_i must be >= 0");
        }
        mu += kl_rate(e);
        s += e * e;
    }
    LoStarResult result;
    result.composed.eps = mu + std::sqrt(2.0 * std::log(1.0 / delta) * s);
    result.composed.delta = delta;
    return result;
}

LoStarResult advanced_compose_lostar_approx(const std::vector<PrivacyParams>& params,
                                            double delta) {
    if (delta <= 0.0 || delta >= 1.0) {
        throw InvalidDeltaError("advanced_compose_lostar_approx: delta must lie in (0, 1)");
    }
    if (params.empty()) {
        throw ParameterOutOfRangeError("advanced_compose_lostar_approx: empty parameter list");
    }
    double basic = 0.0;
    double mu = 0.0;
    double s = 0.0;
    double delta_keep = 1.0 - delta;
    for (const auto& [e, d] : params) {
        if (e <= 0.0) {
            throw ParameterOutOfRangeError("advanced_compose_lostar_approx: eps_i must be > 0");
        }
        if (d < 0.0 || d > 1.0) {
            throw ParameterOutOfRangeError(
                "advanced_compose_lostar_approx: delta_i must lie in [0, 1]");
        }
        basic += e;
        mu += kl_rate(e);
        s += e * e;
        delta_keep *= 1.0 - d;
    }
    const double log_term = std::min(std::log(1.0 / delta),
                                     std::log(std::exp(1.0) + s / delta));
    LoStarResult result;
    result.composed.eps = std::min(basic, mu + std::sqrt(2.0 * s * log_term));
    result.composed.delta = 1.0 - delta_keep;
    return result;
}

} // namespace qdp
