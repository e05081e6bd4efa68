#ifndef QDP_ACCOUNTANT_HPP
#define QDP_ACCOUNTANT_HPP

#include <optional>
#include <vector>

#include "qdp/divergences.hpp"

namespace qdp {

/// Adversary class a composed guarantee holds against. Reports must never
/// present a restricted-adversary guarantee as unrestricted.
enum class Scope { all_povm, one_way_locc, lo_star };

const char* scope_name(Scope s);

struct PrivacyParams {
    double eps = 0.0;
    double delta = 0.0;
};

/// Default lambda grid for moment accounting; conversions only use certified
/// grid values, never interpolation.
std::vector<double> default_lambda_grid();

/// Privacy-loss moments of a channel over a relation: entry j is the exact
/// max over the relation's pairs (both orientations) of
/// log Tr[A(sigma) (A(sigma)^{-1/2} A(rho) A(sigma)^{-1/2})^{1 + lambda_j}],
/// the lambda_j-th moment of the privacy loss. +infinity propagates from
/// support failures.
struct MomentProfile {
    std::vector<double> lambdas;
    std::vector<XReal> log_mmgf_sup;
};

/// The lambda-th privacy-loss moment for one ordered pair (no sup).
XReal privacy_loss_moment(const StateMap& ch, const DensityOperator& rho,
                          const DensityOperator& sigma, double lambda);

MomentProfile moments_profile(const StateMap& ch, const NeighborRelation& rel,
                              const std::vector<double>& lambdas = default_lambda_grid());

/// Pointwise sum over aligned grids; equals the profile of the tensor-product
/// channel over the product relation.
MomentProfile profile_add(const std::vector<MomentProfile>& profiles);

/// Measured Renyi DP level certified by a moment profile:
/// eps_alpha = profile(alpha - 1) / (alpha - 1). The grid must contain
/// alpha - 1 exactly.
double qma_to_measured_rdp(const MomentProfile& profile, double alpha);

/// Renyi DP to approximate DP: (eps_alpha + log(1/delta)/(alpha-1), delta).
PrivacyParams rdp_to_dp(double eps_alpha, double alpha, double delta);

/// Certified quadratic-cubic envelope of a moment profile:
/// profile(lambda) <= eps^2 lambda^2 / 2 + c lambda^3 for all grid
/// lambda <= alpha_max - 1.
struct MomentCurveFit {
    double eps = 0.0;
    double c = 0.0;
    double alpha_max = 2.0;
};

/// Fit eps from the two smallest grid points, then pick the smallest
/// nonnegative c making the envelope hold at every grid lambda up to
/// alpha_max - 1. Throws FitError when no finite envelope exists.
MomentCurveFit fit_moment_curve(const MomentProfile& profile,
                                std::optional<double> lambda_bar = std::nullopt);

struct QmaAdvancedResult {
    PrivacyParams composed;
    double lambda_used = 0.0;
    double lambda_star = 0.0;
    double explicit_bound = 0.0; // sqrt(2 S log(1/delta)) + 2 C log(1/delta)/S + (S/2)(lbar-l*)_+
    Scope scope = Scope::all_povm;
};

/// Advanced composition from certified moment envelopes:
/// eps(lambda) = S lambda / 2 + C lambda^2 + log(1/delta)/lambda evaluated at
/// lambda_hat = min(lambda_bar, sqrt(2 log(1/delta)/S)).
QmaAdvancedResult qma_advanced_compose(const std::vector<MomentCurveFit>& fits, double delta);

struct BasicLoccResult {
    PrivacyParams composed;
    double delta_corollary = 0.0;               // e^{eps_max} (delta_1 + delta_2)
    std::optional<double> delta_small_eps;      // (1 + 2 eps_max)(delta_1 + delta_2)
    Scope scope = Scope::one_way_locc;
};

/// Basic composition of two channels, valid against one-way LOCC tests on
/// product neighbors: eps = eps_1 + eps_2,
/// delta = min(e^{eps_2} delta_1 + delta_2, delta_1 + e^{eps_1} delta_2).
BasicLoccResult basic_compose_locc(const std::vector<PrivacyParams>& params);

struct AdvancedPureResult {
    PrivacyParams composed;
    double basic_eps_sum = 0.0;
    Scope scope = Scope::all_povm;
};

/// Advanced composition of (eps_i, 0)-QDP channels against arbitrary POVMs:
/// eps' = zeta + 2 sqrt(zeta log(1/delta)) with zeta = sum eps_i^2 / 2.
/// Requires every eps_i in [0, 1].
AdvancedPureResult advanced_compose_pure(const std::vector<double>& eps_list, double delta);

struct LoStarResult {
    PrivacyParams composed;
    Scope scope = Scope::lo_star;
};

/// LO* advanced composition for (eps_i, 0)-QDP channels:
/// eps_bar = sum eps_i (e^{eps_i}-1)/(e^{eps_i}+1) + sqrt(2 log(1/delta) sum eps_i^2).
LoStarResult advanced_compose_lostar_pure(const std::vector<double>& eps_list, double delta);

/// LO* advanced composition for (eps_i, delta_i)-QDP channels (KOV form):
/// eps_bar = min(sum eps_i, sum eps_i (e^{eps_i}-1)/(e^{eps_i}+1)
///               + sqrt(2 sum eps_i^2 min(log(1/delta), log(e + sum eps_i^2/delta))))
/// delta_bar = 1 - (1-delta) prod (1-delta_i).
LoStarResult advanced_compose_lostar_approx(const std::vector<PrivacyParams>& params,
                                            double delta);

} // namespace qdp

#endif
