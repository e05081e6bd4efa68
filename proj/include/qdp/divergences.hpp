#ifndef QDP_DIVERGENCES_HPP
#define QDP_DIVERGENCES_HPP

#include <optional>
#include <vector>

#include "qdp/states_channels.hpp"

namespace qdp {

/// Real value extended with an explicit +infinity marker. The marker arises
/// exactly when a support condition fails; IEEE infinities never enter
/// matrix code.
class XReal {
public:
    XReal() = default;
    XReal(double v) : value_(v) {} // NOLINT: implicit by design
    static XReal infinity() {
        XReal x;
        x.infinite_ = true;
        return x;
    }

    bool is_infinite() const { return infinite_; }
    double value() const {
        if (infinite_) throw InfiniteMomentError("XReal: value() on +infinity");
        return value_;
    }

    XReal operator+(const XReal& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return XReal(value_ + o.value_);
    }
    bool operator<(const XReal& o) const {
        if (infinite_) return false;
        if (o.infinite_) return true;
        return value_ < o.value_;
    }
    bool operator==(const XReal& o) const {
        if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
        return value_ == o.value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// eps -> smallest feasible delta over a relation; the exact QDP profile.
struct PrivacyCurve {
    struct Point {
        double eps;
        double delta;
    };
    std::vector<Point> points;
};

/// Default eps grid: 0 plus 41 log-spaced points in [1e-3, 10].
std::vector<double> default_eps_grid();

/// Smallest delta making Tr(M rho) <= e^eps Tr(M sigma) + delta hold for all
/// 0 <= M <= I: the positive part trace of rho - e^eps sigma.
double delta_min(const DensityOperator& rho, const DensityOperator& sigma, double eps);

struct Verdict {
    bool pass = false;
    int worst_pair_index = -1;
    bool worst_reversed = false; // orientation (sigma, rho) of the listed pair
    double margin = 0.0;         // worst delta_min minus requested delta
    CMat witness;                // projector attaining the worst delta_min
};

/// Exact (eps, delta)-QDP decision for a channel over a finite relation;
/// both orientations of every pair are checked.
Verdict verify_qdp(const StateMap& ch, const NeighborRelation& rel, double eps, double delta);

PrivacyCurve privacy_curve(const StateMap& ch, const NeighborRelation& rel,
                           const std::vector<double>& eps_grid = default_eps_grid());

/// log(sigma^{-1/2} rho sigma^{-1/2}) on the support where it is finite;
/// nullopt when supp(rho) is not contained in supp(sigma).
std::optional<CMat> privacy_loss_operator(const DensityOperator& rho,
                                          const DensityOperator& sigma);

/// Tr[sigma (sigma^{-1/2} rho sigma^{-1/2})^lambda], +infinity when the
/// support condition fails.
XReal mmgf_states(const DensityOperator& rho, const DensityOperator& sigma, double lambda);
XReal mmgf(const StateMap& ch, const DensityOperator& rho, const DensityOperator& sigma,
           double lambda);

/// Same quantity through the privacy-loss operator:
/// Tr[sigma^{1/2} exp(lambda L) sigma^{1/2}] with exp(-infinity) = 0 off the
/// support of sigma^{-1/2} rho sigma^{-1/2}. Used to cross-check mmgf_states.
XReal mmgf_exp_route(const DensityOperator& rho, const DensityOperator& sigma, double lambda);

/// Renyi-type divergence induced by the matrix moment-generating function,
/// normalized so that order alpha uses the alpha-th moment:
/// (1/(alpha-1)) log Tr[sigma X^alpha]. Collapses to the classical Renyi
/// divergence of the same order on commuting pairs. Does not satisfy a
/// data-processing inequality in general.
XReal d_mmgf(const DensityOperator& rho, const DensityOperator& sigma, double alpha);

/// Petz-Renyi divergence (1/(alpha-1)) log Tr[rho^alpha sigma^(1-alpha)],
/// alpha in (0,1) or (1, inf).
XReal d_petz(const DensityOperator& rho, const DensityOperator& sigma, double alpha);

/// Sandwiched Renyi divergence, alpha > 1.
XReal d_sandwiched(const DensityOperator& rho, const DensityOperator& sigma, double alpha);

/// Classical Renyi divergence. Entries at or below zero_floor are treated as
/// zero outcomes (exact semantics with the default floor of 0).
XReal classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha,
                      double zero_floor = 0.0);
XReal classical_kl(const std::vector<double>& p, const std::vector<double>& q);

struct PovmSamplerOptions {
    int n_samples = 100;
    std::uint64_t seed = 42;
};

/// Certified lower bound on the measured Renyi divergence: max over sampled
/// POVMs of the classical Renyi divergence of induced outcome distributions.
/// The eigenbases of sigma^{-1/2} rho sigma^{-1/2} and of rho - sigma are
/// always included, so the bound is exact on commuting full-support pairs.
double measured_renyi_lower(const DensityOperator& rho, const DensityOperator& sigma,
                            double alpha, const PovmSamplerOptions& opts = {});

/// Both sides of (Tr(tau X))^t <= Tr(tau X^t) for PSD X and a state tau.
struct JensenSides {
    double lhs;
    double rhs;
};
JensenSides jensen_moment_check(const CMat& x_psd, const DensityOperator& tau, double t);

} // namespace qdp

#endif
