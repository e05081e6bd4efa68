#ifndef QDP_STATES_CHANNELS_HPP
#define QDP_STATES_CHANNELS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qdp/linops.hpp"
#include "qdp/random.hpp"

namespace qdp {

/// PSD, trace-one operator. Validates on construction.
class DensityOperator {
public:
    explicit DensityOperator(CMat mat, std::string label = {});

    static DensityOperator pure(const CVec& ket, std::string label = {});
    static DensityOperator computational(int dim, int basis_index);
    static DensityOperator maximally_mixed(int dim);

    const CMat& mat() const { return mat_; }
    const std::string& label() const { return label_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

private:
    CMat mat_;
    std::string label_;
};

/// Two-outcome test effect: Hermitian with spectrum in [0, 1].
class MeasurementOperator {
public:
    explicit MeasurementOperator(CMat mat);

    const CMat& mat() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

private:
    CMat mat_;
};

/// Finite POVM: effects sum to the identity.
class Povm {
public:
    explicit Povm(std::vector<MeasurementOperator> effects);

    const std::vector<MeasurementOperator>& effects() const { return effects_; }
    int size() const { return static_cast<int>(effects_.size()); }
    int dim() const { return effects_.front().dim(); }

private:
    std::vector<MeasurementOperator> effects_;
};

/// Outcome distribution of a POVM on a state (tiny negatives clamped to 0).
std::vector<double> induced_distribution(const Povm& povm, const DensityOperator& state);

class KrausChannel;

/// Channel-shaped object: some compositions in this library (factorized,
/// marginal) are not linear in the input, so verifiers are written against
/// this transformer interface. KrausChannel converts into it losslessly.
struct StateMap {
    int dim_in = 0;
    int dim_out = 0;
    std::string label;
    std::function<DensityOperator(const DensityOperator&)> fn;

    DensityOperator operator()(const DensityOperator& rho) const;
};

/// CPTP map in Kraus form.
class KrausChannel {
public:
    KrausChannel(std::vector<CMat> kraus, std::string label = {});

    const std::vector<CMat>& kraus() const { return kraus_; }
    const std::string& label() const { return label_; }
    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }

    StateMap map() const;

private:
    std::vector<CMat> kraus_;
    std::string label_;
    int dim_in_ = 0;
    int dim_out_ = 0;
};

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);

/// Channel action on an arbitrary operator (same Kraus sum, no state checks).
CMat apply_raw(const KrausChannel& ch, const CMat& x);

/// Tensor-product composition: Kraus set is all tensor products of one Kraus
/// operator per factor.
KrausChannel compose_tensor(const std::vector<KrausChannel>& chs,
                            int max_dim = tol::max_tensor_dim);

/// Factorized composition rho -> A_1(rho) x ... x A_m(rho). Not linear in
/// rho, hence returned as a transformer.
StateMap compose_factorized(const std::vector<KrausChannel>& chs,
                            int max_dim = tol::max_tensor_dim);

/// rho -> Tr_{discarded}(A(rho)) as a transformer.
StateMap marginal_channel(const KrausChannel& ch, const std::vector<int>& dims,
                          const std::vector<int>& keep);

/// Same marginal as an explicit Kraus channel (the partial trace of a Kraus
/// channel is again CPTP); useful where a serializable channel is needed.
KrausChannel marginal_kraus_channel(const KrausChannel& ch, const std::vector<int>& dims,
                                    const std::vector<int>& keep);

/// Declared neighboring input pairs. Treated as symmetric: verifiers evaluate
/// both orientations of every listed pair.
class NeighborRelation {
public:
    using Pair = std::pair<DensityOperator, DensityOperator>;

    explicit NeighborRelation(std::vector<Pair> pairs);

    const std::vector<Pair>& pairs() const { return pairs_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    int dim() const { return pairs_.front().first.dim(); }

private:
    std::vector<Pair> pairs_;
};

/// Product-neighbor construction: all combinations (x_i rho_i, x_i sigma_i)
/// of one pair per slot.
NeighborRelation product_relation(const std::vector<NeighborRelation>& slots,
                                  int max_dim = tol::max_tensor_dim);

// --- channel zoo ---------------------------------------------------------

KrausChannel identity_channel(int dim);

/// Qubit depolarizing channel rho -> (1-p) rho + p I/2.
KrausChannel depolarizing_channel(double p);

/// rho -> CNOT (rho x |0><0|) CNOT^dag, one qubit in, two qubits out.
KrausChannel cnot_ancilla_channel();

/// Kraus operators |Phi+><0| and |Phi-><1|: maps |0><0| to the Bell state
/// |Phi+><Phi+| and |1><1| to |Phi-><Phi-|.
KrausChannel bell_joint_channel();

/// Diagonal-preserving channel: dephases in the computational basis.
KrausChannel classical_embedding_channel(int dim);

/// rho -> sum_x Tr(M_x rho) |x><x| for the given POVM.
KrausChannel measure_and_dephase_channel(const Povm& povm);

// --- random generators ----------------------------------------------------

DensityOperator random_density(Rng& rng, int dim, double min_eigenvalue = 0.0);
MeasurementOperator random_effect(Rng& rng, int dim);
Povm random_projective_povm(Rng& rng, int dim);
Povm random_resolved_povm(Rng& rng, int dim, int outcomes);
KrausChannel random_channel(Rng& rng, int dim, int n_kraus);

/// Default POVM sampler: alternates projective measurements in Haar-random
/// bases with two-outcome tests {M, I-M}, M = (H + ||H|| I)/(2 ||H||) for
/// random Hermitian H.
Povm sample_povm(Rng& rng, int dim, long index);

/// Mixture (1-w) ch + w depolarizing on qubits; keeps channel outputs away
/// from the boundary of the state space.
KrausChannel mix_with_depolarizing(const KrausChannel& ch, double w);

} // namespace qdp

#endif
