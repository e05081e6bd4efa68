#ifndef QDP_ADVERSARY_HPP
#define QDP_ADVERSARY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qdp/states_channels.hpp"

namespace qdp {

/// Two-outcome test implemented by measuring the first subsystem with a POVM
/// and accepting with a conditional effect on the second.
struct OneWayLoccTest {
    Povm first_povm;                                   // on K_1
    std::vector<MeasurementOperator> conditional_effects; // on K_2, one per outcome

    /// Acceptance operator sum_t E_t x M_{2,t}; satisfies 0 <= M <= I.
    CMat acceptance_operator() const;

    /// Acceptance probability on a product state via the defining
    /// factorization sum_t Tr(E_t xi_1) Tr(M_{2,t} xi_2).
    double factorized_acceptance(const CMat& xi1, const CMat& xi2) const;
};

OneWayLoccTest sample_oneway_locc(Rng& rng, const std::vector<int>& dims, int outcomes);

/// Local POVMs on each subsystem followed by [0,1]-valued classical
/// post-processing of the joint outcome tuple.
struct LoStarTest {
    std::vector<Povm> local_povms;
    std::vector<double> weights; // row-major over outcome tuples, values in [0,1]

    CMat acceptance_operator() const;

    /// E_P[T] under the induced product outcome distribution.
    double classical_expectation(const std::vector<DensityOperator>& locals) const;
};

LoStarTest sample_lostar(Rng& rng, const std::vector<int>& dims, bool extremal_weights = false);

/// The two-qubit parity fixture: computational-basis POVMs, accept iff the
/// outcomes differ. Its acceptance operator is |01><01| + |10><10|.
LoStarTest parity_lostar_test();

enum class TestClass { unrestricted, one_way_locc, lo_star };

const char* test_class_name(TestClass c);

/// A composed (eps, delta) claim to probe.
struct CompositionClaim {
    double eps = 0.0;
    double delta = 0.0;
};

struct ViolationReport {
    bool found = false;
    double worst_margin = 0.0; // max over trials of Tr(M A(rho)) - e^eps Tr(M A(sigma)) - delta
    int worst_pair_index = -1;
    bool worst_reversed = false;
    long worst_trial = -1;     // -1 marks a deterministic fixture
    long trials = 0;
    std::uint64_t seed = 0;
    CMat witness;              // acceptance operator achieving worst_margin
};

/// Randomized falsification harness: searches the given test class for
/// violations of the claim on the composite channel over the relation.
/// Deterministic fixtures (per-pair optimal projectors, the parity test) are
/// always evaluated before the random trials.
ViolationReport falsify(const StateMap& composite, const NeighborRelation& rel,
                        const CompositionClaim& claim, TestClass test_class,
                        const std::vector<int>& out_dims, long trials, std::uint64_t seed);

} // namespace qdp

#endif
