#ifndef QDP_REPRODUCE_HPP
#define QDP_REPRODUCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qdp/serialize.hpp"

namespace qdp {

/// Outcome of one named certification suite. `details` is fully determined
/// by the seed, so identical configurations serialize byte-identically.
struct ReproResult {
    std::string name;
    bool pass = false;
    Scope scope = Scope::all_povm; // adversary class the suite certifies against
    Json details;
    std::vector<std::string> lines; // human-readable check-by-check summary
};

// Marginals of the Bell joint channel are perfectly private while the joint
// channel is maximally distinguishing; recovers the optimal witness.
ReproResult reproduce_no_go(std::uint64_t seed);

// log-moments of tensor-product channels add across slots on product
// neighbors, at every grid lambda.
ReproResult reproduce_mmgf_additivity(std::uint64_t seed, int n_pairs = 100);

// Sampled POVM outcome divergences never exceed the moment-accountant
// certificate at alpha in {2, 3, 5}.
ReproResult reproduce_qma_measured(std::uint64_t seed, int n_channels = 50, int n_povms = 500);

// Basic composition of certified channels holds against sampled one-way LOCC
// tests at the min-rule delta.
ReproResult reproduce_locc_basic(std::uint64_t seed, int n_pairs = 20, long trials = 10000);

// Advanced composition arithmetic plus the per-channel Renyi premise on a
// concrete depolarizing instance.
ReproResult reproduce_advanced_pure(std::uint64_t seed);

// Parity fixture, KOV delta arithmetic, and sampled LO* tests against the
// composed bound on certified instances.
ReproResult reproduce_lostar(std::uint64_t seed, long trials = 10000);

const std::vector<std::string>& reproduction_names();

/// Dispatch by name; throws ParameterOutOfRangeError for unknown names.
/// `trials` <= 0 selects each suite's default.
ReproResult run_reproduction(const std::string& name, std::uint64_t seed, long trials = 0);

Json repro_to_json(const ReproResult& r, std::uint64_t seed);

} // namespace qdp

#endif
