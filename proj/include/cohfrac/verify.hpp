#pragma once

#include <string>
#include <vector>

#include "cohfrac/chan_analysis.hpp"

namespace cohfrac::verify {

struct Failure {
    std::string description;
    std::string payload; // JSON of the offending input; empty when none
};

struct SuiteResult {
    std::string suite;
    int checks = 0;
    std::vector<Failure> failures;
    std::vector<std::string> notes;

    bool passed() const { return failures.empty(); }
};

// theorem1 theorem2 theorem3 theorem4 theorem5 oracle invariance
// subadditivity_l1 bipartite_observations
const std::vector<std::string>& suite_names();

// Runs one property suite on `count` seeded instances per state/channel
// class. Unknown names throw ParamOutOfRange.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int count,
                      const OptimizerConfig& cfg);

// Convex mixture of rank-1 projectors with nonnegative amplitudes; every
// entry of the result is real and nonnegative.
DensityMatrix random_nonneg_state(int d, std::uint64_t seed);

// Two-qubit state supported on the diagonal and anti-diagonal only.
DensityMatrix random_x_state(std::uint64_t seed);

// Permutation times diagonal phases.
Matrix random_incoherent_unitary(int d, std::uint64_t seed);

// Equal mixture of two specific pure qutrits whose coherence fraction sits
// strictly below (1 + l1)/d; the standard strict-gap example.
DensityMatrix qutrit_gap_state();

// p |++><++| + (1-p) |Phi+><Phi+|.
DensityMatrix plus_bell_mix(double p);

} // namespace cohfrac::verify
