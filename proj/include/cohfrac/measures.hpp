#pragma once

#include <optional>

#include "cohfrac/qcore.hpp"

namespace cohfrac {

// Sum of |rho_{ij}| over i != j. Range [0, d-1].
double l1_coherence(const DensityMatrix& rho);

// Diagonal part of the state.
DensityMatrix dephase(const DensityMatrix& rho);

// S(dephase(rho)) - S(rho), entropies base 2. Eigenvalues below 1e-14
// contribute nothing; negatives above -1e-9 are clamped to 0.
double relative_entropy_coherence(const DensityMatrix& rho);

// H((1 + sqrt(1 - C^2)) / 2) with C the l1 coherence. Qubits only.
double qubit_intrinsic_randomness(const DensityMatrix& rho);

// Robustness of coherence; coincides with the l1 coherence for qubits.
double qubit_robustness(const DensityMatrix& rho);

// -p log2 p - (1-p) log2(1-p) with 0 log 0 = 0.
double binary_entropy(double p);

struct AlignmentReport {
    bool aligned;
    std::optional<PhaseVector> witness;
};

// Decides whether phases theta_j exist with theta_j - theta_k equal to
// arg(rho_{jk}) for every off-diagonal entry above 1e-12 in magnitude.
// Phases are propagated breadth-first within each connected component of the
// nonzero-entry graph and every remaining edge is checked modulo 2*pi.
AlignmentReport check_phase_alignment(const DensityMatrix& rho,
                                      double tol = 1e-8);

} // namespace cohfrac
