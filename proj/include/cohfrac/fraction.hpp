#pragma once

#include <vector>

#include "cohfrac/qcore.hpp"

namespace cohfrac {

struct OptimizerConfig {
    int restarts = 16;       // restart 0 starts at theta = 0
    int max_iters = 500;     // coordinate sweeps per restart
    double tol = 1e-10;      // stop when a sweep improves by less than this
    std::uint64_t seed = 0;  // restart r > 0 draws from seed + r
    int grid_points = 0;     // oracle / channel-grid resolution; 0 = default
};

struct FractionResult {
    double value;
    PhaseVector argmax_phases;
    int iterations_used;
    bool converged;
};

// <phi(theta)| rho |phi(theta)> for the maximally coherent phi(theta).
double phase_objective(const DensityMatrix& rho, const PhaseVector& theta);

// Maximal overlap of rho with the maximally coherent set. Qubits are solved
// in closed form (1/2 + |rho_01|); higher dimensions run multi-start
// coordinate ascent with the exact per-angle update theta_j = arg(c_j),
// c_j = sum_{k != j} rho_{jk} e^{i theta_k}. converged is false when the
// winning restart hit max_iters; the result is still returned.
FractionResult coherence_fraction(const DensityMatrix& rho,
                                  const OptimizerConfig& cfg = {});

// (1 + l1_coherence(rho)) / d. Tight exactly on phase-aligned states.
double coherence_fraction_upper_bound(const DensityMatrix& rho);

// Exhaustive grid maximum over theta_j in {2 pi m / grid_points}, theta_0
// pinned to 0. Defaults: 360 points per angle for d <= 3, 36 for d = 4.
// Rejects d > 4 (cost grows as grid_points^(d-1)).
double coherence_fraction_oracle(const DensityMatrix& rho,
                                 int grid_points = 0);

// True iff the fraction exceeds 1/d + 1e-9. Only decidable on the
// phase-aligned class; throws NotApplicable otherwise.
bool is_coherent_by_fraction(const DensityMatrix& rho,
                             const OptimizerConfig& cfg = {});

// Distillable coherence of a pure qubit with coherence fraction F:
// H((1 + 2 sqrt(F (1-F))) / 2). Requires 1/2 <= F <= 1.
double distillable_coherence_pure_qubit(double F);

// Same optimization on a d1*d2-dimensional state; the bipartite maximally
// coherent set equals the global one under the (k, l) -> k*d2 + l ordering.
FractionResult bipartite_coherence_fraction(const DensityMatrix& rho_ab,
                                            int d1, int d2,
                                            const OptimizerConfig& cfg = {});

struct LocalGlobalReport {
    double F_ab;
    double F_a;
    double F_b;
    double lhs;  // F_a + F_b
    double rhs;  // 2 F_ab + 1/2
    bool holds;
};

// Local-versus-global bound for phase-aligned two-qubit states.
LocalGlobalReport local_global_report(const DensityMatrix& rho_ab,
                                      const OptimizerConfig& cfg = {});

namespace detail {

// Single coordinate-ascent run from start (start(0) is pinned to 0). When
// trace is non-null the objective value after every accepted single-angle
// update is appended; the sequence is nondecreasing.
FractionResult coordinate_ascent(const DensityMatrix& rho,
                                 Eigen::VectorXd start, int max_iters,
                                 double tol,
                                 std::vector<double>* trace = nullptr);

} // namespace detail

} // namespace cohfrac
