#pragma once

#include <string>
#include <vector>

#include "cohfrac/channels.hpp"
#include "cohfrac/fraction.hpp"

namespace cohfrac {

enum class ChannelMethod { qubit_theorem3, general_search };

struct ChannelFractionResult {
    double value;
    PureState argmax_input;
    PhaseVector argmax_phases;
    ChannelMethod method;
    bool converged = true;
};

// Best coherence fraction achievable at the channel output over pure inputs.
// Qubit channels reduce to a one-angle maximization over the maximally
// coherent family (grid of cfg.grid_points, default 720, then golden-section
// refinement); other dimensions run a multi-start hill climb over the input
// amplitudes with the fraction optimizer evaluating each output.
ChannelFractionResult optimal_coherence_fraction(const Channel& c,
                                                 const OptimizerConfig& cfg = {});

// The hill-climb path regardless of dimension; validates the qubit
// reduction. Supports dim <= 6.
ChannelFractionResult optimal_coherence_fraction_search(
    const Channel& c, const OptimizerConfig& cfg = {});

enum class PowerMethod { qubit, general };

struct PowerValue {
    double value;
    PowerMethod method;
};

// 1 - min l1 coherence surviving a maximally coherent input (qubits).
// Dimensions above 2 report the normalized deficit (d-1-min)/(d-1) and are
// flagged general; that scaling is an extension, not used in bound checks.
PowerValue decohering_power(const Channel& c, const OptimizerConfig& cfg = {});

// Max l1 coherence the channel creates from a diagonal input.
PowerValue cohering_power(const Channel& c, const OptimizerConfig& cfg = {});

struct ComplementarityReport {
    double F;
    double D;
    double sum;       // 2 F + D
    double K;         // sum - 2
    bool bounds_hold; // 2 - 1e-6 <= sum <= 3 + 1e-6
};

ComplementarityReport complementarity_report(const Channel& c,
                                             const OptimizerConfig& cfg = {});

// Closed-form optimal coherence fraction for the named qubit channels.
// The unitary case evaluates the singular values of the equator block of
// the Bloch rotation; see unitary_printed_ocf for the typeset variant.
double closed_form_ocf(const ChannelSpec& spec);

// Closed-form decohering power. The self-complementary case returns the
// typeset expression 1 - |sin theta| p_min, which numerics contradict; the
// supported form is self_complementary_corrected_decohering_power.
double closed_form_decohering_power(const ChannelSpec& spec);

// 1 - |sin theta| p_min / sqrt(2); matches the direct Kraus computation.
double self_complementary_corrected_decohering_power(double theta);

// The unitary-channel formulas exactly as typeset:
// p_pm = s +- sqrt(s^2 - (X1^2 X2^2 + Y1^2 Y2^2)), s = (X1^2+X2^2+Y1^2+Y2^2)/2,
// F = 1/2 + p_+/2 and D = 1 - p_-. Kept verbatim for the errata report; the
// radicand drops a cross term and p_+ can exceed 1.
double unitary_printed_ocf(const ChannelSpec& spec);
double unitary_printed_decohering_power(const ChannelSpec& spec);

struct ErrataEntry {
    std::string quantity;
    double printed;       // formula as typeset
    double corrected;     // independently derived form
    double numeric;       // brute-force optimizer value
    double printed_dev;   // |printed - numeric|
    double corrected_dev; // |corrected - numeric|
};

struct ErrataReport {
    ChannelSpec spec;
    std::vector<ErrataEntry> entries;
    double tol = 1e-4;
    bool printed_consistent;   // every printed_dev <= tol
    bool corrected_consistent; // every corrected_dev <= tol
};

// Compares typeset and corrected closed forms against the numerical
// pipeline for one named channel. Discrepancies are reported, never hidden.
ErrataReport closed_form_errata(const ChannelSpec& spec,
                                const OptimizerConfig& cfg = {});

// 32 restarts; the bipartite input landscape has 7 free parameters.
OptimizerConfig bipartite_defaults();

// Best bipartite coherence fraction at the output of c1 (x) c2 over
// two-qubit pure inputs.
ChannelFractionResult bipartite_ocf(const Channel& c1, const Channel& c2,
                                    const OptimizerConfig& cfg = bipartite_defaults());

struct MultiplicativityReport {
    double lhs; // F(c1 (x) c2)
    double rhs; // F(c1 (x) id) * F(id (x) c2)
    double gap; // lhs - rhs
};

// Measures the product structure of the bipartite optimal fraction. The gap
// is reported, never asserted; the identity is an empirical observation.
MultiplicativityReport multiplicativity_report(const Channel& c1,
                                               const Channel& c2,
                                               const OptimizerConfig& cfg = bipartite_defaults());

} // namespace cohfrac
