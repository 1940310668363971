#include "cohfrac/fraction.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cohfrac/measures.hpp"

namespace cohfrac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const OptimizerConfig& cfg) {
    if (cfg.restarts < 1)
        throw ParamOutOfRange("OptimizerConfig: restarts must be >= 1");
    if (cfg.max_iters < 1)
        throw ParamOutOfRange("OptimizerConfig: max_iters must be >= 1");
    if (cfg.tol <= 0.0)
        throw ParamOutOfRange("OptimizerConfig: tol must be positive");
    if (cfg.grid_points != 0 && cfg.grid_points < 8)
        throw ParamOutOfRange("OptimizerConfig: grid_points must be >= 8");
}

double objective(const Matrix& rho, const Eigen::VectorXd& theta) {
    const int d = static_cast<int>(rho.rows());
    Complex acc = rho.diagonal().sum();
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k)
            acc += 2.0 * std::polar(1.0, theta(k) - theta(j)) * rho(j, k);
    return acc.real() / d;
}

FractionResult finalize(const DensityMatrix& rho, const Eigen::VectorXd& theta,
                        int iterations, bool converged) {
    PhaseVector canonical(theta);
    const double value = phase_objective(rho, canonical);
    return {value, std::move(canonical), iterations, converged};
}

} // namespace

double phase_objective(const DensityMatrix& rho, const PhaseVector& theta) {
    if (theta.dim() != rho.dim())
        throw DimensionMismatch("phase_objective: phase/state dimensions differ");
    return objective(rho.matrix(), theta.angles());
}

namespace detail {

FractionResult coordinate_ascent(const DensityMatrix& rho,
                                 Eigen::VectorXd start, int max_iters,
                                 double tol, std::vector<double>* trace) {
    const Matrix& m = rho.matrix();
    const int d = rho.dim();
    Eigen::VectorXd theta = std::move(start);
    theta(0) = 0.0;

    double f = objective(m, theta);
    if (trace) trace->push_back(f);

    int sweeps = 0;
    bool converged = false;
    while (sweeps < max_iters) {
        ++sweeps;
        // theta_0 stays pinned; the objective depends on differences only.
        for (int j = 1; j < d; ++j) {
            Complex c(0.0, 0.0);
            for (int k = 0; k < d; ++k)
                if (k != j) c += m(j, k) * std::polar(1.0, theta(k));
            if (std::abs(c) > 1e-15) theta(j) = std::arg(c);
            if (trace) trace->push_back(objective(m, theta));
        }
        const double f_new = objective(m, theta);
        if (f_new - f < tol) {
            converged = true;
            f = std::max(f, f_new);
            break;
        }
        f = f_new;
    }
    return finalize(rho, theta, sweeps, converged);
}

} // namespace detail

FractionResult coherence_fraction(const DensityMatrix& rho,
                                  const OptimizerConfig& cfg) {
    validate(cfg);
    const int d = rho.dim();

    if (d == 2) {
        // Single off-diagonal pair: the alignment condition is always
        // satisfiable and the maximum is 1/2 + |rho_01| at theta_1 = -arg.
        const Complex off = rho(0, 1);
        Eigen::VectorXd theta = Eigen::VectorXd::Zero(2);
        if (std::abs(off) > 0.0) theta(1) = -std::arg(off);
        PhaseVector canonical(std::move(theta));
        return {0.5 + std::abs(off), std::move(canonical), 0, true};
    }

    FractionResult best{-1.0, PhaseVector::zeros(d), 0, false};
    for (int r = 0; r < cfg.restarts; ++r) {
        Eigen::VectorXd start = Eigen::VectorXd::Zero(d);
        if (r > 0) {
            std::mt19937_64 gen(cfg.seed + static_cast<std::uint64_t>(r));
            std::uniform_real_distribution<double> u(0.0, kTwoPi);
            for (int j = 1; j < d; ++j) start(j) = u(gen);
        }
        FractionResult res = detail::coordinate_ascent(
            rho, std::move(start), cfg.max_iters, cfg.tol);
        // Strict improvement keeps the lowest restart index on ties.
        if (res.value > best.value) best = std::move(res);
    }
    return best;
}

double coherence_fraction_upper_bound(const DensityMatrix& rho) {
    return (1.0 + l1_coherence(rho)) / rho.dim();
}

double coherence_fraction_oracle(const DensityMatrix& rho, int grid_points) {
    const int d = rho.dim();
    if (d > 4) {
        std::ostringstream os;
        os << "coherence_fraction_oracle: dimension " << d
           << " exceeds the supported maximum 4";
        throw DimensionTooLarge(os.str());
    }
    int gp = grid_points;
    if (gp == 0) gp = d <= 3 ? 360 : 36;
    if (gp < 8)
        throw ParamOutOfRange("coherence_fraction_oracle: grid_points must be >= 8");

    std::vector<Complex> phase(gp);
    for (int m = 0; m < gp; ++m)
        phase[m] = std::polar(1.0, kTwoPi * m / gp);

    const Matrix& mat = rho.matrix();
    const int free_angles = d - 1;
    std::vector<int> idx(free_angles, 0);
    std::vector<Complex> u(d);
    u[0] = Complex(1.0, 0.0);

    double best = -1.0;
    while (true) {
        for (int j = 0; j < free_angles; ++j) u[j + 1] = phase[idx[j]];
        Complex acc = mat.diagonal().sum();
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k)
                acc += 2.0 * std::conj(u[j]) * u[k] * mat(j, k);
        best = std::max(best, acc.real() / d);

        int pos = free_angles - 1;
        while (pos >= 0 && ++idx[pos] == gp) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return best;
}

bool is_coherent_by_fraction(const DensityMatrix& rho,
                             const OptimizerConfig& cfg) {
    const AlignmentReport report = check_phase_alignment(rho);
    if (!report.aligned)
        throw NotApplicable(
            "is_coherent_by_fraction: state is not phase-aligned; the "
            "fraction threshold criterion only applies to the aligned class");
    const double d = rho.dim();
    return coherence_fraction(rho, cfg).value > 1.0 / d + 1e-9;
}

double distillable_coherence_pure_qubit(double F) {
    if (F < 0.5 - 1e-12 || F > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "distillable_coherence_pure_qubit: F = " << F
           << " outside [1/2, 1]";
        throw OutOfRange(os.str());
    }
    const double f = std::min(1.0, std::max(0.5, F));
    const double x = 2.0 * std::sqrt(f * (1.0 - f));
    return binary_entropy((1.0 + x) / 2.0);
}

FractionResult bipartite_coherence_fraction(const DensityMatrix& rho_ab,
                                            int d1, int d2,
                                            const OptimizerConfig& cfg) {
    if (d1 < 1 || d2 < 1 || rho_ab.dim() != d1 * d2) {
        std::ostringstream os;
        os << "bipartite_coherence_fraction: state dimension " << rho_ab.dim()
           << " does not factor as " << d1 << "*" << d2;
        throw DimensionMismatch(os.str());
    }
    return coherence_fraction(rho_ab, cfg);
}

LocalGlobalReport local_global_report(const DensityMatrix& rho_ab,
                                      const OptimizerConfig& cfg) {
    if (rho_ab.dim() != 4)
        throw DimensionMismatch(
            "local_global_report: expects a two-qubit (dimension 4) state");
    if (!check_phase_alignment(rho_ab).aligned)
        throw NotApplicable(
            "local_global_report: state is not phase-aligned; the bound's "
            "hypothesis fails");

    const double F_ab = bipartite_coherence_fraction(rho_ab, 2, 2, cfg).value;
    const DensityMatrix rho_a =
        partial_trace(rho_ab, 2, 2, Subsystem::first);
    const DensityMatrix rho_b =
        partial_trace(rho_ab, 2, 2, Subsystem::second);
    const double F_a = coherence_fraction(rho_a, cfg).value;
    const double F_b = coherence_fraction(rho_b, cfg).value;
    const double lhs = F_a + F_b;
    const double rhs = 2.0 * F_ab + 0.5;
    return {F_ab, F_a, F_b, lhs, rhs, lhs <= rhs + 1e-9};
}

} // namespace cohfrac
