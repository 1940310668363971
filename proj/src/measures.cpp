#include "cohfrac/measures.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace cohfrac {

namespace {

// Entries at or below this magnitude carry no phase constraint.
constexpr double kZeroEntryTol = 1e-12;

double entropy_bits(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j)
        if (p(j) > 1e-14) s -= p(j) * std::log2(p(j));
    return s;
}

void require_qubit(const DensityMatrix& rho, const char* what) {
    if (rho.dim() != 2) {
        std::string msg = std::string(what) +
                          ": defined for qubits only, got dimension " +
                          std::to_string(rho.dim());
        throw DimensionMismatch(msg);
    }
}

} // namespace

double l1_coherence(const DensityMatrix& rho) {
    const int d = rho.dim();
    double sum = 0.0;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            if (j != k) sum += std::abs(rho(j, k));
    return sum;
}

DensityMatrix dephase(const DensityMatrix& rho) {
    Matrix m = rho.matrix().diagonal().asDiagonal();
    return DensityMatrix(std::move(m));
}

double relative_entropy_coherence(const DensityMatrix& rho) {
    const Eigen::VectorXd diag = rho.matrix().diagonal().real();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(),
                                             Eigen::EigenvaluesOnly);
    double value = entropy_bits(diag) - entropy_bits(es.eigenvalues());
    if (value < 0.0 && value >= -1e-9) value = 0.0;
    return value;
}

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 1e-14) s -= p * std::log2(p);
    if (1.0 - p > 1e-14) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

double qubit_intrinsic_randomness(const DensityMatrix& rho) {
    require_qubit(rho, "qubit_intrinsic_randomness");
    const double c = l1_coherence(rho);
    const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
    return binary_entropy((1.0 + root) / 2.0);
}

double qubit_robustness(const DensityMatrix& rho) {
    require_qubit(rho, "qubit_robustness");
    return l1_coherence(rho);
}

AlignmentReport check_phase_alignment(const DensityMatrix& rho, double tol) {
    if (tol <= 0.0)
        throw ParamOutOfRange("check_phase_alignment: tol must be positive");
    const int d = rho.dim();

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
    std::vector<bool> visited(d, false);

    // Breadth-first phase assignment inside each connected component.
    for (int root = 0; root < d; ++root) {
        if (visited[root]) continue;
        visited[root] = true;
        std::queue<int> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (int v = 0; v < d; ++v) {
                if (v == u || visited[v]) continue;
                if (std::abs(rho(u, v)) <= kZeroEntryTol) continue;
                theta(v) = theta(u) - std::arg(rho(u, v));
                visited[v] = true;
                frontier.push(v);
            }
        }
    }

    // Every edge (tree or not) must be consistent modulo 2*pi.
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            if (std::abs(rho(j, k)) <= kZeroEntryTol) continue;
            const double dev =
                wrap_angle_signed(std::arg(rho(j, k)) - (theta(j) - theta(k)));
            if (std::abs(dev) > tol) return {false, std::nullopt};
        }
    }
    return {true, PhaseVector(std::move(theta))};
}

} // namespace cohfrac
