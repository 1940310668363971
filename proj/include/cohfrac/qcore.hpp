#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "cohfrac/errors.hpp"

namespace cohfrac {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Shared validation tolerance for Hermiticity / trace / positivity.
inline constexpr double kValidationTol = 1e-10;

// Representative of a mod 2*pi in [0, 2*pi).
double wrap_angle(double a);
// Representative of a mod 2*pi in (-pi, pi].
double wrap_angle_signed(double a);

// d x d complex matrix that is Hermitian, unit-trace and PSD within
// kValidationTol. Immutable after construction.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(int j, int k) const { return m_(j, k); }

private:
    Matrix m_;
};

// Unit-norm complex amplitude vector.
class PureState {
public:
    explicit PureState(Vector amplitudes);

    int dim() const { return static_cast<int>(v_.size()); }
    const Vector& amplitudes() const { return v_; }
    Complex operator[](int j) const { return v_(j); }

private:
    Vector v_;
};

// Angles (theta_0, ..., theta_{d-1}) of a maximally coherent state.
// Canonical form: every angle in [0, 2*pi) and theta_0 == 0; the constructor
// shifts and wraps its argument (phase differences are preserved).
class PhaseVector {
public:
    explicit PhaseVector(Eigen::VectorXd angles);
    static PhaseVector zeros(int d);

    int dim() const { return static_cast<int>(a_.size()); }
    const Eigen::VectorXd& angles() const { return a_; }
    double operator[](int j) const { return a_(j); }

private:
    Eigen::VectorXd a_;
};

// Validates entries as a density matrix. No renormalization is performed.
DensityMatrix make_density_matrix(const Matrix& entries);

// |psi><psi|.
DensityMatrix pure_to_density(const PureState& psi);

// Amplitudes e^{i theta_j} / sqrt(d).
PureState maximally_coherent_state(const PhaseVector& theta);

// Kronecker product; composite index (k, l) -> k * d2 + l.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

enum class Subsystem { first, second };

DensityMatrix partial_trace(const DensityMatrix& ab, int d1, int d2,
                            Subsystem keep);

// Haar-distributed pure state; deterministic per seed.
PureState random_pure_state(int d, std::uint64_t seed);

// G G^dagger / tr(G G^dagger) for complex Gaussian G; deterministic per seed.
DensityMatrix random_density_matrix(int d, std::uint64_t seed);

} // namespace cohfrac
