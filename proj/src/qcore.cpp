#include "cohfrac/qcore.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace cohfrac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe(const char* invariant, double magnitude) {
    std::ostringstream os;
    os << invariant << ": worst offending magnitude " << magnitude;
    return os.str();
}

void require_square(const Matrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << ": expected nonempty square matrix, got " << m.rows()
           << "x" << m.cols();
        throw DimensionMismatch(os.str());
    }
}

// One complex standard normal per call; real part drawn before imaginary.
Complex gaussian(std::mt19937_64& gen, std::normal_distribution<double>& n) {
    const double re = n(gen);
    const double im = n(gen);
    return {re, im};
}

} // namespace

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0; // fmod rounding at the seam
    return r + 0.0;           // kill negative zero
}

double wrap_angle_signed(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    const int d = static_cast<int>(m_.rows());

    double worst_herm = 0.0;
    for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k)
            worst_herm = std::max(
                worst_herm, std::abs(m_(j, k) - std::conj(m_(k, j))));
    if (worst_herm > kValidationTol)
        throw NotHermitian(describe("hermiticity", worst_herm));

    const double trace_dev = std::abs(m_.trace() - Complex(1.0, 0.0));
    if (trace_dev > kValidationTol)
        throw TraceNotOne(describe("unit trace", trace_dev));

    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kValidationTol)
        throw NotPositive(describe("positive semidefiniteness", -min_eig));
}

PureState::PureState(Vector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() == 0)
        throw DimensionMismatch("PureState: empty amplitude vector");
    const double dev = std::abs(v_.squaredNorm() - 1.0);
    if (dev > 1e-12)
        throw NotNormalized(describe("unit norm", dev));
}

PhaseVector::PhaseVector(Eigen::VectorXd angles) : a_(std::move(angles)) {
    if (a_.size() == 0)
        throw DimensionMismatch("PhaseVector: empty angle vector");
    const double base = a_(0);
    for (Eigen::Index j = 0; j < a_.size(); ++j)
        a_(j) = wrap_angle(a_(j) - base);
    a_(0) = 0.0;
}

PhaseVector PhaseVector::zeros(int d) {
    return PhaseVector(Eigen::VectorXd::Zero(d));
}

DensityMatrix make_density_matrix(const Matrix& entries) {
    return DensityMatrix(entries);
}

DensityMatrix pure_to_density(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint());
}

PureState maximally_coherent_state(const PhaseVector& theta) {
    const int d = theta.dim();
    Vector v(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        v(j) = std::polar(scale, theta[j]);
    return PureState(std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    Matrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
    return DensityMatrix(std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& ab, int d1, int d2,
                            Subsystem keep) {
    if (d1 < 1 || d2 < 1 || ab.dim() != d1 * d2) {
        std::ostringstream os;
        os << "partial_trace: state dimension " << ab.dim()
           << " does not factor as " << d1 << "*" << d2;
        throw DimensionMismatch(os.str());
    }
    const Matrix& m = ab.matrix();
    if (keep == Subsystem::first) {
        Matrix out = Matrix::Zero(d1, d1);
        for (int j = 0; j < d1; ++j)
            for (int k = 0; k < d1; ++k)
                for (int l = 0; l < d2; ++l)
                    out(j, k) += m(j * d2 + l, k * d2 + l);
        return DensityMatrix(std::move(out));
    }
    Matrix out = Matrix::Zero(d2, d2);
    for (int l = 0; l < d2; ++l)
        for (int mcol = 0; mcol < d2; ++mcol)
            for (int j = 0; j < d1; ++j)
                out(l, mcol) += m(j * d2 + l, j * d2 + mcol);
    return DensityMatrix(std::move(out));
}

PureState random_pure_state(int d, std::uint64_t seed) {
    if (d < 2)
        throw ParamOutOfRange("random_pure_state: dimension must be >= 2");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Vector v(d);
    for (int j = 0; j < d; ++j)
        v(j) = gaussian(gen, n);
    v /= v.norm();
    return PureState(std::move(v));
}

DensityMatrix random_density_matrix(int d, std::uint64_t seed) {
    if (d < 2)
        throw ParamOutOfRange("random_density_matrix: dimension must be >= 2");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            g(j, k) = gaussian(gen, n);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

} // namespace cohfrac
