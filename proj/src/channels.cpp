#include "cohfrac/channels.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace cohfrac {

namespace {

constexpr double kCompletenessTol = 1e-9;

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os << name << " = " << x << " outside [0, 1]";
        throw ParamOutOfRange(os.str());
    }
}

Matrix pauli(int k) {
    Matrix s(2, 2);
    switch (k) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

void check_completeness(const std::vector<Matrix>& kraus, int d) {
    Matrix acc = Matrix::Zero(d, d);
    for (const Matrix& k : kraus) acc += k.adjoint() * k;
    const double dev = (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kCompletenessTol) {
        std::ostringstream os;
        os << "Kraus completeness: max |sum K^t K - I| = " << dev;
        throw IncompleteKraus(os.str());
    }
}

Eigen::Vector3d bloch(const DensityMatrix& rho) {
    const Complex off = rho(0, 1);
    return {2.0 * off.real(), -2.0 * off.imag(),
            (rho(0, 0) - rho(1, 1)).real()};
}

} // namespace

ChannelSpec ChannelSpec::unitary(const Eigen::Vector3d& axis, double angle) {
    const double n = axis.norm();
    if (n < 1e-12)
        throw ParamOutOfRange("unitary: rotation axis must be nonzero");
    if (!(angle >= -std::numbers::pi && angle <= std::numbers::pi))
        throw ParamOutOfRange("unitary: angle outside [-pi, pi]");
    ChannelSpec s;
    s.kind = ChannelKind::unitary;
    s.axis = axis / n;
    s.angle = angle;
    return s;
}

ChannelSpec ChannelSpec::depolarizing(double p) {
    require_unit_interval(p, "depolarizing: p");
    ChannelSpec s;
    s.kind = ChannelKind::depolarizing;
    s.p = p;
    return s;
}

ChannelSpec ChannelSpec::bit_flip(double p) {
    require_unit_interval(p, "bit_flip: p");
    ChannelSpec s;
    s.kind = ChannelKind::bit_flip;
    s.p = p;
    return s;
}

ChannelSpec ChannelSpec::gad(double p, double gamma) {
    require_unit_interval(p, "gad: p");
    require_unit_interval(gamma, "gad: gamma");
    ChannelSpec s;
    s.kind = ChannelKind::gad;
    s.p = p;
    s.gamma = gamma;
    return s;
}

ChannelSpec ChannelSpec::self_complementary(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw ParamOutOfRange("self_complementary: theta outside [0, pi]");
    if (!(phi >= 0.0 && phi <= 2.0 * std::numbers::pi))
        throw ParamOutOfRange("self_complementary: phi outside [0, 2 pi]");
    ChannelSpec s;
    s.kind = ChannelKind::self_complementary;
    s.theta = theta;
    s.phi = phi;
    return s;
}

ChannelSpec ChannelSpec::identity(int dim) {
    if (dim < 1)
        throw ParamOutOfRange("identity: dimension must be >= 1");
    ChannelSpec s;
    s.kind = ChannelKind::identity;
    s.dim = dim;
    return s;
}

Channel make_channel(const ChannelSpec& spec) {
    std::vector<Matrix> kraus;
    int d = 2;
    switch (spec.kind) {
        case ChannelKind::unitary: {
            const double half = spec.angle / 2.0;
            const Eigen::Vector3d& n = spec.axis;
            Matrix ns = n(0) * pauli(1) + n(1) * pauli(2) + n(2) * pauli(3);
            kraus.push_back(std::cos(half) * pauli(0) +
                            Complex(0, 1) * std::sin(half) * ns);
            break;
        }
        case ChannelKind::depolarizing: {
            const double p = spec.p;
            kraus.push_back(std::sqrt(1.0 - 0.75 * p) * pauli(0));
            for (int k = 1; k <= 3; ++k)
                kraus.push_back(std::sqrt(p / 4.0) * pauli(k));
            break;
        }
        case ChannelKind::bit_flip: {
            kraus.push_back(std::sqrt(1.0 - spec.p) * pauli(0));
            kraus.push_back(std::sqrt(spec.p) * pauli(1));
            break;
        }
        case ChannelKind::gad: {
            const double sp = std::sqrt(spec.p);
            const double sq = std::sqrt(1.0 - spec.p);
            const double sg = std::sqrt(spec.gamma);
            const double sh = std::sqrt(1.0 - spec.gamma);
            Matrix e1(2, 2), e2(2, 2), e3(2, 2), e4(2, 2);
            e1 << 1, 0, 0, sq;
            e2 << 0, sp, 0, 0;
            e3 << sq, 0, 0, 1;
            e4 << 0, 0, sp, 0;
            kraus.push_back(sg * e1);
            kraus.push_back(sg * e2);
            kraus.push_back(sh * e3);
            kraus.push_back(sh * e4);
            break;
        }
        case ChannelKind::self_complementary: {
            const double s = std::sin(spec.theta) / std::sqrt(2.0);
            Matrix e1(2, 2), e2(2, 2);
            e1 << 1, 0, 0, s;
            e2 << 0, s, 0, std::polar(std::cos(spec.theta), spec.phi);
            kraus.push_back(e1);
            kraus.push_back(e2);
            break;
        }
        case ChannelKind::identity: {
            d = spec.dim;
            kraus.push_back(Matrix::Identity(d, d));
            break;
        }
        case ChannelKind::kraus:
            throw UnsupportedKind(
                "make_channel: raw Kraus channels take the operator-list "
                "overload");
    }
    check_completeness(kraus, d);
    return {d, std::move(kraus), spec};
}

Channel make_channel(const std::vector<Matrix>& kraus) {
    if (kraus.empty())
        throw DimensionMismatch("make_channel: empty Kraus list");
    const int d = static_cast<int>(kraus.front().rows());
    for (const Matrix& k : kraus)
        if (k.rows() != d || k.cols() != d)
            throw DimensionMismatch(
                "make_channel: Kraus operators must share one square shape");
    check_completeness(kraus, d);
    ChannelSpec s;
    s.kind = ChannelKind::kraus;
    s.dim = d;
    return {d, kraus, s};
}

DensityMatrix apply(const Channel& c, const DensityMatrix& rho) {
    if (rho.dim() != c.dim) {
        std::ostringstream os;
        os << "apply: channel dimension " << c.dim << " vs state dimension "
           << rho.dim();
        throw DimensionMismatch(os.str());
    }
    Matrix out = Matrix::Zero(c.dim, c.dim);
    for (const Matrix& k : c.kraus) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix(std::move(out));
}

AffineRep affine_representation(const Channel& c) {
    if (c.dim != 2)
        throw DimensionMismatch(
            "affine_representation: defined for qubit channels only");
    Matrix half = 0.5 * Matrix::Identity(2, 2);
    const Eigen::Vector3d t = bloch(apply(c, DensityMatrix(half)));
    Eigen::Matrix3d T;
    for (int j = 0; j < 3; ++j) {
        Matrix probe = 0.5 * (pauli(0) + pauli(j + 1));
        T.col(j) = bloch(apply(c, DensityMatrix(std::move(probe)))) - t;
    }
    return {t, T};
}

Channel tensor_channel(const Channel& a, const Channel& b) {
    std::vector<Matrix> kraus;
    kraus.reserve(a.kraus.size() * b.kraus.size());
    for (const Matrix& ka : a.kraus)
        for (const Matrix& kb : b.kraus)
            kraus.push_back(Eigen::kroneckerProduct(ka, kb));
    return {a.dim * b.dim, std::move(kraus), std::nullopt};
}

Channel random_channel(int d, int env_dim, std::uint64_t seed) {
    if (d < 2)
        throw ParamOutOfRange("random_channel: dimension must be >= 2");
    if (env_dim < 1)
        throw ParamOutOfRange("random_channel: env_dim must be >= 1");

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(d * env_dim, d);
    for (int r = 0; r < d * env_dim; ++r)
        for (int c = 0; c < d; ++c) {
            const double re = n(gen);
            const double im = n(gen);
            g(r, c) = Complex(re, im);
        }

    // Thin QR with the column phases fixed so the isometry is a
    // deterministic function of g (Haar-distributed for Gaussian g).
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d * env_dim, d);
    Matrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    for (int c = 0; c < d; ++c) {
        const Complex rc = r(c, c);
        if (std::abs(rc) > 0.0) q.col(c) *= rc / std::abs(rc);
    }

    std::vector<Matrix> kraus(env_dim, Matrix::Zero(d, d));
    for (int e = 0; e < env_dim; ++e)
        for (int s = 0; s < d; ++s)
            for (int c = 0; c < d; ++c)
                kraus[e](s, c) = q(s * env_dim + e, c);
    check_completeness(kraus, d);
    ChannelSpec spec;
    spec.kind = ChannelKind::kraus;
    spec.dim = d;
    return {d, std::move(kraus), spec};
}

} // namespace cohfrac
