#pragma once

#include <optional>
#include <vector>

#include "cohfrac/qcore.hpp"

namespace cohfrac {

enum class ChannelKind {
    unitary,
    depolarizing,
    bit_flip,
    gad,
    self_complementary,
    kraus,
    identity,
};

// Named channel parameterization. Only the fields of the active kind are
// meaningful; the factories validate ranges.
struct ChannelSpec {
    ChannelKind kind = ChannelKind::identity;
    Eigen::Vector3d axis{0.0, 0.0, 1.0}; // unitary: rotation axis, unit norm
    double angle = 0.0;                  // unitary: phi in [-pi, pi]
    double p = 0.0;                      // depolarizing / bit_flip / gad
    double gamma = 0.0;                  // gad
    double theta = 0.0;                  // self_complementary: [0, pi]
    double phi = 0.0;                    // self_complementary: [0, 2 pi]
    int dim = 2;                         // identity / kraus

    static ChannelSpec unitary(const Eigen::Vector3d& axis, double angle);
    static ChannelSpec depolarizing(double p);
    static ChannelSpec bit_flip(double p);
    static ChannelSpec gad(double p, double gamma);
    static ChannelSpec self_complementary(double theta, double phi);
    static ChannelSpec identity(int dim = 2);
};

// CPTP map as a finite Kraus list; sum K^dagger K = I within 1e-9.
struct Channel {
    int dim = 0;
    std::vector<Matrix> kraus;
    std::optional<ChannelSpec> spec;
};

// Canonical Kraus sets for the named kinds.
Channel make_channel(const ChannelSpec& spec);
// Raw Kraus list; completeness re-verified at 1e-9.
Channel make_channel(const std::vector<Matrix>& kraus);

// Kraus sum, re-validated as a DensityMatrix on the way out.
DensityMatrix apply(const Channel& c, const DensityMatrix& rho);

// Qubit channel in the form v -> t + T v on Bloch vectors.
struct AffineRep {
    Eigen::Vector3d t;
    Eigen::Matrix3d T;

    bool unital() const { return t.norm() <= 1e-9; }
    // Diagonal inputs stay diagonal iff the equator picks up neither shift
    // nor coupling from the z component.
    bool preserves_diagonal() const {
        return std::abs(t(0)) <= 1e-9 && std::abs(t(1)) <= 1e-9 &&
               std::abs(T(0, 2)) <= 1e-9 && std::abs(T(1, 2)) <= 1e-9;
    }
};

AffineRep affine_representation(const Channel& c);

// Kraus set of all pairwise Kronecker products.
Channel tensor_channel(const Channel& a, const Channel& b);

// Haar-random isometry into system x environment, sliced into Kraus
// operators along the environment basis. Deterministic per seed.
Channel random_channel(int d, int env_dim, std::uint64_t seed);

} // namespace cohfrac
