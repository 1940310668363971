#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cohfrac/channels.hpp"
#include "cohfrac/measures.hpp"

using namespace cohfrac;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix bloch_state(double v1, double v2, double v3) {
    Matrix m(2, 2);
    m << 0.5 * (1.0 + v3), 0.5 * Complex(v1, -v2),
         0.5 * Complex(v1, v2), 0.5 * (1.0 - v3);
    return DensityMatrix(std::move(m));
}

Eigen::Vector3d bloch_of(const DensityMatrix& rho) {
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
            rho(0, 0).real() - rho(1, 1).real()};
}

} // namespace

TEST_CASE("channel spec factories validate their ranges") {
    CHECK_THROWS_AS(ChannelSpec::unitary({0.0, 0.0, 1.0}, 2.0 * kPi),
                    ParamOutOfRange);
    CHECK_THROWS_AS(ChannelSpec::unitary({0.0, 0.0, 0.0}, 0.5),
                    ParamOutOfRange);
    CHECK_THROWS_AS(ChannelSpec::depolarizing(-0.1), ParamOutOfRange);
    CHECK_THROWS_AS(ChannelSpec::bit_flip(1.5), ParamOutOfRange);
    CHECK_THROWS_AS(ChannelSpec::gad(0.5, 1.2), ParamOutOfRange);
    CHECK_THROWS_AS(ChannelSpec::self_complementary(-0.1, 0.0),
                    ParamOutOfRange);
    CHECK_THROWS_AS(ChannelSpec::self_complementary(1.0, 7.0),
                    ParamOutOfRange);
    CHECK_THROWS_AS(ChannelSpec::identity(0), ParamOutOfRange);

    // Axis is stored normalized.
    const ChannelSpec u = ChannelSpec::unitary({3.0, 0.0, 4.0}, 1.0);
    CHECK(u.axis.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u.axis(0) == doctest::Approx(0.6));
}

TEST_CASE("named kinds build complete Kraus sets") {
    for (const ChannelSpec& spec :
         {ChannelSpec::unitary({1.0, 2.0, 2.0}, -0.9),
          ChannelSpec::depolarizing(0.7), ChannelSpec::bit_flip(0.4),
          ChannelSpec::gad(0.3, 0.6), ChannelSpec::self_complementary(1.1, 0.4),
          ChannelSpec::identity(3)}) {
        const Channel c = make_channel(spec);
        Matrix sum = Matrix::Zero(c.dim, c.dim);
        for (const Matrix& k : c.kraus) sum += k.adjoint() * k;
        CHECK((sum - Matrix::Identity(c.dim, c.dim)).cwiseAbs().maxCoeff() <
              1e-12);
    }

    ChannelSpec raw;
    raw.kind = ChannelKind::kraus;
    CHECK_THROWS_AS(make_channel(raw), UnsupportedKind);
}

TEST_CASE("raw Kraus lists are checked for completeness") {
    std::vector<Matrix> ops;
    Matrix k(2, 2);
    k << 0.9, 0.0, 0.0, 0.9;
    ops.push_back(k);
    CHECK_THROWS_AS(make_channel(ops), IncompleteKraus);

    ops.clear();
    CHECK_THROWS_AS(make_channel(ops), DimensionMismatch);

    ops.push_back(Matrix::Identity(2, 2));
    ops.push_back(Matrix::Zero(3, 3));
    CHECK_THROWS_AS(make_channel(ops), DimensionMismatch);

    ops.pop_back();
    const Channel id = make_channel(ops);
    CHECK(id.dim == 2);
    REQUIRE(id.spec.has_value());
    CHECK(id.spec->kind == ChannelKind::kraus);
}

TEST_CASE("channel action on known cases") {
    const DensityMatrix zero = bloch_state(0.0, 0.0, 1.0);
    const DensityMatrix plus = bloch_state(1.0, 0.0, 0.0);

    SUBCASE("full bit flip swaps the poles") {
        const DensityMatrix out =
            apply(make_channel(ChannelSpec::bit_flip(1.0)), zero);
        CHECK(out(1, 1).real() == doctest::Approx(1.0));
    }
    SUBCASE("full depolarizing lands on the maximally mixed state") {
        const DensityMatrix out =
            apply(make_channel(ChannelSpec::depolarizing(1.0)), plus);
        CHECK((out.matrix() - 0.5 * Matrix::Identity(2, 2))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("gad coherence decay is gamma independent") {
        for (double g : {0.0, 0.3, 0.7, 1.0}) {
            const DensityMatrix out =
                apply(make_channel(ChannelSpec::gad(0.36, g)), plus);
            CHECK(out(0, 1).real() ==
                  doctest::Approx(std::sqrt(1.0 - 0.36) / 2.0).epsilon(1e-12));
        }
    }
    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(apply(make_channel(ChannelSpec::bit_flip(0.5)),
                              random_density_matrix(3, 1)),
                        DimensionMismatch);
    }
}

TEST_CASE("affine representation of the named channels") {
    SUBCASE("depolarizing shrinks isotropically") {
        const AffineRep rep =
            affine_representation(make_channel(ChannelSpec::depolarizing(0.4)));
        CHECK(rep.unital());
        CHECK(rep.preserves_diagonal());
        CHECK((rep.T - 0.6 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
              1e-12);
    }
    SUBCASE("bit flip keeps the x axis") {
        const AffineRep rep =
            affine_representation(make_channel(ChannelSpec::bit_flip(0.3)));
        CHECK(rep.unital());
        CHECK(rep.T(0, 0) == doctest::Approx(1.0));
        CHECK(rep.T(1, 1) == doctest::Approx(0.4));
        CHECK(rep.T(2, 2) == doctest::Approx(0.4));
    }
    SUBCASE("gad shifts along z and damps the equator") {
        const double p = 0.36, g = 0.8;
        const AffineRep rep =
            affine_representation(make_channel(ChannelSpec::gad(p, g)));
        CHECK(!rep.unital());
        CHECK(rep.preserves_diagonal());
        CHECK(rep.t(2) == doctest::Approx((2.0 * g - 1.0) * p).epsilon(1e-12));
        CHECK(rep.T(0, 0) == doctest::Approx(std::sqrt(1.0 - p)));
        CHECK(rep.T(2, 2) == doctest::Approx(1.0 - p));
    }
    SUBCASE("z rotation is the expected equator rotation") {
        const double phi = 0.7;
        const AffineRep rep = affine_representation(
            make_channel(ChannelSpec::unitary({0.0, 0.0, 1.0}, phi)));
        CHECK(rep.unital());
        CHECK(rep.preserves_diagonal());
        CHECK(rep.T(0, 0) == doctest::Approx(std::cos(phi)));
        CHECK(rep.T(0, 1) == doctest::Approx(std::sin(phi)));
        CHECK(rep.T(1, 0) == doctest::Approx(-std::sin(phi)));
        CHECK(rep.T(2, 2) == doctest::Approx(1.0));
    }
    SUBCASE("x rotation tilts the equator off the diagonal") {
        const AffineRep rep = affine_representation(
            make_channel(ChannelSpec::unitary({1.0, 0.0, 0.0}, 0.8)));
        CHECK(!rep.preserves_diagonal());
        // Rotations are orthogonal.
        CHECK((rep.T.transpose() * rep.T - Eigen::Matrix3d::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("self complementary creates coherence from the diagonal") {
        const AffineRep rep = affine_representation(
            make_channel(ChannelSpec::self_complementary(1.1, 0.4)));
        CHECK(!rep.preserves_diagonal());
    }
    SUBCASE("only qubits have one") {
        CHECK_THROWS_AS(
            affine_representation(make_channel(ChannelSpec::identity(3))),
            DimensionMismatch);
    }
}

TEST_CASE("affine representation reproduces the channel action") {
    for (std::uint64_t s = 0; s < 8; ++s) {
        const Channel c = random_channel(2, 1 + static_cast<int>(s % 4), 50 + s);
        const AffineRep rep = affine_representation(c);
        const DensityMatrix rho = random_density_matrix(2, 80 + s);
        const Eigen::Vector3d direct = bloch_of(apply(c, rho));
        const Eigen::Vector3d mapped = rep.t + rep.T * bloch_of(rho);
        CHECK((direct - mapped).norm() < 1e-10);
    }
}

TEST_CASE("tensor channels act factor-wise") {
    const Channel a = make_channel(ChannelSpec::gad(0.5, 0.7));
    const Channel b = make_channel(ChannelSpec::bit_flip(0.3));
    const Channel ab = tensor_channel(a, b);
    CHECK(ab.dim == 4);
    CHECK(!ab.spec.has_value());
    CHECK(ab.kraus.size() == a.kraus.size() * b.kraus.size());

    const DensityMatrix ra = random_density_matrix(2, 5);
    const DensityMatrix rb = random_density_matrix(2, 6);
    const Matrix direct = apply(ab, tensor(ra, rb)).matrix();
    const Matrix split = tensor(apply(a, ra), apply(b, rb)).matrix();
    CHECK((direct - split).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random channels are trace preserving and seeded") {
    CHECK_THROWS_AS(random_channel(2, 0, 1), ParamOutOfRange);

    const Channel u = random_channel(2, 1, 9);
    CHECK(u.kraus.size() == 1);
    CHECK((u.kraus[0].adjoint() * u.kraus[0] - Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    const Channel c1 = random_channel(3, 2, 33);
    const Channel c2 = random_channel(3, 2, 33);
    REQUIRE(c1.kraus.size() == c2.kraus.size());
    for (std::size_t i = 0; i < c1.kraus.size(); ++i)
        CHECK((c1.kraus[i] - c2.kraus[i]).cwiseAbs().maxCoeff() == 0.0);

    // A valid output for a valid input, i.e. CPTP end to end.
    CHECK_NOTHROW(apply(c1, random_density_matrix(3, 2)));
}
