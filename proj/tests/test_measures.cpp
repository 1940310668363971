#include <doctest.h>

#include <cmath>

#include "cohfrac/fraction.hpp"
#include "cohfrac/measures.hpp"
#include "cohfrac/verify.hpp"

using namespace cohfrac;

namespace {

DensityMatrix real_qubit(double off) {
    Matrix m(2, 2);
    m << 0.5, off, off, 0.5;
    return DensityMatrix(std::move(m));
}

} // namespace

TEST_CASE("l1 coherence and dephasing basics") {
    CHECK(l1_coherence(real_qubit(0.5)) == doctest::Approx(1.0));
    CHECK(l1_coherence(real_qubit(0.0)) == 0.0);

    Matrix m(3, 3);
    m << 0.4, Complex(0.1, 0.2), 0.0,
         Complex(0.1, -0.2), 0.3, 0.05,
         0.0, 0.05, 0.3;
    const DensityMatrix rho(m);
    CHECK(l1_coherence(rho) ==
          doctest::Approx(2.0 * (std::hypot(0.1, 0.2) + 0.05)));

    const DensityMatrix diag = dephase(rho);
    CHECK(l1_coherence(diag) == 0.0);
    CHECK(diag(0, 0).real() == doctest::Approx(0.4));
    CHECK(std::abs(diag(0, 1)) == 0.0);
}

TEST_CASE("binary entropy pinned values") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.9) == doctest::Approx(0.4689955935892812).epsilon(1e-14));
    CHECK(binary_entropy(0.8) == doctest::Approx(0.7219280948873623).epsilon(1e-14));
}

TEST_CASE("relative entropy of coherence") {
    CHECK(relative_entropy_coherence(real_qubit(0.5)) == doctest::Approx(1.0));
    CHECK(relative_entropy_coherence(real_qubit(0.0)) == 0.0);

    // Eigenvalues 0.75 / 0.25 against a flat diagonal.
    CHECK(relative_entropy_coherence(real_qubit(0.25)) ==
          doctest::Approx(1.0 - binary_entropy(0.25)).epsilon(1e-12));

    // Pure states: S(rho) = 0, so C_r is the diagonal entropy.
    Vector v(2);
    v << std::sqrt(0.9), std::sqrt(0.1);
    CHECK(relative_entropy_coherence(pure_to_density(PureState(v))) ==
          doctest::Approx(0.4689955935892812).epsilon(1e-12));
}

TEST_CASE("qubit intrinsic randomness") {
    CHECK(qubit_intrinsic_randomness(real_qubit(0.5)) == doctest::Approx(1.0));
    CHECK(qubit_intrinsic_randomness(real_qubit(0.0)) == 0.0);
    // C = 0.6 -> H((1 + 0.8) / 2) = H(0.9).
    CHECK(qubit_intrinsic_randomness(real_qubit(0.3)) ==
          doctest::Approx(0.4689955935892812).epsilon(1e-12));
    CHECK_THROWS_AS(qubit_intrinsic_randomness(random_density_matrix(3, 1)),
                    DimensionMismatch);
}

TEST_CASE("qubit robustness coincides with l1 coherence") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = random_density_matrix(2, s);
        CHECK(qubit_robustness(rho) == l1_coherence(rho));
    }
}

TEST_CASE("alignment holds for nonnegative matrices and phase rotations") {
    const DensityMatrix nn = verify::random_nonneg_state(4, 7);
    CHECK(check_phase_alignment(nn).aligned);

    // Conjugating by diagonal phases preserves alignment; the witness must
    // attain the l1 upper bound.
    Eigen::VectorXd th(4);
    th << 0.0, 1.1, 2.9, 4.2;
    Matrix d = Matrix::Zero(4, 4);
    for (int j = 0; j < 4; ++j) d(j, j) = std::polar(1.0, th(j));
    const DensityMatrix rotated =
        make_density_matrix(d * nn.matrix() * d.adjoint());

    const AlignmentReport rep = check_phase_alignment(rotated);
    REQUIRE(rep.aligned);
    REQUIRE(rep.witness.has_value());
    CHECK(phase_objective(rotated, *rep.witness) ==
          doctest::Approx(coherence_fraction_upper_bound(rotated))
              .epsilon(1e-12));
}

TEST_CASE("alignment fails for the strict-gap qutrit mixture") {
    const AlignmentReport rep =
        check_phase_alignment(verify::qutrit_gap_state());
    CHECK(!rep.aligned);
    CHECK(!rep.witness.has_value());
}

TEST_CASE("alignment treats entries below 1e-12 as absent") {
    // Two disconnected blocks; phases propagate independently.
    Matrix m(3, 3);
    m << 0.3, Complex(0.0, 0.15), 0.0,
         Complex(0.0, -0.15), 0.3, 0.0,
         0.0, 0.0, 0.4;
    const AlignmentReport rep = check_phase_alignment(DensityMatrix(m));
    REQUIRE(rep.aligned);
    CHECK(phase_objective(DensityMatrix(m), *rep.witness) ==
          doctest::Approx((1.0 + 0.3) / 3.0).epsilon(1e-12));
}
