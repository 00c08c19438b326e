#include <doctest.h>

#include <cmath>

#include "threetangle/atlas.hpp"
#include "threetangle/qstate.hpp"

using namespace threetangle;

namespace {

PureState ghz4() {
    cvec v = cvec::Zero(16);
    v(0b0000) = v(0b1111) = 1.0 / std::sqrt(2.0);
    return PureState{4, v};
}

}  // namespace

TEST_CASE("normalize rescales to unit norm") {
    cvec v(8);
    v.setZero();
    v(0) = cplx(3.0, 4.0);
    PureState n = normalize(PureState{3, v});
    CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(n.amplitudes(0) - cplx(0.6, 0.8)) < 1e-14);
}

TEST_CASE("normalize rejects the zero state") {
    CHECK_THROWS_AS(normalize(PureState{3, cvec::Zero(8)}), ZeroState);
}

TEST_CASE("amplitude vector length must match the qubit count") {
    CHECK_THROWS_AS(PureState(3, cvec::Zero(4)), WrongArity);
    CHECK_NOTHROW(PureState(2, cvec::Zero(4)));
}

TEST_CASE("partial trace of the 4-qubit GHZ state") {
    for (int q = 1; q <= 4; ++q) {
        DensityMatrix rho = partial_trace(ghz4(), q);
        REQUIRE(rho.dim() == 8);
        CHECK(std::abs(rho.matrix.trace() - 1.0) < 1e-14);
        // equal mixture of |000> and |111>, no coherences survive the trace
        CHECK(std::abs(rho.matrix(0, 0) - 0.5) < 1e-14);
        CHECK(std::abs(rho.matrix(7, 7) - 0.5) < 1e-14);
        CHECK(std::abs(rho.matrix(0, 7)) < 1e-14);
    }
}

TEST_CASE("partial trace validates its arguments") {
    CHECK_THROWS_AS(partial_trace(ghz4(), 0), IndexOutOfRange);
    CHECK_THROWS_AS(partial_trace(ghz4(), 5), IndexOutOfRange);
    CHECK_THROWS_AS(partial_trace(PureState{3, cvec::Unit(8, 0)}, 1), WrongArity);
}

TEST_CASE("partial trace keeps qubit 1 as the most significant bit") {
    // |psi> = |0>_1 |111>_{2,3,4}: tracing qubit 4 must leave |011><011|
    cvec v = cvec::Zero(16);
    v(0b0111) = 1.0;
    DensityMatrix rho = partial_trace(PureState{4, v}, 4);
    CHECK(std::abs(rho.matrix(0b011, 0b011) - 1.0) < 1e-14);
}

TEST_CASE("rank-2 eigendecomposition recovers a constructed mixture") {
    cvec u = cvec::Zero(8), w = cvec::Zero(8);
    u(0) = 0.8;
    u(3) = cplx(0.0, 0.6);
    w(5) = 1.0;
    DensityMatrix rho;
    rho.matrix = 0.7 * (u * u.adjoint()) + 0.3 * (w * w.adjoint());
    RankTwoMixture mix = eigendecompose_rank2(rho);
    CHECK(mix.p1 == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(std::abs(mix.psi1.amplitudes.dot(u)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mix.psi2.amplitudes.dot(w)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(mix.rank1);
}

TEST_CASE("rank-2 eigendecomposition golden value") {
    // class-2 family point (0.65, 0.35, 0.5), qubit 4 traced out
    ClassSpec s{2, 0.65, 0.35, 0.5, std::nullopt};
    RankTwoMixture mix = eigendecompose_rank2(partial_trace(class_state(s), 4));
    CHECK(mix.p1 == doctest::Approx(0.744498777506).epsilon(1e-10));
}

TEST_CASE("eigendecomposition rejects rank above two") {
    DensityMatrix rho;
    rho.matrix = cmat::Identity(8, 8) / 8.0;
    CHECK_THROWS_AS(eigendecompose_rank2(rho), RankExceeded);
}

TEST_CASE("eigendecomposition flags rank-1 input") {
    cvec u = cvec::Unit(8, 2);
    DensityMatrix rho;
    rho.matrix = u * u.adjoint();
    RankTwoMixture mix = eigendecompose_rank2(rho);
    CHECK(mix.rank1);
    CHECK(mix.p1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bloch_superpose endpoints and weighting") {
    PureState a{3, 2.0 * cvec::Unit(8, 0)};  // unnormalized on purpose
    PureState b{3, cvec::Unit(8, 7)};
    PureState at0 = bloch_superpose(a, b, BlochPoint{});
    CHECK(std::abs(at0.amplitudes(0) - 1.0) < 1e-14);
    PureState atinf = bloch_superpose(a, b, BlochPoint::inf());
    CHECK(std::abs(atinf.amplitudes(7) - 1.0) < 1e-14);

    BlochPoint z{cplx(1.0, 1.0)};
    PureState mid = bloch_superpose(a, b, z);
    CHECK(std::norm(mid.amplitudes(0)) == doctest::Approx(z.p()).epsilon(1e-12));
    CHECK(mid.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reconstruct returns the mixture density matrix") {
    ClassSpec s{3, 1.2, 0.8, std::nullopt, std::nullopt};
    DensityMatrix rho = partial_trace(class_state(s), 1);
    RankTwoMixture mix = eigendecompose_rank2(rho);
    CHECK((reconstruct(mix).matrix - rho.matrix).norm() < 1e-12);
}

TEST_CASE("apply_local acts on the addressed qubit only") {
    Eigen::Matrix2cd X;
    X << 0, 1, 1, 0;
    PureState psi{3, cvec::Unit(8, 0)};
    CHECK(std::abs(apply_local(psi, 1, X).amplitudes(0b100) - 1.0) < 1e-14);
    CHECK(std::abs(apply_local(psi, 3, X).amplitudes(0b001) - 1.0) < 1e-14);
    CHECK_THROWS_AS(apply_local(psi, 0, X), IndexOutOfRange);
    CHECK_THROWS_AS(apply_local(psi, 4, X), IndexOutOfRange);
}

TEST_CASE("apply_local with a unitary preserves the norm") {
    Eigen::Matrix2cd H;
    H << 1, 1, 1, -1;
    H /= std::sqrt(2.0);
    cvec v(8);
    for (int i = 0; i < 8; ++i) v(i) = cplx(0.1 * i, -0.05 * i * i);
    PureState psi{3, v};
    for (int q = 1; q <= 3; ++q)
        CHECK(apply_local(psi, q, H).norm() == doctest::Approx(psi.norm()).epsilon(1e-13));
}
