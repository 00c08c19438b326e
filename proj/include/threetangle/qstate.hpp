#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "threetangle/errors.hpp"

namespace threetangle {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

// Complex amplitude vector over n qubits.  Basis index is the bit string
// q1 q2 ... qn with qubit 1 as the most significant bit.  The norm may be != 1.
struct PureState {
    int n_qubits = 0;
    cvec amplitudes;

    PureState() = default;
    PureState(int n, cvec amps) : n_qubits(n), amplitudes(std::move(amps)) {
        if (amplitudes.size() != (Eigen::Index(1) << n_qubits))
            throw WrongArity("amplitude vector length does not match qubit count");
    }

    double norm() const { return amplitudes.norm(); }
    Eigen::Index dim() const { return amplitudes.size(); }
};

struct DensityMatrix {
    cmat matrix;

    Eigen::Index dim() const { return matrix.rows(); }
};

// Orthogonal eigenstate pair with mixing probability p1 (weight of psi1).
// States may be stored unnormalized; orthogonality is still required.
struct RankTwoMixture {
    PureState psi1;
    PureState psi2;
    double p1 = 0.0;
    bool rank1 = false;   // degenerate case: p1 == 1, psi2 filled from the orthogonal complement
};

// Point on the Bloch sphere of span{psi1, psi2} in the z-parametrization
// z = sqrt((1-p)/p) e^{i phi}; z = infinity is the first-class point psi2 (p = 0).
struct BlochPoint {
    cplx z{0.0, 0.0};
    bool infinite = false;

    static BlochPoint inf() { return BlochPoint{cplx(0, 0), true}; }

    double p() const { return infinite ? 0.0 : 1.0 / (1.0 + std::norm(z)); }
    // p(z)*z, the off-diagonal weight of |Psi_z><Psi_z|; -> 0 as |z| -> infinity
    cplx pz() const { return infinite ? cplx(0, 0) : z / (1.0 + std::norm(z)); }
};

inline bool operator==(const BlochPoint& a, const BlochPoint& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.z == b.z;
}

PureState normalize(const PureState& psi);

DensityMatrix partial_trace(const PureState& psi, int traced_qubit);

RankTwoMixture eigendecompose_rank2(const DensityMatrix& rho, double rank_tol = 1e-10);

// |Psi_z> = sqrt(p(z)) (psi1_hat + z psi2_hat); z = infinity returns psi2_hat.
PureState bloch_superpose(const PureState& psi1, const PureState& psi2, const BlochPoint& z);

// rho reconstructed from the mixture: p1 |psi1_hat><psi1_hat| + (1-p1)|psi2_hat><psi2_hat|
DensityMatrix reconstruct(const RankTwoMixture& mix);

// One-qubit operator applied to the given qubit (1 = most significant bit).
PureState apply_local(const PureState& psi, int qubit, const Eigen::Matrix2cd& op);

} // namespace threetangle
