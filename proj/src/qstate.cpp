#include "threetangle/qstate.hpp"

#include <Eigen/Eigenvalues>

namespace threetangle {

PureState normalize(const PureState& psi) {
    double n = psi.norm();
    if (n < 1e-14) throw ZeroState("cannot normalize a (near-)zero state");
    return PureState{psi.n_qubits, psi.amplitudes / n};
}

DensityMatrix partial_trace(const PureState& psi, int traced_qubit) {
    if (psi.n_qubits != 4) throw WrongArity("partial_trace expects a four-qubit state");
    if (traced_qubit < 1 || traced_qubit > 4)
        throw IndexOutOfRange("traced_qubit must be in 1..4");

    // Reindex so the traced qubit becomes the least significant bit, then
    // contract.  Qubit k (1-based, MSB first) sits at bit position (4 - k).
    const int tbit = 4 - traced_qubit;
    cmat M(8, 2);
    for (int idx = 0; idx < 16; ++idx) {
        int t = (idx >> tbit) & 1;
        int rest = 0, out = 0;
        for (int b = 3; b >= 0; --b) {
            if (b == tbit) continue;
            rest = (rest << 1) | ((idx >> b) & 1);
        }
        out = rest;
        M(out, t) = psi.amplitudes(idx);
    }
    DensityMatrix rho;
    rho.matrix = M * M.adjoint();
    return rho;
}

RankTwoMixture eigendecompose_rank2(const DensityMatrix& rho, double rank_tol) {
    Eigen::SelfAdjointEigenSolver<cmat> es(rho.matrix);
    const auto& ev = es.eigenvalues();
    const Eigen::Index n = ev.size();
    if (n >= 3 && ev(n - 3) > rank_tol)
        throw RankExceeded("density matrix has rank > 2 beyond tolerance");

    // Deterministic phase convention: largest-magnitude component real positive.
    auto fix_phase = [](cvec v) {
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        cplx a = v(imax);
        if (std::abs(a) > 0) v *= std::conj(a) / std::abs(a);
        return v;
    };

    int nq = 0;
    while ((Eigen::Index(1) << (nq + 1)) <= n) ++nq;

    RankTwoMixture mix;
    double p1 = ev(n - 1);
    double p2 = n >= 2 ? std::max(ev(n - 2), 0.0) : 0.0;
    mix.p1 = p1 / (p1 + p2 > 0 ? p1 + p2 : 1.0);
    mix.psi1 = PureState{nq, fix_phase(es.eigenvectors().col(n - 1))};
    mix.psi2 = PureState{nq, fix_phase(es.eigenvectors().col(n - 2))};
    mix.rank1 = p2 <= rank_tol;
    return mix;
}

PureState bloch_superpose(const PureState& psi1, const PureState& psi2, const BlochPoint& z) {
    PureState h1 = normalize(psi1);
    PureState h2 = normalize(psi2);
    if (z.infinite) return h2;
    double sp = std::sqrt(1.0 / (1.0 + std::norm(z.z)));
    return PureState{psi1.n_qubits, sp * (h1.amplitudes + z.z * h2.amplitudes)};
}

PureState apply_local(const PureState& psi, int qubit, const Eigen::Matrix2cd& op) {
    if (qubit < 1 || qubit > psi.n_qubits)
        throw IndexOutOfRange("qubit index out of range");
    const int bit = psi.n_qubits - qubit;
    cvec out = cvec::Zero(psi.dim());
    for (Eigen::Index idx = 0; idx < psi.dim(); ++idx) {
        const int b = int(idx >> bit) & 1;
        const Eigen::Index base = idx & ~(Eigen::Index(1) << bit);
        out(base) += op(0, b) * psi.amplitudes(idx);
        out(base | (Eigen::Index(1) << bit)) += op(1, b) * psi.amplitudes(idx);
    }
    return PureState{psi.n_qubits, out};
}

DensityMatrix reconstruct(const RankTwoMixture& mix) {
    cvec h1 = normalize(mix.psi1).amplitudes;
    cvec h2 = normalize(mix.psi2).amplitudes;
    DensityMatrix rho;
    rho.matrix = mix.p1 * (h1 * h1.adjoint()) + (1.0 - mix.p1) * (h2 * h2.adjoint());
    return rho;
}

} // namespace threetangle
