#include "threetangle/invariant.hpp"

#include <atomic>
#include <cmath>

namespace threetangle {

namespace {
std::atomic<bool> g_cww_prefactor{true};
}

void set_cww_prefactor(bool enabled) { g_cww_prefactor.store(enabled); }
bool cww_prefactor() { return g_cww_prefactor.load(); }
double tau3_prefactor() { return g_cww_prefactor.load() ? 4.0 : 1.0; }

cplx tau3_complex(const PureState& psi) {
    if (psi.n_qubits != 3) throw WrongArity("tau3 is defined on three-qubit states");
    const cvec& a = psi.amplitudes;
    // indices are the bit strings q1 q2 q3 (000 = 0 ... 111 = 7)
    cplx d1 = a(0) * a(0) * a(7) * a(7)
            + a(1) * a(1) * a(6) * a(6)
            + a(2) * a(2) * a(5) * a(5)
            + a(4) * a(4) * a(3) * a(3);
    cplx d2 = a(0) * a(7) * a(3) * a(4)
            + a(0) * a(7) * a(5) * a(2)
            + a(0) * a(7) * a(6) * a(1)
            + a(3) * a(4) * a(5) * a(2)
            + a(3) * a(4) * a(6) * a(1)
            + a(5) * a(2) * a(6) * a(1);
    cplx d3 = a(0) * a(6) * a(5) * a(3)
            + a(7) * a(1) * a(2) * a(4);
    return d1 - 2.0 * d2 + 4.0 * d3;
}

double tau3(const PureState& psi) {
    return tau3_prefactor() * std::abs(tau3_complex(psi));
}

double sqrt_tau3(const PureState& psi) {
    return std::sqrt(tau3(psi));
}

double evaluate(Measure m, const PureState& psi) {
    return m == Measure::tau3 ? tau3(psi) : sqrt_tau3(psi);
}

} // namespace threetangle
