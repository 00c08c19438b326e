#pragma once

#include "threetangle/qstate.hpp"

namespace threetangle {

enum class Measure { tau3, sqrt_tau3 };

// Global convention switch: when enabled (default), tau3 carries the
// conventional prefactor 4 so that the normalized GHZ state has tau3 = 1.
// The raw complex polynomial T below is unaffected.
void set_cww_prefactor(bool enabled);
bool cww_prefactor();
double tau3_prefactor();

// T(psi) = d1 - 2 d2 + 4 d3, homogeneous of degree 4 in the amplitudes.
cplx tau3_complex(const PureState& psi);

// tau3 = prefactor * |T|; homogeneous of degree 4 (no normalization applied).
double tau3(const PureState& psi);

// sqrt(tau3); homogeneous of degree 2.
double sqrt_tau3(const PureState& psi);

double evaluate(Measure m, const PureState& psi);

} // namespace threetangle
