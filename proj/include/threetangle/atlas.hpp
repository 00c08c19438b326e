#pragma once

#include <optional>

#include "threetangle/invariant.hpp"
#include "threetangle/qstate.hpp"
#include "threetangle/roofengine.hpp"

namespace threetangle {

// Parameters of a four-qubit family representative. Classes use a prefix of
// (a, b, c, d): class 1 all four, class 2 (a,b,c), classes 3-4 (a,b),
// classes 5-6 only a. Unused parameters must stay unset.
struct ClassSpec {
    int class_id = 1;
    std::optional<cplx> a, b, c, d;
};

enum class ReductionKind {
    printed,     // closed-form eigenpair available for this traced qubit
    equivalent,  // same spectrum/roof as the printed reduction of the class
    zero_roof    // roof identically zero; no eigenpair tabulated
};

// One three-qubit reduction of a class representative. The tabulated
// eigenpair is stored verbatim: unnormalized, with conjugated parameters;
// reduction_mixture() conjugates and normalizes it.
struct ReductionCase {
    int class_id = 1;
    int traced_qubit = 1;
    ReductionKind kind = ReductionKind::printed;
    int subcase = 0;        // class 5 only: 1 = fourfold-zero family, 2 = anchor family
    int printed_qubit = 0;  // for equivalent: traced qubit of the tabulated partner
    PureState printed_psi1{3, cvec::Unit(8, 0)};
    PureState printed_psi2{3, cvec::Unit(8, 0)};
    double printed_p1 = 0.0;
};

struct RoofFormula {
    double value = 0.0;
    RoofStatus status = RoofStatus::exact;
};

// Normalized representative state; raw amplitudes before normalization follow
// the tabulated family definitions. Throws ArityError when parameters are
// missing or extraneous for the class.
PureState class_state(const ClassSpec& spec);

// Reduction table for traced_qubit in 1..4.
ReductionCase reduction(const ClassSpec& spec, int traced_qubit);

// Rank-2 mixture for the reduction: conjugated-normalized tabulated eigenpair
// in tabulated order for printed cases, numerical eigendecomposition
// (descending) otherwise.
RankTwoMixture reduction_mixture(const ClassSpec& spec, const ReductionCase& rc);

// Closed-form zero set, expressed in the z-convention of reduction_mixture()
// (state ~ psi1_hat + z psi2_hat). Printed cases only (NoPrintedData otherwise).
ZeroSet zero_locations(const ClassSpec& spec, const ReductionCase& rc);

// Closed-form roof value where one exists; nullopt for the cases that are
// only defined implicitly through convexification (class 2/3/6 tau3,
// class 5 anchor-family tau3).
std::optional<RoofFormula> closed_form_roof(const ClassSpec& spec, const ReductionCase& rc,
                                            Measure measure);

// Class-2 comparison bound 4|(a^2-b^2)c| / (1 + |a|^2 + |b|^2 + 2|c|^2)^2,
// an upper bound on roof(sqrt_tau3)^2 that is tight exactly at c = +-a, +-b.
double adesso_regula_bound(const ClassSpec& spec);

// Class-5 anchor-family bounds on roof(sqrt_tau3)^2: the anchor-pairing bound
// and the looser two-state bound it improves on.
double class5_new_bound(const cplx& a);
double class5_old_bound(const cplx& a);

// Class-6 roof(sqrt_tau3)^2 as tabulated, without the sign clamp; positive
// for all a, in conflict with the vanishing threshold |a| = 2^(2/3) that the
// engine and closed_form_roof reproduce. Kept for the documented comparison.
double class6_printed_roof_sq(const cplx& a);

}  // namespace threetangle
