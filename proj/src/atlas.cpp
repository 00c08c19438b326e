#include "threetangle/atlas.hpp"

#include <cmath>

namespace threetangle {

namespace {

constexpr cplx I{0.0, 1.0};

void check_arity(const ClassSpec& spec, int n_used) {
    if (spec.class_id < 1 || spec.class_id > 6)
        throw ArityError("class_id must be 1..6");
    const std::optional<cplx>* pars[4] = {&spec.a, &spec.b, &spec.c, &spec.d};
    const char* names = "abcd";
    for (int i = 0; i < 4; ++i) {
        if (i < n_used && !pars[i]->has_value())
            throw ArityError(std::string("class ") + std::to_string(spec.class_id) +
                             " requires parameter " + names[i]);
        if (i >= n_used && pars[i]->has_value())
            throw ArityError(std::string("class ") + std::to_string(spec.class_id) +
                             " does not take parameter " + names[i]);
    }
}

int class_arity(int class_id) {
    switch (class_id) {
        case 1: return 4;
        case 2: return 3;
        case 3:
        case 4: return 2;
        default: return 1;
    }
}

// Raw four-qubit amplitudes of the family representative, before normalization.
cvec raw_class_amplitudes(const ClassSpec& spec) {
    check_arity(spec, class_arity(spec.class_id));
    cvec v = cvec::Zero(16);
    const cplx a = spec.a.value_or(0.0), b = spec.b.value_or(0.0);
    const cplx c = spec.c.value_or(0.0), d = spec.d.value_or(0.0);
    switch (spec.class_id) {
        case 1:
            v[0b0000] = v[0b1111] = (a + d) / 2.0;
            v[0b0011] = v[0b1100] = (a - d) / 2.0;
            v[0b0101] = v[0b1010] = (b + c) / 2.0;
            v[0b0110] = v[0b1001] = (b - c) / 2.0;
            break;
        case 2:
            v[0b0000] = v[0b1111] = (a + b) / 2.0;
            v[0b0011] = v[0b1100] = (a - b) / 2.0;
            v[0b0101] = v[0b1010] = c;
            v[0b0110] = 1.0;
            break;
        case 3:
            v[0b0000] = v[0b1111] = a;
            v[0b0101] = v[0b1010] = b;
            v[0b0110] = v[0b0011] = 1.0;
            break;
        case 4:
            v[0b0000] = v[0b1111] = a;
            v[0b0101] = v[0b1010] = (a + b) / 2.0;
            v[0b0110] = v[0b1001] = (a - b) / 2.0;
            v[0b0001] = v[0b0010] = v[0b0111] = v[0b1011] = I / std::sqrt(2.0);
            break;
        case 5:
            v[0b0000] = v[0b1111] = v[0b0101] = v[0b1010] = a;
            v[0b0001] = I;
            v[0b1011] = -I;
            v[0b0110] = 1.0;
            break;
        case 6:
            v[0b0000] = v[0b1111] = a;
            v[0b0011] = v[0b0101] = v[0b0110] = 1.0;
            break;
    }
    return v;
}

PureState three_qubit(std::initializer_list<std::pair<int, cplx>> terms) {
    cvec v = cvec::Zero(8);
    for (const auto& [idx, amp] : terms) v[idx] += amp;
    return PureState{3, v};
}

// Tabulated eigenpair, verbatim (unnormalized, conjugated parameters), for
// the reductions that have one.
void fill_printed(ReductionCase& rc, const ClassSpec& spec) {
    const cplx ac = std::conj(spec.a.value_or(0.0));
    const cplx bc = std::conj(spec.b.value_or(0.0));
    const cplx cc = std::conj(spec.c.value_or(0.0));
    const double a2 = std::norm(spec.a.value_or(0.0));
    const double b2 = std::norm(spec.b.value_or(0.0));
    const double c2 = std::norm(spec.c.value_or(0.0));
    switch (rc.class_id) {
        case 2: {
            rc.printed_psi1 = three_qubit({{0b001, ac - bc}, {0b010, 2.0 * cc}, {0b111, ac + bc}});
            rc.printed_psi2 = three_qubit(
                {{0b000, ac + bc}, {0b110, ac - bc}, {0b101, 2.0 * cc}, {0b011, 2.0}});
            rc.printed_p1 = (a2 + b2 + 2.0 * c2) / (2.0 * (1.0 + a2 + b2 + 2.0 * c2));
            break;
        }
        case 3: {
            rc.printed_psi1 = three_qubit({{0b010, bc}, {0b111, ac}});
            rc.printed_psi2 = three_qubit({{0b000, ac}, {0b101, bc}, {0b011, 1.0}, {0b110, 1.0}});
            rc.printed_p1 = (a2 + b2) / (2.0 * (1.0 + a2 + b2));
            break;
        }
        case 4: {
            const cplx a = spec.a.value_or(0.0);
            const double sm = std::sqrt(1.0 + 8.0 * a2) - 1.0;
            const double sp = std::sqrt(1.0 + 8.0 * a2) + 1.0;
            const double r2 = std::sqrt(2.0);
            rc.printed_psi1 = three_qubit({{0b000, I * r2 * ac * sm},
                                           {0b001, sm - 2.0 * a * (ac - bc)},
                                           {0b010, sm - 2.0 * a * (ac + bc)},
                                           {0b011, 2.0 * I * r2 * a},
                                           {0b101, (I / r2) * sm * (ac + bc)},
                                           {0b110, (I / r2) * sm * (ac - bc)},
                                           {0b111, sm - 4.0 * a2}});
            rc.printed_psi2 = three_qubit({{0b000, I * r2 * ac * sp},
                                           {0b001, sp + 2.0 * a * (ac - bc)},
                                           {0b010, sp + 2.0 * a * (ac + bc)},
                                           {0b011, -2.0 * I * r2 * a},
                                           {0b101, (I / r2) * sp * (ac + bc)},
                                           {0b110, (I / r2) * sp * (ac - bc)},
                                           {0b111, sp + 4.0 * a2}});
            rc.printed_p1 = (2.0 + 3.0 * a2 + b2 - std::sqrt(1.0 + 8.0 * a2)) /
                            (4.0 + 6.0 * a2 + 2.0 * b2);
            break;
        }
        case 5: {
            if (rc.subcase == 1) {
                rc.printed_psi1 =
                    three_qubit({{0b000, -I}, {0b010, ac}, {0b101, I}, {0b111, ac}});
                rc.printed_psi2 = three_qubit({{0b000, ac}, {0b011, 1.0}, {0b101, ac}});
            } else {
                rc.printed_psi1 =
                    three_qubit({{0b010, 1.0}, {0b100, ac}, {0b101, I}, {0b111, ac}});
                rc.printed_psi2 = three_qubit({{0b000, ac}, {0b001, -I}, {0b011, ac}});
            }
            rc.printed_p1 = 2.0 * (1.0 + a2) / (3.0 + 4.0 * a2);
            break;
        }
        case 6: {
            rc.printed_psi1 = three_qubit({{0b111, 1.0}});
            rc.printed_psi2 =
                three_qubit({{0b000, ac}, {0b011, 1.0}, {0b101, 1.0}, {0b110, 1.0}});
            rc.printed_p1 = a2 / (3.0 + 2.0 * a2);
            break;
        }
    }
}

// Append a root, merging exact coincidences (cusps where distinct closed-form
// roots fall together).
void add_root(ZeroSet& zs, cplx z, int mult, double tol = 1e-12) {
    for (auto& r : zs.roots) {
        if (std::abs(r.z - z) <= tol * std::max(1.0, std::abs(z))) {
            r.multiplicity += mult;
            return;
        }
    }
    zs.roots.push_back({z, mult, 0.0});
}

}  // namespace

PureState class_state(const ClassSpec& spec) {
    cvec v = raw_class_amplitudes(spec);
    return normalize(PureState{4, v});
}

ReductionCase reduction(const ClassSpec& spec, int traced_qubit) {
    if (traced_qubit < 1 || traced_qubit > 4)
        throw IndexOutOfRange("traced_qubit must be 1..4");
    check_arity(spec, class_arity(spec.class_id));
    ReductionCase rc;
    rc.class_id = spec.class_id;
    rc.traced_qubit = traced_qubit;
    switch (spec.class_id) {
        case 1:
            rc.kind = ReductionKind::zero_roof;
            return rc;
        case 2:
            rc.kind = traced_qubit == 4 ? ReductionKind::printed : ReductionKind::equivalent;
            rc.printed_qubit = 4;
            break;
        case 3:
            if (traced_qubit == 2 || traced_qubit == 4) {
                rc.kind = ReductionKind::zero_roof;
                return rc;
            }
            rc.kind = traced_qubit == 1 ? ReductionKind::printed : ReductionKind::equivalent;
            rc.printed_qubit = 1;
            break;
        case 4:
            rc.kind = traced_qubit == 1 ? ReductionKind::printed : ReductionKind::equivalent;
            rc.printed_qubit = 1;
            break;
        case 5:
            // Qubits 4 and 2 share the fourfold-zero family; 3 and 1 the
            // anchor family. Eigenpairs are tabulated for qubits 4 and 3.
            rc.subcase = (traced_qubit == 4 || traced_qubit == 2) ? 1 : 2;
            rc.kind = (traced_qubit == 4 || traced_qubit == 3) ? ReductionKind::printed
                                                               : ReductionKind::equivalent;
            rc.printed_qubit = rc.subcase == 1 ? 4 : 3;
            break;
        case 6:
            if (traced_qubit != 1) {
                rc.kind = ReductionKind::zero_roof;
                return rc;
            }
            rc.kind = ReductionKind::printed;
            rc.printed_qubit = 1;
            break;
    }
    ReductionCase filled = rc;
    if (rc.kind == ReductionKind::printed) {
        fill_printed(filled, spec);
    } else {
        // spectrum (and hence p1) matches the tabulated partner
        ReductionCase partner = rc;
        partner.kind = ReductionKind::printed;
        fill_printed(partner, spec);
        filled.printed_p1 = partner.printed_p1;
    }
    return filled;
}

RankTwoMixture reduction_mixture(const ClassSpec& spec, const ReductionCase& rc) {
    if (rc.kind == ReductionKind::printed) {
        // Parameter boundaries can collapse a tabulated eigenvector to zero
        // (class 4 at a = 0); fall back to the numerical path there.
        if (rc.printed_psi1.norm() > 1e-12 && rc.printed_psi2.norm() > 1e-12) {
            RankTwoMixture mix;
            mix.psi1 = normalize(PureState{3, rc.printed_psi1.amplitudes.conjugate()});
            mix.psi2 = normalize(PureState{3, rc.printed_psi2.amplitudes.conjugate()});
            mix.p1 = rc.printed_p1;
            return mix;
        }
        // Keep the tabulated orientation: the eigensolver orders by eigenvalue,
        // so swap back when the tabulated psi1 is the minor eigenvector.
        RankTwoMixture mix = eigendecompose_rank2(partial_trace(class_state(spec), rc.traced_qubit));
        if (std::abs(mix.p1 - rc.printed_p1) > std::abs(1.0 - mix.p1 - rc.printed_p1)) {
            std::swap(mix.psi1, mix.psi2);
            mix.p1 = 1.0 - mix.p1;
        }
        return mix;
    }
    return eigendecompose_rank2(partial_trace(class_state(spec), rc.traced_qubit));
}

ZeroSet zero_locations(const ClassSpec& spec, const ReductionCase& rc) {
    if (rc.kind != ReductionKind::printed)
        throw NoPrintedData("closed-form zeros are tabulated only for printed reductions");
    const cplx a = spec.a.value_or(0.0), b = spec.b.value_or(0.0), c = spec.c.value_or(0.0);
    const double a2 = std::norm(a), b2 = std::norm(b), c2 = std::norm(c);
    ZeroSet zs;
    switch (rc.class_id) {
        case 2: {
            // z0^2 = -(a^2-c^2)(b^2-c^2)(N+1) / (c (a^2-b^2)(N-1)); the mixture
            // convention takes the conjugate of the tabulated expression.
            const double N = 1.0 + a2 + b2 + 2.0 * c2;
            const cplx num = -(a * a - c * c) * (b * b - c * c) * (N + 1.0);
            const cplx den = c * (a * a - b * b) * (N - 1.0);
            add_root(zs, 0.0, 2);
            if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(num))) break;  // degenerate family
            const cplx z0 = std::sqrt(std::conj(num / den));
            add_root(zs, z0, 1);
            add_root(zs, -z0, 1);
            break;
        }
        case 3: {
            const cplx z0p = I * std::conj((a * a - b * b) / (2.0 * std::sqrt(a * b))) *
                             std::sqrt(cplx((2.0 + a2 + b2) / (a2 + b2)));
            const cplx z0 = std::conj(z0p);
            add_root(zs, 0.0, 2);
            add_root(zs, z0, 1);
            add_root(zs, -z0, 1);
            break;
        }
        case 4: {
            const double sm = std::sqrt(1.0 + 8.0 * a2) - 1.0;
            const double sp = std::sqrt(1.0 + 8.0 * a2) + 1.0;
            const double n1 = rc.printed_psi1.norm();
            // sm * |psi2|/|psi1| -> 0 as a -> 0 (both scale away together)
            add_root(zs, n1 > 1e-12 ? -(sm / sp) * (rc.printed_psi2.norm() / n1) : 0.0, 4);
            break;
        }
        case 5: {
            if (rc.subcase == 1) {
                zs.infinity_multiplicity = 4;
            } else {
                const cplx z0p = 8.0 * std::sqrt(2.0) * I * std::conj(a) * std::conj(a) *
                                 std::sqrt(cplx((1.0 + a2) / (1.0 + 2.0 * a2)));
                zs.infinity_multiplicity = 3;
                add_root(zs, -1.0 / std::conj(z0p), 1);
            }
            break;
        }
        case 6: {
            const cplx z0p = 0.5 * std::sqrt(std::conj(a) * (3.0 + a2));
            const cplx z0 = I * std::conj(z0p);
            add_root(zs, 0.0, 2);
            add_root(zs, z0, 1);
            add_root(zs, -z0, 1);
            break;
        }
        default:
            throw NoPrintedData("no closed-form zeros for this class");
    }
    return zs;
}

std::optional<RoofFormula> closed_form_roof(const ClassSpec& spec, const ReductionCase& rc,
                                            Measure measure) {
    if (rc.kind == ReductionKind::zero_roof) return RoofFormula{0.0, RoofStatus::exact};
    const cplx a = spec.a.value_or(0.0), b = spec.b.value_or(0.0), c = spec.c.value_or(0.0);
    const double a2 = std::norm(a), b2 = std::norm(b), c2 = std::norm(c);
    switch (rc.class_id) {
        case 2: {
            if (measure != Measure::sqrt_tau3) return std::nullopt;  // implicit convexification
            const double N = 1.0 + a2 + b2 + 2.0 * c2;
            const double X = std::abs((a * a - b * b) * c);
            const cplx num = -(a * a - c * c) * (b * b - c * c) * (N + 1.0);
            const cplx den = c * (a * a - b * b) * (N - 1.0);
            double z0sq = std::abs(den) < 1e-14 * std::max(1.0, std::abs(num))
                              ? 0.0
                              : std::abs(num / den);  // |z0|^2 = |z0^2|
            const double p1 = (N - 1.0) / (2.0 * N);
            const double value = 4.0 * std::sqrt(X) / (N + 1.0) * (1.0 - p1 * (1.0 + z0sq));
            return RoofFormula{std::max(0.0, value), RoofStatus::exact};
        }
        case 3: {
            if (measure != Measure::sqrt_tau3) return std::nullopt;
            const double ab = std::abs(a * b);
            const double value = (4.0 * ab - std::norm(a * a - b * b)) /
                                 (2.0 * std::sqrt(ab) * (1.0 + a2 + b2));
            return RoofFormula{std::max(0.0, value), RoofStatus::exact};
        }
        case 4: {
            const double den = 2.0 + 3.0 * a2 + b2;
            const double tau = 2.0 * std::abs(a * a - b * b) / (den * den);
            return RoofFormula{measure == Measure::tau3 ? tau : std::sqrt(tau),
                               RoofStatus::exact};
        }
        case 5: {
            if (rc.subcase == 1) {
                const double den = 3.0 + 4.0 * a2;
                const double tau = 16.0 * a2 / (den * den);
                return RoofFormula{measure == Measure::tau3 ? tau : std::sqrt(tau),
                                   RoofStatus::exact};
            }
            if (measure != Measure::sqrt_tau3) return std::nullopt;
            return RoofFormula{std::sqrt(class5_new_bound(a)), RoofStatus::upper_bound};
        }
        case 6: {
            if (measure != Measure::sqrt_tau3) return std::nullopt;
            const double am = std::abs(a);
            const double value =
                std::sqrt(am) * (4.0 - am * am * am) / (3.0 + 2.0 * a2);
            return RoofFormula{std::max(0.0, value), RoofStatus::exact};
        }
        default:
            return RoofFormula{0.0, RoofStatus::exact};  // class 1
    }
}

double adesso_regula_bound(const ClassSpec& spec) {
    if (spec.class_id != 2) throw ArityError("comparison bound is defined for class 2");
    check_arity(spec, 3);
    const cplx a = *spec.a, b = *spec.b, c = *spec.c;
    const double N = 1.0 + std::norm(a) + std::norm(b) + 2.0 * std::norm(c);
    return 4.0 * std::abs((a * a - b * b) * c) / (N * N);
}

double class5_new_bound(const cplx& a) {
    const double a2 = std::norm(a);
    const double d1 = 3.0 + 4.0 * a2;
    return 4.0 / (d1 * d1 * (1.0 + 64.0 * a2 * a2));
}

double class5_old_bound(const cplx& a) {
    const double d1 = 3.0 + 4.0 * std::norm(a);
    return 4.0 / (d1 * d1);
}

double class6_printed_roof_sq(const cplx& a) {
    const double am = std::abs(a);
    const double den = 2.0 * am * am + 3.0;
    const double t = am * am * am - 4.0;
    return am * t * t / (den * den);
}

}  // namespace threetangle
