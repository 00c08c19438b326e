// Acceptance suite: one PASS/FAIL line per criterion, WARN lines for the
// documented source inconsistencies. Exit code = number of failed criteria.
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "threetangle/atlas.hpp"
#include "threetangle/oracle.hpp"
#include "threetangle/roofengine.hpp"

using namespace threetangle;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    std::printf("%s  criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void warn(const std::string& text) {
    std::printf("WARN  %s\n", text.c_str());
    std::fflush(stdout);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

RankTwoMixture mixture_of(const ClassSpec& s, int q) {
    return reduction_mixture(s, reduction(s, q));
}

double engine_roof(const ClassSpec& s, int q, Measure m) {
    return roof(mixture_of(s, q), m).value;
}

// ---------------------------------------------------------------------------
// 1. class-2 golden values: onset/offset of the nonzero window under a real
//    c sweep at step 1e-3, the two cusp values, and the three-way cusp tie.
void criterion1() {
    const double a = 0.65, b = 0.35, step = 1e-3, thr = 1e-6;
    double onset = -1.0, offset = -1.0;
    for (int k = 1; k < 1000; ++k) {
        double c = k * step;
        ClassSpec s{2, a, b, c, std::nullopt};
        RankTwoMixture mix = mixture_of(s, 4);
        bool nz = roof(mix, Measure::sqrt_tau3).value > thr &&
                  roof(mix, Measure::tau3).value > thr;
        if (nz) {
            if (onset < 0) onset = c;
            offset = c;
        }
    }
    bool ok = onset > 0 && std::abs(onset - 0.1388) <= 2e-3 && std::abs(offset - 0.9022) <= 2e-3;

    double cusp35 = engine_roof(ClassSpec{2, a, b, 0.35, std::nullopt}, 4, Measure::tau3);
    double cusp65 = engine_roof(ClassSpec{2, a, b, 0.65, std::nullopt}, 4, Measure::tau3);
    ok = ok && std::abs(cusp35 - 0.1311) <= 1e-3 && std::abs(cusp65 - 0.1366) <= 1e-3;

    for (double c : {0.35, 0.65}) {
        ClassSpec s{2, a, b, c, std::nullopt};
        double rs = engine_roof(s, 4, Measure::sqrt_tau3);
        double rt = engine_roof(s, 4, Measure::tau3);
        double ar = adesso_regula_bound(s);
        ok = ok && std::abs(rs * rs - rt) <= 1e-4 && std::abs(rt - ar) <= 1e-4;
    }
    report(1, ok, "class-2 golden values",
           "onset " + num(onset) + " offset " + num(offset) + " cusps " + num(cusp35) + "/" +
               num(cusp65));
}

// ---------------------------------------------------------------------------
// 2. class-3 at a=2: zero-window edges near |b| = 1.0498 and 2.9804; at
//    b = +-2 the two roofs agree (straight-line characteristic curve).
void criterion2() {
    const double thr = 1e-6, step = 1e-3;
    auto window_edge = [&](double lo, double hi, bool rising) {
        // first b (scanning upward) where the roof crosses the threshold
        double prev = engine_roof(ClassSpec{3, 2.0, lo, std::nullopt, std::nullopt}, 1,
                                  Measure::sqrt_tau3);
        for (double x = lo + step; x <= hi + step / 2; x += step) {
            double cur =
                engine_roof(ClassSpec{3, 2.0, x, std::nullopt, std::nullopt}, 1, Measure::sqrt_tau3);
            if (rising ? (prev <= thr && cur > thr) : (prev > thr && cur <= thr)) return x;
            prev = cur;
        }
        return -1.0;
    };
    // the roof is positive on 1.0498 < |b| < 2.9804 and vanishes outside
    double e1 = window_edge(0.95, 1.15, true);
    double e2 = window_edge(2.90, 3.05, false);
    double e1n = window_edge(-1.15, -0.95, false);
    double e2n = window_edge(-3.05, -2.90, true);
    bool ok = std::abs(e1 - 1.0498) <= 2e-3 && std::abs(e2 - 2.9804) <= 2e-3 &&
              std::abs(e1n + 1.0498) <= 2e-3 && std::abs(e2n + 2.9804) <= 2e-3;

    for (double b : {2.0, -2.0}) {
        ClassSpec s{3, 2.0, b, std::nullopt, std::nullopt};
        double rs = engine_roof(s, 1, Measure::sqrt_tau3);
        double rt = engine_roof(s, 1, Measure::tau3);
        ok = ok && std::abs(rs * rs - rt) <= 1e-6;
    }
    report(2, ok, "class-3 golden values",
           "edges " + num(e1) + "/" + num(e2) + " and " + num(e1n) + "/" + num(e2n));
}

// ---------------------------------------------------------------------------
// 3. class-4 exactness on a 21x21 grid: engine roof (both measures) equals
//    the closed form 2|a^2-b^2|/(2+3|a|^2+|b|^2)^2, and the zero-polytope is a
//    single multiplicity-4 root matching the closed-form location.
void criterion3() {
    double worst_roof = 0.0, worst_root = 0.0;
    bool structure_ok = true;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            double a = 0.1 * i, b = 0.1 * j;
            ClassSpec s{4, a, b, std::nullopt, std::nullopt};
            ReductionCase rc = reduction(s, 1);
            RankTwoMixture mix = reduction_mixture(s, rc);
            double den = 2.0 + 3.0 * a * a + b * b;
            double closed = std::max(0.0, 2.0 * std::abs(a * a - b * b) / (den * den));
            worst_roof = std::max(worst_roof,
                                  std::abs(roof(mix, Measure::tau3).value - closed));
            double rs = roof(mix, Measure::sqrt_tau3).value;
            worst_roof = std::max(worst_roof, std::abs(rs * rs - closed));
            if (std::abs(a - b) < 1e-12) continue;  // measure vanishes identically on the span
            ZeroSet engine = zero_polytope(mix);
            ZeroSet tab = zero_locations(s, rc);
            structure_ok = structure_ok && engine.roots.size() == 1 &&
                           engine.roots[0].multiplicity == 4 &&
                           engine.infinity_multiplicity == 0;
            if (!engine.roots.empty())
                worst_root = std::max(worst_root, std::abs(engine.roots[0].z - tab.roots[0].z));
        }
    bool ok = structure_ok && worst_roof < 1e-6 && worst_root < 1e-8;
    report(3, ok, "class-4 exactness",
           "worst roof gap " + num(worst_roof) + ", worst root gap " + num(worst_root));
    warn("class-4 closed form: the source denominator 2+3|a|^2+|b|^2 reads unsquared, but only "
         "the squared denominator matches engine and brute-force values (normalization is "
         "quartic); root location carries the (sqrt(1+8|a|^2)-1)/(sqrt(1+8|a|^2)+1) factor");
}

// ---------------------------------------------------------------------------
// 4. class-5 bounds on a in [0,2], 41 points.
void criterion4() {
    double worst_a = 0.0, worst_b = 0.0;
    bool strict = true;
    for (int k = 0; k <= 40; ++k) {
        double a = 0.05 * k;
        ClassSpec s{5, a, std::nullopt, std::nullopt, std::nullopt};
        double den = 3.0 + 4.0 * a * a;
        double caseA = 16.0 * a * a / (den * den);
        worst_a = std::max(worst_a, std::abs(engine_roof(s, 4, Measure::tau3) - caseA));
        double rs = engine_roof(s, 3, Measure::sqrt_tau3);
        worst_b = std::max(worst_b, std::abs(rs * rs - class5_new_bound(a)));
        if (a > 0.0) strict = strict && class5_new_bound(a) < class5_old_bound(a);
    }
    bool at0 = std::abs(class5_new_bound(0.0) - 4.0 / 9.0) < 1e-12 &&
               std::abs(class5_old_bound(0.0) - 4.0 / 9.0) < 1e-12;
    bool ok = worst_a < 1e-6 && worst_b < 1e-6 && strict && at0;
    report(4, ok, "class-5 bounds",
           "case-A gap " + num(worst_a) + ", case-B gap " + num(worst_b));
    warn("class-5 improved case-B bound: the source display is dimensionally inconsistent "
         "(exceeds the two-state bound it improves on); the implemented bound "
         "4/((3+4|a|^2)^2 (1+64|a|^4)) matches the anchor-family optimum to 1e-8 and both "
         "bounds meet at 4/9 for a=0 as stated");
}

// ---------------------------------------------------------------------------
// 5. oracle concordance: m=4, 32 restarts, fixed seed, 5 points per class.
void criterion5() {
    struct Pt {
        ClassSpec spec;
        int qubit;
    };
    std::vector<Pt> pts;
    for (double c : {0.2, 0.35, 0.5, 0.65, 0.8})
        pts.push_back({ClassSpec{2, 0.65, 0.35, c, std::nullopt}, 4});
    for (double b : {0.8, 1.0, 1.2, 1.4, 1.6})
        pts.push_back({ClassSpec{3, 1.2, b, std::nullopt, std::nullopt}, 1});
    for (auto [a, b] : {std::pair<double, double>{0.9, 0.4},
                        {0.5, 1.2},
                        {1.5, 0.3},
                        {0.3, 1.8},
                        {1.2, 2.0}})
        pts.push_back({ClassSpec{4, a, b, std::nullopt, std::nullopt}, 1});
    for (double a : {0.4, 0.8, 1.1, 1.3, 1.5})
        pts.push_back({ClassSpec{6, a, std::nullopt, std::nullopt, std::nullopt}, 1});
    for (double a : {0.3, 0.6, 1.0, 1.4, 1.8})
        pts.push_back({ClassSpec{5, a, std::nullopt, std::nullopt, std::nullopt}, 4});

    double worst_gap = 0.0, worst_undercut = 0.0;
    bool all_exact = true;
    for (const auto& pt : pts) {
        RankTwoMixture mix = mixture_of(pt.spec, pt.qubit);
        RoofResult r = roof(mix, Measure::sqrt_tau3);
        all_exact = all_exact && r.status == RoofStatus::exact;
        double oracle = brute_force_roof(mix, Measure::sqrt_tau3, 4, 32, 17, 6000).value;
        worst_gap = std::max(worst_gap, std::abs(oracle - r.value));
        worst_undercut = std::max(worst_undercut, r.value - oracle);
    }
    bool ok = all_exact && worst_gap < 1e-3 && worst_undercut < 1e-6;
    report(5, ok, "oracle concordance",
           "worst |gap| " + num(worst_gap) + ", worst undercut " + num(worst_undercut));
}

// ---------------------------------------------------------------------------
// 6. invariance suite on 100 random states/group elements.
void criterion6() {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    auto rand_state = [&] {
        cvec v(8);
        for (int i = 0; i < 8; ++i) v(i) = cplx(g(rng), g(rng));
        return PureState{3, v};
    };
    auto rand_sl2 = [&] {
        Eigen::Matrix2cd M;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) M(i, j) = cplx(g(rng), g(rng));
        return Eigen::Matrix2cd(M / std::sqrt(M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0)));
    };

    double worst_h = 0.0, worst_sl = 0.0, worst_perm = 0.0;
    for (int t = 0; t < 100; ++t) {
        PureState psi = rand_state();
        double base = tau3(psi);
        cplx lam(g(rng), g(rng));
        double m4 = std::pow(std::abs(lam), 4);
        worst_h = std::max(worst_h, std::abs(tau3(PureState{3, lam * psi.amplitudes}) -
                                             m4 * base) /
                                        std::max(1.0, m4 * base));
        PureState t3 = psi;
        for (int q = 1; q <= 3; ++q) t3 = apply_local(t3, q, rand_sl2());
        worst_sl = std::max(worst_sl, std::abs(tau3(t3) - base) / std::max(1.0, base));
        cvec perm(8);  // cyclic qubit permutation (1 2 3)
        for (int i = 0; i < 8; ++i)
            perm(((i & 3) << 1) | ((i >> 2) & 1)) = psi.amplitudes(i);
        worst_perm = std::max(worst_perm, std::abs(tau3(PureState{3, perm}) - base) /
                                              std::max(1.0, base));
    }
    bool ok = worst_h < 1e-8 && worst_sl < 1e-8 && worst_perm < 1e-12;
    report(6, ok, "invariance suite",
           "homogeneity " + num(worst_h) + ", SL " + num(worst_sl) + ", permutation " +
               num(worst_perm));
}

// ---------------------------------------------------------------------------
// 7. structural roof properties on 200 random rank-2 mixtures.
void criterion7() {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst_order = 0.0, worst_rec = 0.0, worst_avg = 0.0, worst_res = 0.0;
    for (int t = 0; t < 200; ++t) {
        cvec v(16);
        for (int i = 0; i < 16; ++i) v(i) = cplx(g(rng), g(rng));
        int q = 1 + int(rng() % 4);
        PureState psi = normalize(PureState{4, v});
        RankTwoMixture mix = eigendecompose_rank2(partial_trace(psi, q));

        RoofResult rt = roof(mix, Measure::tau3);
        RoofResult rs = roof(mix, Measure::sqrt_tau3);
        worst_order = std::max(worst_order, rs.value * rs.value - rt.value);
        worst_rec = std::max(worst_rec, decomposition_residual(mix, rt.decomposition));
        worst_rec = std::max(worst_rec, decomposition_residual(mix, rs.decomposition));
        for (Measure m : {Measure::tau3, Measure::sqrt_tau3}) {
            double avg = mix.p1 * evaluate(m, normalize(mix.psi1)) +
                         (1.0 - mix.p1) * evaluate(m, normalize(mix.psi2));
            double val = m == Measure::tau3 ? rt.value : rs.value;
            worst_avg = std::max(worst_avg, val - avg);
        }
        ZeroSet zs = zero_polytope(mix);
        for (const auto& root : zs.roots) {
            double scale = zs.coeff_scale * std::pow(std::max(1.0, std::abs(root.z)), 4);
            worst_res = std::max(worst_res, root.residual / scale);
        }
    }
    bool ok = worst_order < 1e-8 && worst_rec < 1e-8 && worst_avg < 1e-10 && worst_res < 1e-8;
    report(7, ok, "structural roof properties",
           "ordering " + num(worst_order) + ", reconstruction " + num(worst_rec) +
               ", vs eigen-average " + num(worst_avg) + ", root residual/scale " +
               num(worst_res));
}

// ---------------------------------------------------------------------------
// 8. atlas eigen-consistency over per-class grids; class-1 roofs all zero.
void criterion8() {
    double worst_vec = 0.0, worst_p1 = 0.0;
    auto probe = [&](const ClassSpec& s, int q) {
        ReductionCase rc = reduction(s, q);
        RankTwoMixture tab = reduction_mixture(s, rc);
        RankTwoMixture num = eigendecompose_rank2(partial_trace(class_state(s), q));
        auto defect = [&](const PureState& t) {
            double o1 = std::abs(num.psi1.amplitudes.dot(t.amplitudes));
            double o2 = std::abs(num.psi2.amplitudes.dot(t.amplitudes));
            return 1.0 - std::max(o1, o2);
        };
        worst_vec = std::max({worst_vec, defect(tab.psi1), defect(tab.psi2)});
        double o1 = std::abs(num.psi1.amplitudes.dot(tab.psi1.amplitudes));
        double o2 = std::abs(num.psi2.amplitudes.dot(tab.psi1.amplitudes));
        double p = o1 > o2 ? num.p1 : 1.0 - num.p1;
        worst_p1 = std::max(worst_p1, std::abs(p - rc.printed_p1));
    };
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            double x = 0.2 * i, y = 0.2 * j;
            probe(ClassSpec{2, x, 0.35, y, std::nullopt}, 4);
            probe(ClassSpec{3, x, y, std::nullopt, std::nullopt}, 1);
            probe(ClassSpec{4, x, y, std::nullopt, std::nullopt}, 1);
        }
    for (int i = 1; i <= 100; ++i) {
        double x = 0.02 * i;
        probe(ClassSpec{5, x, std::nullopt, std::nullopt, std::nullopt}, 4);
        probe(ClassSpec{5, x, std::nullopt, std::nullopt, std::nullopt}, 3);
        probe(ClassSpec{6, x, std::nullopt, std::nullopt, std::nullopt}, 1);
    }

    double worst_c1 = 0.0;
    for (auto [a, b, c, d] : {std::array<double, 4>{0.5, 0.3, 0.2, 0.1},
                              {1.0, 0.8, 0.6, 0.4},
                              {0.9, 0.1, 0.7, 0.3}})
        for (int q = 1; q <= 4; ++q) {
            ClassSpec s{1, a, b, c, d};
            worst_c1 = std::max(worst_c1, engine_roof(s, q, Measure::tau3));
        }
    bool ok = worst_vec < 1e-9 && worst_p1 < 1e-10 && worst_c1 < 1e-10;
    report(8, ok, "atlas eigen-consistency",
           "overlap defect " + num(worst_vec) + ", p1 error " + num(worst_p1) +
               ", class-1 roof " + num(worst_c1));
}

// ---------------------------------------------------------------------------
// 9. class-6 adjudication above the vanishing threshold.
void criterion9() {
    const double thr = std::pow(2.0, 2.0 / 3.0);
    bool ok = true;
    for (double a : {1.7, 1.9}) {
        ClassSpec s{6, a, std::nullopt, std::nullopt, std::nullopt};
        RankTwoMixture mix = mixture_of(s, 1);
        double engine = engine_roof(s, 1, Measure::sqrt_tau3);
        double oracle = brute_force_roof(mix, Measure::sqrt_tau3, 4, 32, 31).value;
        double printed = class6_printed_roof_sq(a);
        ok = ok && engine < 1e-6 && oracle < 1e-2 && printed > 1e-3;
        warn("class-6 at a=" + num(a) + " (threshold " + num(thr) +
             "): engine roof^2 " + num(engine * engine) + ", oracle roof^2 " +
             num(oracle * oracle) + " -- consistent with the vanishing claim; the tabulated "
             "formula gives " + num(printed) + " and is not reproduced");
    }
    report(9, ok, "class-6 adjudication",
           "engine and oracle settle the roof at zero above |a| = 2^(2/3)");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d of 9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
