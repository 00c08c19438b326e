#include "threetangle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "threetangle/parallel.hpp"

namespace threetangle {

namespace {

// Derivative-free simplex minimizer (Nelder-Mead), fixed evaluation budget.
template <typename F>
double nelder_mead(F&& f, std::vector<double>& x, double step, int max_evals) {
    const int n = int(x.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> simplex(size_t(n) + 1, x);
    std::vector<double> fv(size_t(n) + 1);
    for (int i = 1; i <= n; ++i) simplex[size_t(i)][size_t(i - 1)] += step;
    int evals = 0;
    for (int i = 0; i <= n; ++i) { fv[size_t(i)] = f(simplex[size_t(i)]); ++evals; }

    std::vector<int> order(size_t(n) + 1);
    std::vector<double> cen(x.size()), xr(x.size()), xe(x.size()), xc(x.size());
    while (evals < max_evals) {
        for (int i = 0; i <= n; ++i) order[size_t(i)] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return fv[size_t(a)] < fv[size_t(b)]; });
        int best = order[0], worst = order[size_t(n)], second = order[size_t(n - 1)];

        std::fill(cen.begin(), cen.end(), 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int k = 0; k < n; ++k) cen[size_t(k)] += simplex[size_t(i)][size_t(k)] / n;
        }
        for (int k = 0; k < n; ++k)
            xr[size_t(k)] = cen[size_t(k)] + alpha * (cen[size_t(k)] - simplex[size_t(worst)][size_t(k)]);
        double fr = f(xr); ++evals;

        if (fr < fv[size_t(best)]) {
            for (int k = 0; k < n; ++k)
                xe[size_t(k)] = cen[size_t(k)] + gamma * (xr[size_t(k)] - cen[size_t(k)]);
            double fe = f(xe); ++evals;
            if (fe < fr) { simplex[size_t(worst)] = xe; fv[size_t(worst)] = fe; }
            else { simplex[size_t(worst)] = xr; fv[size_t(worst)] = fr; }
        } else if (fr < fv[size_t(second)]) {
            simplex[size_t(worst)] = xr;
            fv[size_t(worst)] = fr;
        } else {
            for (int k = 0; k < n; ++k)
                xc[size_t(k)] = cen[size_t(k)] + rho * (simplex[size_t(worst)][size_t(k)] - cen[size_t(k)]);
            double fc = f(xc); ++evals;
            if (fc < fv[size_t(worst)]) { simplex[size_t(worst)] = xc; fv[size_t(worst)] = fc; }
            else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int k = 0; k < n; ++k)
                        simplex[size_t(i)][size_t(k)] = simplex[size_t(best)][size_t(k)] +
                            sigma * (simplex[size_t(i)][size_t(k)] - simplex[size_t(best)][size_t(k)]);
                    fv[size_t(i)] = f(simplex[size_t(i)]); ++evals;
                }
            }
        }
    }
    int ibest = 0;
    for (int i = 1; i <= n; ++i)
        if (fv[size_t(i)] < fv[size_t(ibest)]) ibest = i;
    x = simplex[size_t(ibest)];
    return fv[size_t(ibest)];
}

// m x 2 isometry from 4m unconstrained reals via modified Gram-Schmidt.
cmat isometry_from_params(const std::vector<double>& x, int m) {
    cmat M(m, 2);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 2; ++j) {
            size_t base = size_t(4 * i + 2 * j);
            M(i, j) = cplx(x[base], x[base + 1]);
        }
    cvec c0 = M.col(0);
    double n0 = c0.norm();
    if (n0 < 1e-12) { c0.setZero(); c0(0) = 1.0; n0 = 1.0; }
    c0 /= n0;
    cvec c1 = M.col(1);
    c1 -= c0 * (c0.adjoint() * c1);
    c1 -= c0 * (c0.adjoint() * c1);  // re-orthogonalize: one pass loses up to
                                     // 1e-4 orthogonality for near-parallel input
    double n1 = c1.norm();
    if (n1 < 1e-12) {
        // fall back to any direction orthogonal to c0
        for (int i = 0; i < m; ++i) {
            cvec e = cvec::Zero(m); e(i) = 1.0;
            e -= c0 * (c0.adjoint() * e);
            if (e.norm() > 1e-6) { c1 = e; break; }
        }
        n1 = c1.norm();
    }
    c1 /= n1;
    cmat U(m, 2);
    U.col(0) = c0;
    U.col(1) = c1;
    return U;
}

} // namespace

OracleResult brute_force_roof(const RankTwoMixture& mix, Measure measure, int m,
                              int restarts, std::uint64_t seed, int evals_per_restart) {
    cvec h1 = normalize(mix.psi1).amplitudes;
    cvec h2 = normalize(mix.psi2).amplitudes;
    const double sp1 = std::sqrt(mix.p1), sp2 = std::sqrt(1.0 - mix.p1);
    const int nq = mix.psi1.n_qubits;

    // Unnormalized ensemble members v_i = U_i1 sqrt(p1) h1 + U_i2 sqrt(p2) h2
    // carry weight w_i = |v_i|^2; by homogeneity
    //   sum_i w_i sqrt_tau3(v_i_hat) = sum_i sqrt_tau3(v_i)   and
    //   sum_i w_i tau3(v_i_hat)      = sum_i tau3(v_i) / w_i.
    auto objective = [&](const std::vector<double>& x) {
        cmat U = isometry_from_params(x, m);
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            cvec v = U(i, 0) * sp1 * h1 + U(i, 1) * sp2 * h2;
            double w = v.squaredNorm();
            if (w < 1e-14) continue;
            PureState s{nq, v};
            total += measure == Measure::sqrt_tau3 ? sqrt_tau3(s) : tau3(s) / w;
        }
        return total;
    };

    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    std::vector<double> vals(size_t(restarts), 0.0);
    std::vector<std::vector<double>> xs;
    xs.resize(size_t(restarts));

    // Ensembles with fewer than m members are boundary points of the m-row
    // parametrization (a whole row must vanish), which simplex steps reach
    // slowly. Search each sub-ensemble size as its own stratum instead.
    auto embed = [m](const std::vector<double>& r) {
        std::vector<double> full(size_t(4 * m), 0.0);
        std::copy(r.begin(), r.end(), full.begin());
        return full;
    };

    parallel_for(restarts, [&](int r) {
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(r) + 1);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> xfull;
        for (int mm = 2; mm <= m; ++mm) {
            auto stratum_objective = [&](const std::vector<double>& red) {
                return objective(embed(red));
            };
            std::vector<double> x(size_t(4 * mm));
            for (auto& xi : x) xi = gauss(rng);
            double v = nelder_mead(stratum_objective, x, 0.5, evals_per_restart / 2);
            // basin hopping: perturb the incumbent, re-polish, keep improvements
            for (int hop = 0; hop < 3; ++hop) {
                std::vector<double> y = x;
                for (auto& yi : y) yi += 0.3 * gauss(rng);
                double fy =
                    nelder_mead(stratum_objective, y, 0.1, evals_per_restart / 6);
                if (fy < v) { v = fy; x = std::move(y); }
            }
            if (v < best) { best = v; xfull = embed(x); }
        }
        vals[size_t(r)] = best;
        xs[size_t(r)] = std::move(xfull);
    });
    for (int r = 0; r < restarts; ++r) {
        if (vals[size_t(r)] < best_val) {
            best_val = vals[size_t(r)];
            best_x = xs[size_t(r)];
        }
    }

    // Final polish with shrinking simplex steps: sqrt_tau3 has square-root
    // cusps where ensemble members cross the zero set, and a fixed-scale
    // simplex stalls a few 1e-4 short of such minima.
    for (double step : {0.03, 0.003, 3e-4, 3e-5}) {
        std::vector<double> y = best_x;
        double fy = nelder_mead(objective, y, step, evals_per_restart / 2);
        if (fy < best_val) { best_val = fy; best_x = std::move(y); }
    }

    OracleResult out;
    out.value = best_val;
    out.decomposition.m = m;
    out.decomposition.U = isometry_from_params(best_x, m);
    for (int i = 0; i < m; ++i) {
        cvec v = out.decomposition.U(i, 0) * sp1 * h1 + out.decomposition.U(i, 1) * sp2 * h2;
        double w = v.squaredNorm();
        out.decomposition.weights.push_back(w);
        out.decomposition.states.push_back(w > 1e-14 ? PureState{nq, v / std::sqrt(w)}
                                                     : PureState{nq, h1});
    }
    return out;
}

std::vector<GapRow> gap_report(const RankTwoMixture& mix, Measure measure, int m_max,
                               double engine_value, int restarts, std::uint64_t seed) {
    std::vector<GapRow> rows;
    for (int m = 2; m <= m_max; ++m) {
        GapRow row;
        row.m = m;
        row.oracle_value = brute_force_roof(mix, measure, m, restarts, seed).value;
        row.engine_value = engine_value;
        row.gap = row.oracle_value - engine_value;
        rows.push_back(row);
    }
    return rows;
}

} // namespace threetangle
