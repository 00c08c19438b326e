#include "threetangle/roofengine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "threetangle/parallel.hpp"

namespace threetangle {

namespace {

constexpr double kPi = std::numbers::pi;

// Normalized span basis; avoids re-normalizing per curve sample.
struct SpanBasis {
    cvec h1, h2;
    int n_qubits;

    explicit SpanBasis(const RankTwoMixture& mix)
        : h1(normalize(mix.psi1).amplitudes),
          h2(normalize(mix.psi2).amplitudes),
          n_qubits(mix.psi1.n_qubits) {}

    PureState state(const BlochPoint& pt) const {
        if (pt.infinite) return PureState{n_qubits, h2};
        double sp = std::sqrt(1.0 / (1.0 + std::norm(pt.z)));
        return PureState{n_qubits, sp * (h1 + pt.z * h2)};
    }

    double E(Measure m, const BlochPoint& pt) const { return evaluate(m, state(pt)); }

    double E_at(Measure m, double p, double phi) const {
        if (p <= 0.0) return evaluate(m, PureState{n_qubits, h2});
        if (p >= 1.0) return evaluate(m, PureState{n_qubits, h1});
        double r = std::sqrt((1.0 - p) / p);
        return E(m, BlochPoint{r * cplx(std::cos(phi), std::sin(phi)), false});
    }
};

// Golden-section minimization on [a, b]; f need only be unimodal in the bracket.
template <typename F>
double golden_min(F&& f, double a, double b, double tol, double* fmin = nullptr) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    double x = (a + b) / 2;
    if (fmin) *fmin = f(x);
    return x;
}

cplx poly_eval(const std::array<cplx, 5>& c, cplx z) {
    cplx acc = c[4];
    for (int k = 3; k >= 0; --k) acc = acc * z + c[k];
    return acc;
}

struct Candidate {
    double value = 0.0;
    std::vector<std::pair<double, BlochPoint>> decomposition;
    bool ok = false;
};

Candidate make_candidate(const SpanBasis& basis, Measure measure, double p1,
                         const std::vector<BlochPoint>& pts) {
    Candidate c;
    auto w = decomposition_weights(p1, pts);
    if (!w) return c;
    c.ok = true;
    c.value = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        c.value += (*w)[i] * basis.E(measure, pts[i]);
        c.decomposition.emplace_back((*w)[i], pts[i]);
    }
    return c;
}

} // namespace

int ZeroSet::total_multiplicity() const {
    int m = infinity_multiplicity;
    for (const auto& r : roots) m += r.multiplicity;
    return m;
}

double Envelope::operator()(double x) const {
    if (xs.empty()) return 0.0;
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t i = size_t(it - xs.begin());
    double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

CharacteristicCurve characteristic_curve(const RankTwoMixture& mix, Measure measure,
                                         int n_p, int n_phi,
                                         const std::vector<double>& extra_p) {
    if (n_p < 3 || n_phi < 4) throw BadGrid("grid too small: need N_p >= 3, N_phi >= 4");
    SpanBasis basis(mix);

    CharacteristicCurve curve;
    curve.measure = measure;
    curve.p_grid.reserve(size_t(n_p) + extra_p.size());
    for (int i = 0; i < n_p; ++i) curve.p_grid.push_back(double(i) / (n_p - 1));
    for (double p : extra_p)
        if (p >= 0.0 && p <= 1.0) curve.p_grid.push_back(p);
    std::sort(curve.p_grid.begin(), curve.p_grid.end());
    curve.p_grid.erase(std::unique(curve.p_grid.begin(), curve.p_grid.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                       curve.p_grid.end());

    for (int j = 0; j < n_phi; ++j) curve.phi_grid.push_back(2.0 * kPi * j / n_phi);

    const int np = int(curve.p_grid.size());
    curve.values.assign(np, std::vector<double>(n_phi, 0.0));
    curve.min_curve.assign(np, 0.0);
    curve.argmin_phi.assign(np, 0.0);

    parallel_for(np, [&](int i) {
        double p = curve.p_grid[i];
        if (p <= 0.0 || p >= 1.0) {
            double v = basis.E_at(measure, p, 0.0);
            std::fill(curve.values[i].begin(), curve.values[i].end(), v);
            curve.min_curve[i] = v;
            curve.argmin_phi[i] = 0.0;
            return;
        }
        int jbest = 0;
        double vbest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n_phi; ++j) {
            double v = basis.E_at(measure, p, curve.phi_grid[j]);
            curve.values[i][j] = v;
            if (v < vbest) { vbest = v; jbest = j; }
        }
        // refine around the grid argmin
        double h = 2.0 * kPi / n_phi;
        double lo = curve.phi_grid[jbest] - h, hi = curve.phi_grid[jbest] + h;
        double fmin = vbest;
        double phi = golden_min([&](double x) { return basis.E_at(measure, p, x); },
                                lo, hi, 1e-10, &fmin);
        if (fmin <= vbest) {
            curve.min_curve[i] = fmin;
            curve.argmin_phi[i] = phi < 0 ? phi + 2.0 * kPi : phi;
        } else {
            curve.min_curve[i] = vbest;
            curve.argmin_phi[i] = curve.phi_grid[jbest];
        }
    });
    return curve;
}

ZeroSet zero_polytope(const RankTwoMixture& mix, double cluster_tol) {
    SpanBasis basis(mix);
    auto T_at = [&](cplx z) {
        // unnormalized superposition: q is then exactly polynomial in z
        return tau3_complex(PureState{basis.n_qubits, basis.h1 + z * basis.h2});
    };

    // five probes, Vandermonde solve for c0..c4
    const std::array<cplx, 5> zs = {cplx(0, 0), cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
    Eigen::Matrix<cplx, 5, 5> V;
    Eigen::Matrix<cplx, 5, 1> rhs;
    for (int i = 0; i < 5; ++i) {
        cplx zp = 1.0;
        for (int k = 0; k < 5; ++k) { V(i, k) = zp; zp *= zs[i]; }
        rhs(i) = T_at(zs[i]);
    }
    Eigen::Matrix<cplx, 5, 1> c = V.partialPivLu().solve(rhs);

    ZeroSet zset;
    for (int k = 0; k < 5; ++k) zset.coeffs[k] = c(k);
    double scale = 0.0;
    for (int k = 0; k < 5; ++k) scale = std::max(scale, std::abs(c(k)));
    zset.coeff_scale = scale;
    if (scale < 1e-12)
        throw DegenerateMeasure("tau3 vanishes identically on the span; roof is 0");

    const double strip_tol = 1e-9 * scale;
    int deg = 4;
    while (deg > 0 && std::abs(c(deg)) < strip_tol) --deg;
    int lo = 0;
    while (lo < deg && std::abs(c(lo)) < strip_tol) ++lo;
    zset.infinity_multiplicity = 4 - deg;

    std::vector<std::pair<cplx, int>> clusters;  // (location, multiplicity)
    if (lo > 0) clusters.emplace_back(cplx(0, 0), lo);

    int mdeg = deg - lo;
    if (mdeg > 0) {
        // companion matrix of the stripped middle polynomial
        cmat comp = cmat::Zero(mdeg, mdeg);
        for (int k = 0; k < mdeg; ++k) comp(k, mdeg - 1) = -c(lo + k) / c(deg);
        for (int k = 1; k < mdeg; ++k) comp(k, k - 1) = 1.0;
        Eigen::ComplexEigenSolver<cmat> es(comp);
        std::vector<cplx> raw(es.eigenvalues().data(), es.eigenvalues().data() + mdeg);
        // very large finite roots are really part of the degree deficit
        for (auto it = raw.begin(); it != raw.end();) {
            if (std::abs(*it) > 1e6) { ++zset.infinity_multiplicity; it = raw.erase(it); }
            else ++it;
        }
        // first-pass clustering at cluster_tol (relative)
        std::sort(raw.begin(), raw.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        for (cplx r : raw) {
            bool merged = false;
            for (auto& cl : clusters) {
                cplx mean = cl.first;
                double tol = cluster_tol * std::max({1.0, std::abs(mean), std::abs(r)});
                if (std::abs(mean - r) <= tol) {
                    cl.first = (mean * double(cl.second) + r) / double(cl.second + 1);
                    cl.second += 1;
                    merged = true;
                    break;
                }
            }
            if (!merged) clusters.emplace_back(r, 1);
        }
    }

    // Certificate-gated merging: multiple roots scatter like eps^(1/m) through the
    // companion matrix (far beyond cluster_tol), but their centroid cancels the
    // scatter; merge nearby clusters only while the centroid still certifies.
    auto certified = [&](cplx z) {
        double bound = 1e-8 * scale * std::pow(std::max(1.0, std::abs(z)), 4);
        return std::abs(poly_eval(zset.coeffs, z)) <= bound;
    };
    bool changed = true;
    while (changed && clusters.size() > 1) {
        changed = false;
        size_t bi = 0, bj = 0;
        double bestsep = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < clusters.size(); ++i)
            for (size_t j = i + 1; j < clusters.size(); ++j) {
                double sep = std::abs(clusters[i].first - clusters[j].first) /
                             std::max(1.0, std::abs(clusters[i].first));
                if (sep < bestsep) { bestsep = sep; bi = i; bj = j; }
            }
        if (bestsep <= 2e-3) {
            cplx cen = (clusters[bi].first * double(clusters[bi].second) +
                        clusters[bj].first * double(clusters[bj].second)) /
                       double(clusters[bi].second + clusters[bj].second);
            if (certified(cen)) {
                clusters[bi].first = cen;
                clusters[bi].second += clusters[bj].second;
                clusters.erase(clusters.begin() + long(bj));
                changed = true;
            }
        }
    }

    for (auto& cl : clusters) {
        ZeroSet::Root root;
        root.z = cl.first;
        root.multiplicity = cl.second;
        root.residual = std::abs(poly_eval(zset.coeffs, cl.first));
        zset.roots.push_back(root);
    }
    return zset;
}

Envelope convexify(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw BadGrid("convexify: bad input sizes");
    for (size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw BadGrid("convexify: xs must be strictly increasing");
    if (std::abs(xs.front()) > 1e-12 || std::abs(xs.back() - 1.0) > 1e-12)
        throw BadGrid("convexify: endpoints 0 and 1 required");

    // monotone lower-hull scan
    Envelope env;
    for (size_t i = 0; i < xs.size(); ++i) {
        env.xs.push_back(xs[i]);
        env.ys.push_back(ys[i]);
        while (env.xs.size() >= 3) {
            size_t n = env.xs.size();
            double s1 = (env.ys[n - 2] - env.ys[n - 3]) / (env.xs[n - 2] - env.xs[n - 3]);
            double s2 = (env.ys[n - 1] - env.ys[n - 2]) / (env.xs[n - 1] - env.xs[n - 2]);
            if (s1 >= s2) {
                env.xs.erase(env.xs.end() - 2);
                env.ys.erase(env.ys.end() - 2);
            } else {
                break;
            }
        }
    }
    return env;
}

std::optional<std::vector<double>> decomposition_weights(double p1,
                                                         const std::vector<BlochPoint>& points) {
    const int n = int(points.size());
    if (n == 0) return std::nullopt;
    Eigen::MatrixXd A(4, n);
    for (int i = 0; i < n; ++i) {
        A(0, i) = 1.0;
        A(1, i) = points[i].p();
        cplx pz = points[i].pz();
        A(2, i) = pz.real();
        A(3, i) = pz.imag();
    }
    Eigen::Vector4d b(1.0, p1, 0.0, 0.0);
    Eigen::VectorXd w = A.completeOrthogonalDecomposition().solve(b);
    if ((A * w - b).norm() > 1e-10) return std::nullopt;
    for (int i = 0; i < n; ++i) {
        if (w(i) < -1e-10) return std::nullopt;
        if (w(i) < 0) w(i) = 0.0;
    }
    double s = w.sum();
    if (std::abs(s - 1.0) > 1e-9) return std::nullopt;
    std::vector<double> out(w.data(), w.data() + n);
    return out;
}

double decomposition_residual(const RankTwoMixture& mix,
                              const std::vector<std::pair<double, BlochPoint>>& decomposition) {
    SpanBasis basis(mix);
    cmat acc = cmat::Zero(basis.h1.size(), basis.h1.size());
    for (const auto& [w, pt] : decomposition) {
        cvec v = basis.state(pt).amplitudes;
        acc += w * (v * v.adjoint());
    }
    return (acc - reconstruct(mix).matrix).norm();
}

namespace {

// Anchor family: pair the zero state at z0 = R e^{i theta} with a second state
// at -t e^{i theta}; the off-diagonal contributions cancel along the ray.
// Returns the best achievable average at mixing probability p1.
Candidate anchor_candidate(const SpanBasis& basis, Measure measure, double p1,
                           const BlochPoint& z0pt) {
    Candidate best;
    if (z0pt.infinite) return best;
    double R = std::abs(z0pt.z);
    if (R < 1e-12) return best;
    double theta = std::arg(z0pt.z);
    double p0 = z0pt.p();
    auto weight = [&](double t) { return p1 * t / (p0 * (t + R)); };
    auto g = [&](double t) {
        double w = weight(t);
        return (1.0 - w) / (1.0 + t * t) - w * p0 * R / t;
    };
    // scan log-spaced t for sign changes, then bisect
    const int N = 320;
    double prev_t = 1e-8, prev_g = g(prev_t);
    for (int i = 1; i <= N; ++i) {
        double t = std::pow(10.0, -8.0 + 16.0 * i / N);
        double gt = g(t);
        if (std::isfinite(prev_g) && std::isfinite(gt) && prev_g * gt < 0) {
            double a = prev_t, b = t;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b);
                if (g(a) * g(mid) <= 0) b = mid; else a = mid;
            }
            double tsol = 0.5 * (a + b);
            double w = weight(tsol);
            if (w >= -1e-12 && w <= 1.0 + 1e-12) {
                w = std::clamp(w, 0.0, 1.0);
                BlochPoint zb{-tsol * cplx(std::cos(theta), std::sin(theta)), false};
                Candidate c;
                c.ok = true;
                c.decomposition = {{w, z0pt}, {1.0 - w, zb}};
                c.value = w * basis.E(measure, z0pt) + (1.0 - w) * basis.E(measure, zb);
                if (!best.ok || c.value < best.value) best = c;
            }
        }
        prev_t = t;
        prev_g = gt;
    }
    return best;
}

} // namespace

RoofResult roof(const RankTwoMixture& mix, Measure measure, const RoofOptions& opts) {
    SpanBasis basis(mix);
    const double p1 = mix.p1;
    const PureState s1{basis.n_qubits, basis.h1};
    const PureState s2{basis.n_qubits, basis.h2};
    const double E1 = evaluate(measure, s1);
    const double E2 = evaluate(measure, s2);

    auto finish = [&](RoofResult r) {
        r.residual = decomposition_residual(mix, r.decomposition);
        return r;
    };

    if (mix.rank1 || p1 >= 1.0 - 1e-14) {
        RoofResult r;
        r.value = E1;
        r.status = RoofStatus::exact;
        r.decomposition = {{1.0, BlochPoint{cplx(0, 0), false}}};
        r.envelope_value = E1;
        return finish(r);
    }

    ZeroSet zset;
    try {
        zset = zero_polytope(mix, opts.cluster_tol);
    } catch (const DegenerateMeasure&) {
        RoofResult r;
        r.value = 0.0;
        r.status = RoofStatus::exact;
        r.decomposition = {{p1, BlochPoint{cplx(0, 0), false}}, {1.0 - p1, BlochPoint::inf()}};
        r.envelope_value = 0.0;
        return finish(r);
    }

    // Degenerate-zero certificate: with all four zeros coincident the
    // sqrt(tau3)-average is the same for every decomposition of rho
    // (sum_i q_i p_i |z_i - z0|^2 is fixed by the decomposition constraints),
    // so the roof is the eigen-average line for sqrt(tau3) and its square for tau3.
    bool fourfold_inf = zset.roots.empty() && zset.infinity_multiplicity == 4;
    bool fourfold_fin = zset.roots.size() == 1 && zset.roots[0].multiplicity == 4 &&
                        zset.infinity_multiplicity == 0;
    if (fourfold_inf || fourfold_fin) {
        double sroot = p1 * sqrt_tau3(s1) + (1.0 - p1) * sqrt_tau3(s2);
        RoofResult r;
        r.value = measure == Measure::sqrt_tau3 ? sroot : sroot * sroot;
        r.status = RoofStatus::exact;
        if (p1 <= 1e-14) {
            r.decomposition = {{1.0, BlochPoint::inf()}};
        } else {
            double rad = std::sqrt((1.0 - p1) / p1);
            double phi = fourfold_fin ? std::arg(zset.roots[0].z) + kPi / 2 : 0.0;
            BlochPoint za{rad * cplx(std::cos(phi), std::sin(phi)), false};
            BlochPoint zb{-za.z, false};
            r.decomposition = {{0.5, za}, {0.5, zb}};
        }
        r.envelope_value = r.value;
        return finish(r);
    }

    // distinct zero locations as Bloch points
    std::vector<BlochPoint> zeros;
    for (const auto& rt : zset.roots) zeros.push_back(BlochPoint{rt.z, false});
    if (zset.includes_infinity()) zeros.push_back(BlochPoint::inf());

    std::vector<Candidate> candidates;

    // (1) eigen pair
    candidates.push_back(make_candidate(basis, measure, p1,
                                        {BlochPoint{cplx(0, 0), false}, BlochPoint::inf()}));

    // (2) zero-simplex subsets: any feasible subset gives roof 0
    if (zeros.size() >= 2) {
        int nz = int(zeros.size());
        for (int mask = 1; mask < (1 << nz); ++mask) {
            if (__builtin_popcount(unsigned(mask)) < 2) continue;
            std::vector<BlochPoint> pts;
            for (int i = 0; i < nz; ++i)
                if (mask & (1 << i)) pts.push_back(zeros[size_t(i)]);
            candidates.push_back(make_candidate(basis, measure, p1, pts));
        }
    }

    // (3) antipodal pair at p1: coarse phi scan + golden refinement, plus the
    //     phases distinguished by the zero locations
    if (p1 > 1e-14 && p1 < 1.0 - 1e-14) {
        double rad = std::sqrt((1.0 - p1) / p1);
        auto pair_avg = [&](double phi) {
            BlochPoint za{rad * cplx(std::cos(phi), std::sin(phi)), false};
            BlochPoint zb{-za.z, false};
            return 0.5 * (basis.E(measure, za) + basis.E(measure, zb));
        };
        int K = std::max(opts.n_phi / 2, 32);
        int jbest = 0;
        double vbest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < K; ++j) {
            double v = pair_avg(kPi * j / K);
            if (v < vbest) { vbest = v; jbest = j; }
        }
        double h = kPi / K;
        double phis = golden_min(pair_avg, kPi * jbest / K - h, kPi * jbest / K + h, 1e-12);
        std::vector<double> try_phis = {phis};
        for (const auto& rt : zset.roots) {
            double th = std::arg(rt.z);
            try_phis.push_back(th);
            try_phis.push_back(th + kPi / 2);
        }
        for (double phi : try_phis) {
            BlochPoint za{rad * cplx(std::cos(phi), std::sin(phi)), false};
            BlochPoint zb{-za.z, false};
            Candidate c;
            c.ok = true;
            c.decomposition = {{0.5, za}, {0.5, zb}};
            c.value = 0.5 * (basis.E(measure, za) + basis.E(measure, zb));
            candidates.push_back(c);
        }
    }

    // (4) root + eigenstate triples, and cross-root triples
    for (const auto& rt : zset.roots) {
        BlochPoint z0{rt.z, false};
        BlochPoint z0m{-rt.z, false};
        candidates.push_back(make_candidate(basis, measure, p1,
                                            {BlochPoint{cplx(0, 0), false}, z0, z0m}));
        candidates.push_back(make_candidate(basis, measure, p1, {BlochPoint::inf(), z0, z0m}));
        candidates.push_back(make_candidate(basis, measure, p1, {z0, z0m}));
    }
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t j = i + 1; j < zeros.size(); ++j) {
            candidates.push_back(make_candidate(basis, measure, p1,
                                                {BlochPoint{cplx(0, 0), false}, zeros[i], zeros[j]}));
            candidates.push_back(make_candidate(basis, measure, p1,
                                                {BlochPoint::inf(), zeros[i], zeros[j]}));
        }

    // (5) anchor construction from each finite zero
    for (const auto& rt : zset.roots)
        candidates.push_back(anchor_candidate(basis, measure, p1, BlochPoint{rt.z, false}));

    const Candidate* best = nullptr;
    for (const auto& c : candidates)
        if (c.ok && (!best || c.value < best->value)) best = &c;

    // envelope of the minimal curve with the algebraic zeros pinned to exactly 0
    std::vector<double> extra;
    extra.push_back(p1);
    std::vector<double> zero_ps;
    for (const auto& pt : zeros) zero_ps.push_back(pt.p());
    for (double zp : zero_ps) extra.push_back(zp);
    CharacteristicCurve curve = characteristic_curve(mix, measure, opts.n_p, opts.n_phi, extra);
    std::vector<double> ys = curve.min_curve;
    for (double zp : zero_ps)
        for (size_t i = 0; i < curve.p_grid.size(); ++i)
            if (std::abs(curve.p_grid[i] - zp) < 1e-12) ys[i] = 0.0;
    Envelope env = convexify(curve.p_grid, ys);

    RoofResult r;
    r.envelope_value = env(p1);
    r.value = best->value;
    r.decomposition = best->decomposition;
    r.status = (best->value <= r.envelope_value + opts.cert_tol) ? RoofStatus::exact
                                                                 : RoofStatus::upper_bound;
    if (r.value < 0) r.value = 0.0;
    return finish(r);
}

std::vector<PairedPoint> paired_bound(const RankTwoMixture& mix, Measure measure,
                                      const Pairing& pairing,
                                      const std::vector<double>& p_targets) {
    SpanBasis basis(mix);
    std::vector<PairedPoint> out;
    out.reserve(p_targets.size());
    for (double p : p_targets) {
        PairedPoint pt;
        pt.p1 = p;
        if (pairing.kind == PairingKind::anchor) {
            // locate the anchor's own p0 and pair toward the requested p
            Candidate c = anchor_candidate(basis, measure, p, pairing.anchor_z);
            pt.feasible = c.ok;
            pt.value = c.ok ? c.value : 0.0;
        } else if (p <= 1e-14 || p >= 1.0 - 1e-14) {
            pt.feasible = true;
            pt.value = basis.E_at(measure, p, pairing.phi);
        } else {
            int m = pairing.kind == PairingKind::antipodal ? 2 : std::max(pairing.m, 3);
            double rad = std::sqrt((1.0 - p) / p);
            std::vector<BlochPoint> pts;
            for (int k = 0; k < m; ++k) {
                double phi = pairing.phi + 2.0 * kPi * k / m;
                pts.push_back(BlochPoint{rad * cplx(std::cos(phi), std::sin(phi)), false});
            }
            auto w = decomposition_weights(p, pts);
            pt.feasible = w.has_value();
            if (pt.feasible) {
                double v = 0.0;
                for (int k = 0; k < m; ++k) v += (*w)[size_t(k)] * basis.E(measure, pts[size_t(k)]);
                pt.value = v;
            }
        }
        out.push_back(pt);
    }
    return out;
}

bool certify_optimal(const RoofResult& result, const CharacteristicCurve& curve,
                     double cert_tol) {
    if (result.residual >= 1e-8) return false;
    Envelope env = convexify(curve.p_grid, curve.min_curve);
    // mixing probability recovered from the decomposition itself
    double p1 = 0.0;
    for (const auto& [w, pt] : result.decomposition) p1 += w * pt.p();
    return result.value <= env(p1) + cert_tol;
}

} // namespace threetangle
