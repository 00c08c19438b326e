#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "threetangle/invariant.hpp"
#include "threetangle/qstate.hpp"

namespace threetangle {

// Sampled E(p, phi) surface over the Bloch sphere of a rank-2 mixture,
// with the phi-minimized curve E_min(p) (refined past the grid).
struct CharacteristicCurve {
    Measure measure = Measure::tau3;
    std::vector<double> p_grid;                // strictly increasing, 0 and 1 included
    std::vector<double> phi_grid;              // [0, 2pi), uniform
    std::vector<std::vector<double>> values;   // [i_p][j_phi]
    std::vector<double> min_curve;             // refined min over phi at each p
    std::vector<double> argmin_phi;
};

// Roots (with multiplicity) of q(z) = T(psi1_hat + z psi2_hat), degree <= 4;
// a degree deficit shows up as roots at infinity.
struct ZeroSet {
    struct Root {
        cplx z;
        int multiplicity = 1;
        double residual = 0.0;     // |q(z)|, for the certification bound
    };
    std::vector<Root> roots;
    int infinity_multiplicity = 0;
    std::array<cplx, 5> coeffs{};  // c0..c4 of q
    double coeff_scale = 0.0;

    bool includes_infinity() const { return infinity_multiplicity > 0; }
    int total_multiplicity() const;
};

// Piecewise-linear lower convex envelope, evaluable anywhere in [x0, xN].
struct Envelope {
    std::vector<double> xs, ys;
    double operator()(double x) const;
};

enum class RoofStatus { exact, upper_bound };

struct RoofResult {
    double value = 0.0;
    RoofStatus status = RoofStatus::upper_bound;
    std::vector<std::pair<double, BlochPoint>> decomposition;  // (weight, point)
    double residual = 0.0;         // Frobenius error of the reconstructed rho
    double envelope_value = 0.0;   // lower bound from the convexified minimal curve
};

struct RoofOptions {
    int n_p = 201;
    int n_phi = 256;
    double cert_tol = 1e-6;
    double cluster_tol = 1e-6;
};

enum class PairingKind { antipodal, anchor, m_phase };

struct Pairing {
    PairingKind kind = PairingKind::antipodal;
    double phi = 0.0;        // phase of the (first) state, antipodal/m_phase families
    BlochPoint anchor_z{};   // fixed zero state, anchor family
    int m = 3;               // number of states, m_phase family
};

struct PairedPoint {
    double p1 = 0.0;
    double value = 0.0;
    bool feasible = false;
};

CharacteristicCurve characteristic_curve(const RankTwoMixture& mix, Measure measure,
                                         int n_p = 201, int n_phi = 256,
                                         const std::vector<double>& extra_p = {});

ZeroSet zero_polytope(const RankTwoMixture& mix, double cluster_tol = 1e-6);

Envelope convexify(const std::vector<double>& xs, const std::vector<double>& ys);

// Nonnegative weights q_i with sum 1, sum q_i p(z_i) = p1, sum q_i p(z_i) z_i = 0;
// nullopt when the point set cannot decompose rho(p1).
std::optional<std::vector<double>> decomposition_weights(double p1,
                                                         const std::vector<BlochPoint>& points);

RoofResult roof(const RankTwoMixture& mix, Measure measure, const RoofOptions& opts = {});

std::vector<PairedPoint> paired_bound(const RankTwoMixture& mix, Measure measure,
                                      const Pairing& pairing,
                                      const std::vector<double>& p_targets);

bool certify_optimal(const RoofResult& result, const CharacteristicCurve& curve,
                     double cert_tol = 1e-6);

// Frobenius distance between rho reconstructed from the mixture and from the
// weighted Bloch-sphere points.
double decomposition_residual(const RankTwoMixture& mix,
                              const std::vector<std::pair<double, BlochPoint>>& decomposition);

} // namespace threetangle
