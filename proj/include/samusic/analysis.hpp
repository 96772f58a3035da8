#pragma once

#include <string>
#include <vector>

#include "samusic/support_set.hpp"
#include "samusic/types.hpp"

namespace samusic {

/// Restricted-isometry constants of A over the column sets J u {j}, j outside J.
/// delta is the symmetric constant max_j ||A_{J u j}^H A_{J u j} - I||;
/// alpha/beta are the extreme singular values over the same family.
struct Weak1Ric {
    double delta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    SupportSet J;
    int argmax_j = 0;  // 1-based index attaining delta
};

/// Exact enumeration over all j in [n] \ J. Cost O((n-s)(s+1)^3); n is capped
/// at 2048. Requires at least one index outside J.
Weak1Ric weak1_ric(const Mat& A, const SupportSet& J);

/// Uniform restricted-isometry constant of order k, by enumeration of all
/// C(n, k) column subsets. Tiny n only (capped at 14).
double uniform_ric(const Mat& A, int k);

/// Largest k such that every k columns of A are linearly independent.
/// Exact by enumeration; n is capped at 16.
int kruskal_rank(const Mat& A);

/// Lower bound on the (s-r)-th largest row l2-norm over all s x r matrices
/// with orthonormal columns, valid for s/2 < r < s. Maximized over the free
/// exponent q > 0 by a log-grid search refined with golden-section; returns 0
/// when no sampled q gives a positive bound.
double rho_lower_bound(int s, int r);

enum class GuaranteeRegime {
    music_full_rank,   // eta <= (1 - sqrt(delta)) / 2
    sa_music_oracle,   // eta <= sqrt((1-d)/(1+d)) (1-sqrt d)/(3-sqrt d)
    sa_music_ssomp,    // min of the augmented-MUSIC and greedy-step conditions
    sa_music_ssomsp,   // eta <= sqrt((1-d)/(1+d)) (sqrt(r/s) sqrt(1-d)-sqrt d)/(2+...)
    ssomsp_oracle,     // the ssomsp formula at r = s
    mbp,               // feasibility of delta for the mixed-norm relaxation
};

std::string to_string(GuaranteeRegime r);
GuaranteeRegime regime_from_string(const std::string& s);

struct GuaranteeParams {
    int s = 0;
    int r = 0;
    int n = 0;
    int N = 0;
    double epsilon = 0.0;
};

/// Largest subspace-perturbation level eta certified by the named guarantee at
/// weak-1 RIC delta, for columns normalized to unit norm; clamped at 0 when
/// the condition is infeasible. For the mbp regime the guarantee is noiseless,
/// so the value is 0 whenever delta is feasible (see mbp_max_delta) and the
/// regime only marks the feasible delta range.
double eta_bound(GuaranteeRegime regime, double delta,
                 const GuaranteeParams& params = {});

/// Largest delta for which the mixed-norm relaxation is guaranteed with
/// probability 1 - epsilon at N snapshots; solved by bisection to 1e-10.
/// Returns 0 when even delta -> 0 is infeasible.
double mbp_max_delta(int n, int N, double epsilon);

/// Smallest snapshot count N for the mixed-norm guarantee at the given delta.
long mbp_min_snapshots(int n, double delta, double epsilon);

struct CurvePoint {
    double delta = 0.0;
    double eta_max = 0.0;
    bool feasible = true;  // meaningful for the mbp regime
};

/// Samples eta_bound over an inclusive delta grid.
std::vector<CurvePoint> guarantee_curve(GuaranteeRegime regime, double delta_min,
                                        double delta_max, int steps,
                                        const GuaranteeParams& params = {});

/// Closed-form sufficient conditions on the measurement count m for the
/// weak-1 (or uniform) restricted isometry of the named ensemble.
enum class MeasurementRule {
    gaussian_weak1_sqrt,    // sqrt(m)(sqrt(1+d)-1) >= sqrt(s+1)+sqrt(2 ln(2(n-s)/eps))
    gaussian_weak1_linear,  // m >= 2/(sqrt(1+d)-1)^2 (s + 2 ln(2(n-s)/eps) + 1)
    gaussian_asym_sqrt,     // sqrt(m) g >= sqrt(s+1)+sqrt(2 ln((n-s)/eps))
    gaussian_asym_linear,   // m >= 2/g^2 (s + 2 ln(2(n-s)/eps) + 1)
    fourier_weak1,          // m >= 2(3+d)/(3d^2) (ln(2(n-s)/eps)+ln(s+1))(s+1)
    untf_weak1,             // m >= 4 sqrt(e)/d^2 (s + 288 K^2 ln((n-s)/eps) + 1)
    gaussian_uniform,       // m >= 2/(sqrt(1+d)-1)^2 ((3+ln(n/s))s + 2 ln(2/eps) + 1)
};

std::string to_string(MeasurementRule r);
MeasurementRule measurement_rule_from_string(const std::string& s);

/// Smallest integer m satisfying the chosen sufficient condition.
/// `bound` is delta for the symmetric rules and gamma for the asymmetric ones;
/// frame_k is the coherence constant K (unit-norm tight frame rule only).
long min_measurements(MeasurementRule rule, int s, int n, double bound,
                      double epsilon, double frame_k = 1.0);

/// Smallest snapshot count N such that subspace estimation with gap threshold
/// tau reaches perturbation level eta with probability 1 - epsilon, under the
/// spectral-gap parameters (nu, theta) and noise-to-signal ratio
/// sigma_w^2 / lambda_1 of the snapshot covariance.
long min_snapshots(int m, int s, double epsilon, double eta, double nu,
                   double theta, double tau, double noise_ratio);

}  // namespace samusic
