#include "samusic/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "samusic/errors.hpp"
#include "samusic/linalg.hpp"

namespace samusic {

namespace {

/// Spectral norm of a small Hermitian matrix by exact eigenvalue extremes.
double hermitian_spectral_norm(const Mat& H) {
    Eigen::SelfAdjointEigenSolver<Mat> es((H + H.adjoint()) / 2.0,
                                          Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues()(0)),
                    std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
}

std::vector<int> with_extra(const SupportSet& J, int j) {
    std::vector<int> idx = J.indices();
    idx.push_back(j);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

Weak1Ric weak1_ric(const Mat& A, const SupportSet& J) {
    const int n = static_cast<int>(A.cols());
    if (J.universe() != n) throw InvalidInput("weak1_ric: support universe mismatch");
    if (J.size() >= n) throw InvalidInput("weak1_ric: no index outside J");
    if (n > 2048) throw UnsupportedSize("weak1_ric: n capped at 2048");
    const int s1 = J.size() + 1;
    Weak1Ric out;
    out.J = J;
    out.alpha = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n; ++j) {
        if (J.contains(j)) continue;
        const Mat cols = select_columns(A, with_extra(J, j));
        const Mat gram = cols.adjoint() * cols;
        const double d =
            hermitian_spectral_norm(gram - Mat::Identity(s1, s1));
        if (d > out.delta) {
            out.delta = d;
            out.argmax_j = j;
        }
        Eigen::SelfAdjointEigenSolver<Mat> es((gram + gram.adjoint()) / 2.0,
                                              Eigen::EigenvaluesOnly);
        const double lo = std::max(es.eigenvalues()(0), 0.0);
        const double hi = es.eigenvalues()(s1 - 1);
        out.alpha = std::min(out.alpha, std::sqrt(lo));
        out.beta = std::max(out.beta, std::sqrt(std::max(hi, 0.0)));
    }
    return out;
}

double uniform_ric(const Mat& A, int k) {
    const int n = static_cast<int>(A.cols());
    if (k < 1 || k > n) throw InvalidInput("uniform_ric: order out of range");
    if (n > 14) throw UnsupportedSize("uniform_ric: n capped at 14");
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i + 1;
    double delta = 0.0;
    while (true) {
        const Mat cols = select_columns(A, pick);
        delta = std::max(delta, hermitian_spectral_norm(cols.adjoint() * cols -
                                                        Mat::Identity(k, k)));
        int pos = k - 1;
        while (pos >= 0 && pick[pos] == n - k + pos + 1) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
    return delta;
}

int kruskal_rank(const Mat& A) {
    const int n = static_cast<int>(A.cols());
    if (n > 16) throw UnsupportedSize("kruskal_rank: n capped at 16");
    const int max_k = static_cast<int>(std::min<Index>(A.rows(), n));
    int krank = 0;
    for (int k = 1; k <= max_k; ++k) {
        std::vector<int> pick(k);
        for (int i = 0; i < k; ++i) pick[i] = i + 1;
        bool all_independent = true;
        while (all_independent) {
            if (numerical_rank(select_columns(A, pick)) < k) all_independent = false;
            int pos = k - 1;
            while (pos >= 0 && pick[pos] == n - k + pos + 1) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
        }
        if (!all_independent) break;
        krank = k;
    }
    return krank;
}

namespace {

/// ln C(s, r) via lgamma, exact enough for the bound evaluation.
double log_binomial(int s, int r) {
    return std::lgamma(s + 1.0) - std::lgamma(r + 1.0) - std::lgamma(s - r + 1.0);
}

/// The q-parameterized bound; NaN when the numerator is nonpositive.
double rho_hat(int s, int r, double q) {
    const double ratio = static_cast<double>(s) / r;
    const double numerator = std::exp(-q / (2.0 * r) * log_binomial(s, r)) - (ratio - 1.0);
    if (numerator <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::pow(numerator / (2.0 - ratio), 1.0 / q);
}

}  // namespace

double rho_lower_bound(int s, int r) {
    if (!(2 * r > s && r < s))
        throw InvalidInput("rho_lower_bound: need s/2 < r < s");
    // coarse log-grid over q, then golden-section refinement around the best cell
    const double q_lo = 1e-6, q_hi = 1e2;
    const int grid = 400;
    double best_q = 0.0, best_val = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double q = q_lo * std::pow(q_hi / q_lo, static_cast<double>(i) / grid);
        const double v = rho_hat(s, r, q);
        if (std::isfinite(v) && v > best_val) {
            best_val = v;
            best_q = q;
        }
    }
    if (best_val == 0.0) return 0.0;
    const double step = std::pow(q_hi / q_lo, 1.0 / grid);
    double a = best_q / step, b = best_q * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = rho_hat(s, r, x1), f2 = rho_hat(s, r, x2);
    while (b - a > 1e-10 * std::max(1.0, b)) {
        if (!(f1 < f2)) {  // NaN on the right shrinks toward the left as well
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = rho_hat(s, r, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = rho_hat(s, r, x2);
        }
    }
    const double refined = rho_hat(s, r, (a + b) / 2.0);
    return std::isfinite(refined) ? std::max(refined, best_val) : best_val;
}

std::string to_string(GuaranteeRegime r) {
    switch (r) {
        case GuaranteeRegime::music_full_rank: return "music_full_rank";
        case GuaranteeRegime::sa_music_oracle: return "sa_music_oracle";
        case GuaranteeRegime::sa_music_ssomp: return "sa_music_ssomp";
        case GuaranteeRegime::sa_music_ssomsp: return "sa_music_ssomsp";
        case GuaranteeRegime::ssomsp_oracle: return "ssomsp_oracle";
        case GuaranteeRegime::mbp: return "mbp";
    }
    throw InvalidInput("unknown regime");
}

GuaranteeRegime regime_from_string(const std::string& s) {
    if (s == "music_full_rank") return GuaranteeRegime::music_full_rank;
    if (s == "sa_music_oracle") return GuaranteeRegime::sa_music_oracle;
    if (s == "sa_music_ssomp") return GuaranteeRegime::sa_music_ssomp;
    if (s == "sa_music_ssomsp") return GuaranteeRegime::sa_music_ssomsp;
    if (s == "ssomsp_oracle") return GuaranteeRegime::ssomsp_oracle;
    if (s == "mbp") return GuaranteeRegime::mbp;
    throw InvalidInput("unknown guarantee regime: " + s);
}

namespace {

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

/// eta from conditions of the form  lhs >= 2 t / (sqrt(1-d) - t)  with
/// t = eta sqrt(1+d): solving gives t <= lhs sqrt(1-d) / (2 + lhs).
double eta_from_margin(double lhs, double delta) {
    if (lhs <= 0.0) return 0.0;
    return lhs * std::sqrt(1.0 - delta) / ((2.0 + lhs) * std::sqrt(1.0 + delta));
}

}  // namespace

double eta_bound(GuaranteeRegime regime, double delta, const GuaranteeParams& p) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw InvalidInput("eta_bound: delta must lie in [0, 1)");
    const double sqrt_d = std::sqrt(delta);
    switch (regime) {
        case GuaranteeRegime::music_full_rank:
            return clamp0((1.0 - sqrt_d) / 2.0);
        case GuaranteeRegime::sa_music_oracle:
            return clamp0(std::sqrt((1.0 - delta) / (1.0 + delta)) *
                          (1.0 - sqrt_d) / (3.0 - sqrt_d));
        case GuaranteeRegime::sa_music_ssomp: {
            if (p.s <= 0 || p.r <= 0) throw InvalidInput("eta_bound: ssomp needs s, r");
            if (p.r >= p.s)  // no partial-support step left; full-rank condition applies
                return clamp0((1.0 - sqrt_d) / 2.0);
            // augmented-MUSIC side: 1 - sqrt(d) >= t/(sqrt(1-d) - t)
            const double music_side =
                clamp0((1.0 - sqrt_d) * std::sqrt(1.0 - delta) /
                       ((2.0 - sqrt_d) * std::sqrt(1.0 + delta)));
            // greedy side: rho/sqrt(1+d) - 2d/sqrt(1-d) >= 2 eta
            const double greedy_side =
                clamp0((rho_lower_bound(p.s, p.r) / std::sqrt(1.0 + delta) -
                        2.0 * delta / std::sqrt(1.0 - delta)) /
                       2.0);
            return std::min(music_side, greedy_side);
        }
        case GuaranteeRegime::sa_music_ssomsp: {
            if (p.s <= 0 || p.r <= 0 || p.r > p.s)
                throw InvalidInput("eta_bound: ssomsp needs 0 < r <= s");
            const double lhs =
                std::sqrt(static_cast<double>(p.r) / p.s) * std::sqrt(1.0 - delta) -
                sqrt_d;
            return eta_from_margin(lhs, delta);
        }
        case GuaranteeRegime::ssomsp_oracle: {
            const double lhs = std::sqrt(1.0 - delta) - sqrt_d;
            return eta_from_margin(lhs, delta);
        }
        case GuaranteeRegime::mbp: {
            // noiseless guarantee: no perturbation budget; 0 marks both the
            // feasible and infeasible side, see guarantee_curve for feasibility
            return 0.0;
        }
    }
    throw InvalidInput("eta_bound: unknown regime");
}

namespace {

/// Left side of the mixed-norm feasibility condition as a function of
/// x = delta/(1-delta); decreasing on (0, 1).
double mbp_lhs(double x) { return 1.0 / (x * x) + 2.0 * std::log(x); }

double mbp_rhs(int n, int N, double epsilon) {
    if (n < 2 || N < 1) throw InvalidInput("mbp: need n >= 2, N >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidInput("mbp: epsilon must lie in (0, 1)");
    return 2.0 * std::log(n / epsilon) / N + 1.0;
}

}  // namespace

double mbp_max_delta(int n, int N, double epsilon) {
    const double rhs = mbp_rhs(n, N, epsilon);
    // find the largest x in (0, 1) with mbp_lhs(x) >= rhs; lhs decreases
    // from +inf to mbp_lhs(1) = 1 <= rhs, so bisection applies
    double lo = 1e-12, hi = 1.0;
    if (mbp_lhs(lo) < rhs) return 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
        const double mid = (lo + hi) / 2.0;
        (mbp_lhs(mid) >= rhs ? lo : hi) = mid;
    }
    const double x = lo;
    return x / (1.0 + x);
}

long mbp_min_snapshots(int n, double delta, double epsilon) {
    if (!(delta > 0.0 && delta < 0.5))
        throw InvalidInput("mbp_min_snapshots: delta must lie in (0, 0.5)");
    const double x = delta / (1.0 - delta);
    const double slack = mbp_lhs(x) - 1.0;
    if (slack <= 0.0) throw InvalidInput("mbp_min_snapshots: infeasible delta");
    double n_min = 2.0 * std::log(n / epsilon) / slack;
    long N = static_cast<long>(std::ceil(n_min));
    if (N < 1) N = 1;
    while (mbp_lhs(x) < mbp_rhs(n, static_cast<int>(N), epsilon)) ++N;
    while (N > 1 && mbp_lhs(x) >= mbp_rhs(n, static_cast<int>(N - 1), epsilon)) --N;
    return N;
}

std::vector<CurvePoint> guarantee_curve(GuaranteeRegime regime, double delta_min,
                                        double delta_max, int steps,
                                        const GuaranteeParams& params) {
    if (steps < 1 || delta_min < 0.0 || delta_max >= 1.0 || delta_min > delta_max)
        throw InvalidInput("guarantee_curve: bad delta grid");
    std::vector<CurvePoint> curve;
    curve.reserve(steps + 1);
    const double mbp_cutoff = regime == GuaranteeRegime::mbp
                                  ? mbp_max_delta(params.n, params.N, params.epsilon)
                                  : 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double d =
            steps == 0 ? delta_min
                       : delta_min + (delta_max - delta_min) * i / static_cast<double>(steps);
        CurvePoint pt;
        pt.delta = d;
        pt.eta_max = eta_bound(regime, d, params);
        if (regime == GuaranteeRegime::mbp) pt.feasible = d <= mbp_cutoff;
        curve.push_back(pt);
    }
    return curve;
}

std::string to_string(MeasurementRule r) {
    switch (r) {
        case MeasurementRule::gaussian_weak1_sqrt: return "gaussian_weak1_sqrt";
        case MeasurementRule::gaussian_weak1_linear: return "gaussian_weak1_linear";
        case MeasurementRule::gaussian_asym_sqrt: return "gaussian_asym_sqrt";
        case MeasurementRule::gaussian_asym_linear: return "gaussian_asym_linear";
        case MeasurementRule::fourier_weak1: return "fourier_weak1";
        case MeasurementRule::untf_weak1: return "untf_weak1";
        case MeasurementRule::gaussian_uniform: return "gaussian_uniform";
    }
    throw InvalidInput("unknown measurement rule");
}

MeasurementRule measurement_rule_from_string(const std::string& s) {
    if (s == "gaussian_weak1_sqrt") return MeasurementRule::gaussian_weak1_sqrt;
    if (s == "gaussian_weak1_linear") return MeasurementRule::gaussian_weak1_linear;
    if (s == "gaussian_asym_sqrt") return MeasurementRule::gaussian_asym_sqrt;
    if (s == "gaussian_asym_linear") return MeasurementRule::gaussian_asym_linear;
    if (s == "fourier_weak1") return MeasurementRule::fourier_weak1;
    if (s == "untf_weak1") return MeasurementRule::untf_weak1;
    if (s == "gaussian_uniform") return MeasurementRule::gaussian_uniform;
    throw InvalidInput("unknown measurement rule: " + s);
}

long min_measurements(MeasurementRule rule, int s, int n, double bound,
                      double epsilon, double frame_k) {
    if (s < 1 || n <= s) throw InvalidInput("min_measurements: need 1 <= s < n");
    if (!(bound > 0.0 && bound < 1.0))
        throw InvalidInput("min_measurements: isometry bound must lie in (0, 1)");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidInput("min_measurements: epsilon must lie in (0, 1)");
    const double d = bound;
    const double log2ns = std::log(2.0 * (n - s) / epsilon);
    const double log_ns = std::log(static_cast<double>(n - s) / epsilon);
    double m_real = 0.0;
    switch (rule) {
        case MeasurementRule::gaussian_weak1_sqrt: {
            const double root = (std::sqrt(s + 1.0) + std::sqrt(2.0 * log2ns)) /
                                (std::sqrt(1.0 + d) - 1.0);
            m_real = root * root;
            break;
        }
        case MeasurementRule::gaussian_weak1_linear: {
            const double c = std::sqrt(1.0 + d) - 1.0;
            m_real = 2.0 / (c * c) * (s + 2.0 * log2ns + 1.0);
            break;
        }
        case MeasurementRule::gaussian_asym_sqrt: {
            const double root = (std::sqrt(s + 1.0) + std::sqrt(2.0 * log_ns)) / d;
            m_real = root * root;
            break;
        }
        case MeasurementRule::gaussian_asym_linear:
            m_real = 2.0 / (d * d) * (s + 2.0 * log2ns + 1.0);
            break;
        case MeasurementRule::fourier_weak1:
            m_real = 2.0 * (3.0 + d) / (3.0 * d * d) * (log2ns + std::log(s + 1.0)) *
                     (s + 1.0);
            break;
        case MeasurementRule::untf_weak1:
            if (frame_k <= 0.0) throw InvalidInput("min_measurements: K must be positive");
            m_real = 4.0 * std::sqrt(std::exp(1.0)) / (d * d) *
                     (s + 288.0 * frame_k * frame_k * log_ns + 1.0);
            break;
        case MeasurementRule::gaussian_uniform: {
            const double c = std::sqrt(1.0 + d) - 1.0;
            m_real = 2.0 / (c * c) *
                     ((3.0 + std::log(static_cast<double>(n) / s)) * s +
                      2.0 * std::log(2.0 / epsilon) + 1.0);
            break;
        }
    }
    if (!std::isfinite(m_real) || m_real > 9e18)
        throw InvalidInput("min_measurements: condition unsatisfiable at these parameters");
    long m = static_cast<long>(std::ceil(m_real));
    if (m < 1) m = 1;
    // pin the exact integer threshold against the ceiling's rounding
    while (static_cast<double>(m) < m_real) ++m;
    while (m > 1 && static_cast<double>(m - 1) >= m_real) --m;
    return m;
}

long min_snapshots(int m, int s, double epsilon, double eta, double nu,
                   double theta, double tau, double noise_ratio) {
    if (m < 1 || s < 1) throw InvalidInput("min_snapshots: need m, s >= 1");
    auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
    if (!in_unit(epsilon) || !in_unit(eta) || !in_unit(nu) || !in_unit(theta) ||
        !in_unit(tau))
        throw InvalidInput("min_snapshots: epsilon, eta, nu, theta, tau must lie in (0, 1)");
    if (noise_ratio < 0.0) throw InvalidInput("min_snapshots: noise_ratio must be >= 0");
    const double log_term = std::log(8.0 / epsilon);
    long N = 2L * (m + s) + 1;  // strict inequality
    N = std::max(N, static_cast<long>(std::ceil(36.0 / (theta * theta) * (s + log_term))));
    if (noise_ratio > 0.0) {
        const double c = (1.0 + theta) * tau *
                         std::min((1.0 + nu) * eta / 3.0, nu / (2.0 + tau));
        const double rhs = 144.0 / (c * c) *
                           (noise_ratio + 2.0 * std::sqrt(noise_ratio)) *
                           (m + s + log_term);
        N = std::max(N, static_cast<long>(std::ceil(rhs)));
    }
    return N;
}

}  // namespace samusic
