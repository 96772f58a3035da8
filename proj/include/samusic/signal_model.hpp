#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "samusic/sensing.hpp"
#include "samusic/support_set.hpp"
#include "samusic/types.hpp"

namespace samusic {

enum class SignalModel { mixed_multichannel, fixed_rank, conditioned };

std::string to_string(SignalModel m);
SignalModel signal_model_from_string(const std::string& s);

/// Row-sparse signal description. Exactly one model's parameters are read:
///   mixed_multichannel: nonzero block Psi * Lambda * Phi, Phi i.i.d. standard Gaussian
///   fixed_rank:         U0 * diag(sv) * V0^H with Haar orthonormal factors
///   conditioned:        full row rank s, sigma_k = kappa^(-(k-1)/(s-1))
struct SignalSpec {
    int n = 0;
    int s = 0;
    int N = 0;
    std::optional<SupportSet> support;  // nullopt: uniform random s-subset
    SignalModel model = SignalModel::fixed_rank;
    Field field = Field::complex;
    std::uint64_t seed = 0;

    Mat psi;                // mixed_multichannel, s x M
    RealVec lambda;         // mixed_multichannel, M positive diagonal entries
    int rank = 0;           // fixed_rank
    RealVec singular_values; // fixed_rank, positive descending, length == rank
    double kappa = 1.0;     // conditioned, >= 1
};

enum class NoiseKind { none, snr_db, sigma_w };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double value = 0.0;  // SNR in dB, or noise std sigma_w >= 0
    std::uint64_t seed = 0;
};

/// One reproducible trial: Y = A X0 + W with row support J0.
struct ProblemInstance {
    Mat A;
    Mat X0;
    Mat W;
    Mat Y;
    SupportSet J0;
    Field field = Field::complex;
    SensingSpec sensing;
    SignalSpec signal;
    NoiseSpec noise;
    double sigma_w_used = 0.0;
};

/// Draws (X0, J0) per the spec. Rows outside J0 are exactly zero.
std::pair<Mat, SupportSet> generate_signal(const SignalSpec& spec);

struct NoisyMeasurement {
    Mat Y;
    Mat W;
    double sigma_w_used = 0.0;
};

/// Y = A X0 + W. For snr_db the noise variance is set against the empirical
/// signal power: sigma_w^2 = ||A X0||_F^2 / (m N 10^(SNR/10)), so the realized
/// SNR of every trial is exact rather than an expectation.
NoisyMeasurement add_noise(const Mat& A, const Mat& X0, const NoiseSpec& noise,
                           Field field);

/// true iff every subset of rank(X) rows of X is linearly independent.
/// Brute-force enumeration; rows are capped at 20.
bool is_row_nondegenerate(const Mat& X);

/// Assembles a full instance from the three specs. The sensing and signal
/// fields must agree (complex DFT pairs with complex signals, Gaussian with real).
ProblemInstance make_instance(const SensingSpec& sensing, const SignalSpec& signal,
                              const NoiseSpec& noise);

/// Directory layout: A.cmx, X0.cmx, W.cmx, Y.cmx + instance.json metadata.
void save_instance(const ProblemInstance& inst, const std::string& dir);
ProblemInstance load_instance(const std::string& dir);

}  // namespace samusic
