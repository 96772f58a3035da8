#pragma once

#include <cstdint>
#include <string>

#include "samusic/types.hpp"

namespace samusic {

enum class Ensemble {
    gaussian,                // real i.i.d. N(0, 1/n)
    fourier_bernoulli_rows,  // each DFT row kept independently with prob m/n
    fourier_uniform_rows,    // exactly m distinct DFT rows, uniform
    fourier_bunched_rows,    // m consecutive DFT rows at a seeded offset
};

std::string to_string(Ensemble e);
Ensemble ensemble_from_string(const std::string& s);

inline Field field_of(Ensemble e) {
    return e == Ensemble::gaussian ? Field::real : Field::complex;
}

struct SensingSpec {
    Ensemble ensemble = Ensemble::fourier_uniform_rows;
    int m = 0;
    int n = 0;
    bool normalize_columns = false;
    std::uint64_t seed = 0;
};

/// Unitary n-by-n DFT matrix, entry (j,k) = exp(-2*pi*i*(j-1)(k-1)/n)/sqrt(n).
Mat dft_matrix(int n);

/// Draws a sensing matrix from the requested ensemble. For the Bernoulli
/// row scheme the returned row count is random (and may differ from m);
/// all other ensembles return exactly m rows.
Mat generate(const SensingSpec& spec);

/// Scales every column to unit l2 norm; zero columns are rejected.
Mat normalized_columns(const Mat& A);

/// max_{k != l} |<a_k, a_l>| / (||a_k|| ||a_l||), in [0, 1].
double coherence(const Mat& A);

/// sqrt((n - m) / (m (n - 1))), the lower bound on coherence of an
/// m-by-n unit-norm tight frame.
double welch_bound(int m, int n);

struct TightFrameReport {
    bool unit_columns = false;
    bool orthogonal_rows = false;
    bool spectral_norm_ok = false;  // ||A|| == sqrt(n/m) within tol
    double max_column_norm_error = 0.0;
    double max_row_gram_error = 0.0;
    double spectral_norm_error = 0.0;
    bool all_pass() const { return unit_columns && orthogonal_rows && spectral_norm_ok; }
};

TightFrameReport is_unit_norm_tight_frame(const Mat& A, double tol);

}  // namespace samusic
