#include "samusic/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "samusic/errors.hpp"
#include "samusic/linalg.hpp"
#include "samusic/rng.hpp"

namespace samusic {

std::string to_string(Ensemble e) {
    switch (e) {
        case Ensemble::gaussian: return "gaussian";
        case Ensemble::fourier_bernoulli_rows: return "fourier_bernoulli_rows";
        case Ensemble::fourier_uniform_rows: return "fourier_uniform_rows";
        case Ensemble::fourier_bunched_rows: return "fourier_bunched_rows";
    }
    throw InvalidInput("unknown ensemble");
}

Ensemble ensemble_from_string(const std::string& s) {
    if (s == "gaussian") return Ensemble::gaussian;
    if (s == "fourier_bernoulli_rows") return Ensemble::fourier_bernoulli_rows;
    if (s == "fourier_uniform_rows") return Ensemble::fourier_uniform_rows;
    if (s == "fourier_bunched_rows") return Ensemble::fourier_bunched_rows;
    throw InvalidInput("unknown ensemble: " + s);
}

Mat dft_matrix(int n) {
    if (n < 1) throw InvalidInput("dft_matrix: n must be positive");
    Mat F(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            // reduce j*k mod n first so the phase stays accurate for large n
            const long long prod = static_cast<long long>(j) * k % n;
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(prod) / n;
            F(j, k) = scale * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return F;
}

namespace {

Mat dft_rows(int n, const std::vector<int>& rows_1based) {
    Mat F(static_cast<Index>(rows_1based.size()), n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t r = 0; r < rows_1based.size(); ++r) {
        const int j = rows_1based[r] - 1;
        for (int k = 0; k < n; ++k) {
            const long long prod = static_cast<long long>(j) * k % n;
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(prod) / n;
            F(static_cast<Index>(r), k) = scale * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return F;
}

}  // namespace

Mat generate(const SensingSpec& spec) {
    if (spec.m < 1 || spec.m > spec.n)
        throw InvalidInput("sensing: require 1 <= m <= n");
    Rng rng(spec.seed);
    Mat A;
    switch (spec.ensemble) {
        case Ensemble::gaussian: {
            A = rng.gaussian_real(spec.m, spec.n,
                                  1.0 / std::sqrt(static_cast<double>(spec.n)));
            break;
        }
        case Ensemble::fourier_bernoulli_rows: {
            const double p = static_cast<double>(spec.m) / spec.n;
            std::vector<int> rows;
            for (int j = 1; j <= spec.n; ++j)
                if (rng.uniform01() < p) rows.push_back(j);
            if (rows.empty())
                throw DegenerateInput("fourier_bernoulli_rows: draw selected no rows");
            A = dft_rows(spec.n, rows);
            break;
        }
        case Ensemble::fourier_uniform_rows: {
            A = dft_rows(spec.n, rng.sample_without_replacement(spec.n, spec.m));
            break;
        }
        case Ensemble::fourier_bunched_rows: {
            const int offset = rng.below(spec.n);  // 0-based start, wraps around
            std::vector<int> rows(spec.m);
            for (int k = 0; k < spec.m; ++k) rows[k] = (offset + k) % spec.n + 1;
            std::sort(rows.begin(), rows.end());
            A = dft_rows(spec.n, rows);
            break;
        }
    }
    return spec.normalize_columns ? normalized_columns(A) : A;
}

Mat normalized_columns(const Mat& A) {
    Mat out = A;
    for (Index j = 0; j < A.cols(); ++j) {
        const double norm = A.col(j).norm();
        if (norm == 0.0) throw InvalidInput("normalized_columns: zero column");
        out.col(j) /= norm;
    }
    return out;
}

double coherence(const Mat& A) {
    RealVec norms(A.cols());
    for (Index j = 0; j < A.cols(); ++j) {
        norms(j) = A.col(j).norm();
        if (norms(j) == 0.0) throw InvalidInput("coherence: zero column");
    }
    double mu = 0.0;
    for (Index k = 0; k < A.cols(); ++k)
        for (Index l = k + 1; l < A.cols(); ++l)
            mu = std::max(mu, std::abs(A.col(k).dot(A.col(l))) / (norms(k) * norms(l)));
    return std::min(mu, 1.0);
}

double welch_bound(int m, int n) {
    if (n < 2) throw InvalidInput("welch_bound: n must be at least 2");
    if (m < 1 || m > n) throw InvalidInput("welch_bound: require 1 <= m <= n");
    return std::sqrt(static_cast<double>(n - m) /
                     (static_cast<double>(m) * (n - 1)));
}

TightFrameReport is_unit_norm_tight_frame(const Mat& A, double tol) {
    TightFrameReport rep;
    for (Index j = 0; j < A.cols(); ++j)
        rep.max_column_norm_error =
            std::max(rep.max_column_norm_error, std::abs(A.col(j).norm() - 1.0));
    const double row_gram_scale =
        static_cast<double>(A.cols()) / static_cast<double>(A.rows());
    const Mat row_gram = A * A.adjoint();  // == (n/m) I for a tight frame
    rep.max_row_gram_error =
        (row_gram - row_gram_scale * Mat::Identity(A.rows(), A.rows()))
            .cwiseAbs()
            .maxCoeff();
    rep.spectral_norm_error = std::abs(spectral_norm(A) - std::sqrt(row_gram_scale));
    rep.unit_columns = rep.max_column_norm_error <= tol;
    rep.orthogonal_rows = rep.max_row_gram_error <= tol * row_gram_scale;
    rep.spectral_norm_ok = rep.spectral_norm_error <= tol;
    return rep;
}

}  // namespace samusic
