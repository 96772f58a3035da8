#pragma once

#include "samusic/linalg.hpp"
#include "samusic/types.hpp"

namespace samusic {

/// Result of signal-subspace estimation from snapshots.
struct SubspaceEstimate {
    int r = 0;                   // estimated subspace dimension
    OrthonormalBasis basis;      // m x r
    RealVec eigenvalues_biased;  // spectrum of the bias-removed covariance, descending
    double tau = 0.0;
    bool covariance_rank_deficient = false;  // N < m, so the bias shift is zero
};

/// Estimates the signal subspace and its dimension from snapshots Y:
/// form the sample covariance Y Y^H / N, subtract its smallest eigenvalue
/// from the diagonal, and return the span of the r dominant eigenvectors,
/// where r is the largest index whose eigenvalue gap clears tau relative to
/// the top eigenvalue while every later gap stays below it.
///
/// Throws DegenerateInput when Y is zero, and NoSpectralGap (carrying the
/// spectrum) when no gap clears the threshold.
SubspaceEstimate estimate_signal_subspace(const Mat& Y, double tau);

}  // namespace samusic
