#pragma once

#include <utility>

#include "samusic/types.hpp"

namespace samusic {

/// Matrix with orthonormal columns spanning a subspace of K^m.
/// All consumers treat a basis only through projections and norms; the
/// individual column phases are not identifiable and never compared.
class OrthonormalBasis {
public:
    /// Wraps Q after checking Q^H Q = I entrywise within 1e-10.
    explicit OrthonormalBasis(Mat Q);

    Index ambient_dim() const { return Q_.rows(); }
    Index dim() const { return Q_.cols(); }
    const Mat& columns() const { return Q_; }

    /// P v for the orthogonal projector P onto the span.
    Vec project(const Vec& v) const;
    /// (I - P) v.
    Vec residual(const Vec& v) const;

    Mat project_cols(const Mat& M) const;
    Mat residual_cols(const Mat& M) const;

    /// Dense m-by-m projector Q Q^H (small ambient dimensions only).
    Mat projector() const { return Q_ * Q_.adjoint(); }

private:
    Mat Q_;
};

/// Sequential Gram-Schmidt with reorthogonalization. A candidate direction is
/// dropped when its residual norm falls to drop_tol times the column norm,
/// which makes the result match the projector-update formula on rank-deficient
/// input. May return zero columns when M is (numerically) zero.
Mat orthonormal_columns(const Mat& M, double drop_tol = 1e-10);

/// Orthonormal basis of the column span of M; rank-zero input is rejected.
OrthonormalBasis orthonormalize(const Mat& M, double drop_tol = 1e-10);

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Rejects input that is non-Hermitian beyond 1e-10 relative.
std::pair<RealVec, OrthonormalBasis> hermitian_eig_desc(const Mat& G);

/// Span of the r dominant left singular vectors of M. 1 <= r <= min(rows, cols);
/// an (numerically) all-zero M is rejected.
OrthonormalBasis dominant_subspace(const Mat& M, int r);

Vec project(const OrthonormalBasis& S, const Vec& v);
Vec residual_project(const OrthonormalBasis& S, const Vec& v);

/// ||P_{S1}^perp P_{S2}|| = largest singular value of (I - P_{S1}) Q_{S2}.
double cross_projector_norm(const OrthonormalBasis& S1, const OrthonormalBasis& S2);

/// Angle between subspaces: asin of the smaller of the two cross-projector
/// norms; a metric even when the dimensions differ. Both subspaces must be
/// nonempty and share the ambient dimension.
double angle_between(const OrthonormalBasis& S1, const OrthonormalBasis& S2);

/// ||P_{S1} - P_{S2}|| computed as the larger of the two cross-projector
/// norms; symmetric, equal to 1 whenever the dimensions differ.
double subspace_distance(const OrthonormalBasis& S1, const OrthonormalBasis& S2);

/// Orthonormal basis of span(S) + range(cols): QR of [basis(S), cols] with
/// rank detection. Columns already inside span(S) contribute nothing.
OrthonormalBasis augment_subspace(const OrthonormalBasis& S, const Mat& cols);

/// Moore-Penrose pseudoinverse via SVD with the usual eps * max_dim * sigma_1 cutoff.
Mat pseudo_inverse(const Mat& M);

/// Singular values of M, descending.
RealVec singular_values(const Mat& M);

/// Largest singular value.
double spectral_norm(const Mat& M);

/// Numerical rank at threshold rel_tol * sigma_1 (0 for an all-zero matrix).
int numerical_rank(const Mat& M, double rel_tol = 1e-10);

}  // namespace samusic
