#include "samusic/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "samusic/errors.hpp"

namespace samusic {

namespace {

void require_same_ambient(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw InvalidInput("subspaces live in different ambient dimensions");
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(Mat Q) : Q_(std::move(Q)) {
    if (Q_.rows() < 1 || Q_.cols() < 1)
        throw InvalidInput("orthonormal basis must have at least one column");
    if (Q_.cols() > Q_.rows())
        throw InvalidInput("basis dimension exceeds ambient dimension");
    const Mat gram = Q_.adjoint() * Q_;
    const Mat eye = Mat::Identity(Q_.cols(), Q_.cols());
    if (((gram - eye).cwiseAbs().maxCoeff()) > 1e-10)
        throw InvalidInput("columns are not orthonormal within 1e-10");
}

Vec OrthonormalBasis::project(const Vec& v) const {
    if (v.size() != Q_.rows()) throw InvalidInput("projection: dimension mismatch");
    return Q_ * (Q_.adjoint() * v);
}

Vec OrthonormalBasis::residual(const Vec& v) const {
    if (v.size() != Q_.rows()) throw InvalidInput("projection: dimension mismatch");
    return v - project(v);
}

Mat OrthonormalBasis::project_cols(const Mat& M) const {
    if (M.rows() != Q_.rows()) throw InvalidInput("projection: dimension mismatch");
    return Q_ * (Q_.adjoint() * M);
}

Mat OrthonormalBasis::residual_cols(const Mat& M) const {
    if (M.rows() != Q_.rows()) throw InvalidInput("projection: dimension mismatch");
    return M - project_cols(M);
}

Mat orthonormal_columns(const Mat& M, double drop_tol) {
    if (M.rows() < 1 || M.cols() < 1) throw InvalidInput("orthonormalize: empty matrix");
    Mat Q(M.rows(), std::min(M.rows(), M.cols()));
    Index kept = 0;
    for (Index j = 0; j < M.cols() && kept < Q.cols(); ++j) {
        const double col_norm = M.col(j).norm();
        if (col_norm == 0.0) continue;
        Vec v = M.col(j);
        // two Gram-Schmidt passes: the second removes the rounding left by the first
        for (int pass = 0; pass < 2; ++pass)
            if (kept > 0) v -= Q.leftCols(kept) * (Q.leftCols(kept).adjoint() * v);
        const double res_norm = v.norm();
        if (res_norm <= drop_tol * col_norm) continue;  // inside the current span
        Q.col(kept++) = v / res_norm;
    }
    return Q.leftCols(kept);
}

OrthonormalBasis orthonormalize(const Mat& M, double drop_tol) {
    Mat Q = orthonormal_columns(M, drop_tol);
    if (Q.cols() == 0) throw DegenerateInput("orthonormalize: matrix has rank zero");
    return OrthonormalBasis(std::move(Q));
}

std::pair<RealVec, OrthonormalBasis> hermitian_eig_desc(const Mat& G) {
    if (G.rows() != G.cols()) throw InvalidInput("hermitian_eig_desc: matrix not square");
    const double scale = G.cwiseAbs().maxCoeff();
    if ((G - G.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0))
        throw InvalidInput("hermitian_eig_desc: input not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> es((G + G.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
        throw Error("hermitian_eig_desc: eigensolver failed");
    const Index m = G.rows();
    RealVec values(m);
    Mat vectors(m, m);
    for (Index k = 0; k < m; ++k) {  // Eigen sorts ascending; flip to descending
        values(k) = es.eigenvalues()(m - 1 - k);
        vectors.col(k) = es.eigenvectors().col(m - 1 - k);
    }
    return {values, OrthonormalBasis(vectors)};
}

OrthonormalBasis dominant_subspace(const Mat& M, int r) {
    if (r < 1 || r > std::min(M.rows(), M.cols()))
        throw InvalidInput("dominant_subspace: r out of range");
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
    if (svd.singularValues()(0) <= 0.0)
        throw DegenerateInput("dominant_subspace: zero matrix");
    return OrthonormalBasis(svd.matrixU().leftCols(r));
}

Vec project(const OrthonormalBasis& S, const Vec& v) { return S.project(v); }

Vec residual_project(const OrthonormalBasis& S, const Vec& v) { return S.residual(v); }

double cross_projector_norm(const OrthonormalBasis& S1, const OrthonormalBasis& S2) {
    require_same_ambient(S1, S2);
    // ||(I - P1) P2|| = sigma_max((I - P1) Q2) since Q2^H is a coisometry
    const Mat R = S1.residual_cols(S2.columns());
    const double s = spectral_norm(R);
    return std::min(s, 1.0);
}

double angle_between(const OrthonormalBasis& S1, const OrthonormalBasis& S2) {
    const double a = cross_projector_norm(S1, S2);
    const double b = cross_projector_norm(S2, S1);
    return std::asin(std::min(a, b));
}

double subspace_distance(const OrthonormalBasis& S1, const OrthonormalBasis& S2) {
    const double a = cross_projector_norm(S1, S2);
    const double b = cross_projector_norm(S2, S1);
    return std::max(a, b);
}

OrthonormalBasis augment_subspace(const OrthonormalBasis& S, const Mat& cols) {
    if (cols.rows() != S.ambient_dim())
        throw InvalidInput("augment_subspace: ambient dimension mismatch");
    Mat stacked(S.ambient_dim(), S.dim() + cols.cols());
    stacked << S.columns(), cols;
    return orthonormalize(stacked);
}

Mat pseudo_inverse(const Mat& M) {
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVec& sv = svd.singularValues();
    const double cutoff = std::numeric_limits<double>::epsilon() *
                          static_cast<double>(std::max(M.rows(), M.cols())) *
                          (sv.size() > 0 ? sv(0) : 0.0);
    RealVec inv = RealVec::Zero(sv.size());
    for (Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cutoff) inv(k) = 1.0 / sv(k);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

RealVec singular_values(const Mat& M) {
    Eigen::JacobiSVD<Mat> svd(M);
    return svd.singularValues();
}

double spectral_norm(const Mat& M) {
    return singular_values(M)(0);
}

int numerical_rank(const Mat& M, double rel_tol) {
    const RealVec sv = singular_values(M);
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (Index k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * sv(0)) ++rank;
    return rank;
}

}  // namespace samusic
