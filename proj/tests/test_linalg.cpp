#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "samusic/errors.hpp"
#include "samusic/linalg.hpp"
#include "samusic/rng.hpp"

using namespace samusic;

namespace {

Mat diag3(double a, double b, double c) {
    Mat D = Mat::Zero(3, 3);
    D(0, 0) = a;
    D(1, 1) = b;
    D(2, 2) = c;
    return D;
}

Vec unit(int dim, int axis) {
    Vec e = Vec::Zero(dim);
    e(axis) = 1.0;
    return e;
}

}  // namespace

TEST_CASE("hermitian_eig_desc on diagonal and rank-one inputs") {
    auto [vals, basis] = hermitian_eig_desc(diag3(1, 4, 2));
    CHECK(vals(0) == doctest::Approx(4));
    CHECK(vals(1) == doctest::Approx(2));
    CHECK(vals(2) == doctest::Approx(1));
    // eigenvectors line up with e2, e3, e1 (up to phase)
    CHECK(std::abs(basis.columns()(1, 0)) == doctest::Approx(1));
    CHECK(std::abs(basis.columns()(2, 1)) == doctest::Approx(1));
    CHECK(std::abs(basis.columns()(0, 2)) == doctest::Approx(1));

    auto [ivals, ibasis] = hermitian_eig_desc(Mat::Identity(3, 3));
    for (int k = 0; k < 3; ++k) CHECK(ivals(k) == doctest::Approx(1));

    Rng rng(7);
    Vec v = rng.gaussian_complex(5, 1).col(0);
    v /= v.norm();
    auto [rvals, rbasis] = hermitian_eig_desc(Mat(v * v.adjoint()));
    CHECK(rvals(0) == doctest::Approx(1).epsilon(1e-10));
    for (int k = 1; k < 5; ++k) CHECK(std::abs(rvals(k)) < 1e-10);
}

TEST_CASE("hermitian_eig_desc residual and rejection of non-Hermitian input") {
    Rng rng(11);
    Mat B = rng.gaussian_complex(6, 6);
    Mat G = B + B.adjoint();
    auto [vals, basis] = hermitian_eig_desc(G);
    const double scale = spectral_norm(G);
    for (int k = 0; k < 6; ++k) {
        const Vec v = basis.columns().col(k);
        CHECK((G * v - vals(k) * v).norm() < 1e-8 * scale);
    }
    for (int k = 1; k < 6; ++k) CHECK(vals(k) <= vals(k - 1));

    Mat bad = B;  // generic, far from Hermitian
    CHECK_THROWS_AS(hermitian_eig_desc(bad), InvalidInput);
}

TEST_CASE("dominant_subspace basics") {
    Mat M = Mat::Zero(2, 2);
    M(0, 0) = 3;
    M(1, 1) = 1;
    auto S = dominant_subspace(M, 1);
    CHECK(std::abs(S.columns()(0, 0)) == doctest::Approx(1));

    CHECK_THROWS_AS(dominant_subspace(M, 0), InvalidInput);
    CHECK_THROWS_AS(dominant_subspace(M, 3), InvalidInput);
    CHECK_THROWS_AS(dominant_subspace(Mat::Zero(3, 2), 1), DegenerateInput);
}

TEST_CASE("dominant_subspace matches the full SVD oracle") {
    // orthogonal columns with distinct norms: the span is known exactly
    Rng rng(23);
    Mat Q = rng.haar_orthonormal(Field::complex, 4, 2);
    Mat M(4, 2);
    M.col(0) = 5.0 * Q.col(0);
    M.col(1) = 2.0 * Q.col(1);
    auto S = dominant_subspace(M, 2);
    CHECK(oracles::projector_distance_dense(S.columns(), Q) < 1e-10);

    for (int trial = 0; trial < 25; ++trial) {
        Mat X = rng.gaussian_complex(8, 5);
        for (int r = 1; r <= 5; ++r) {
            auto Sr = dominant_subspace(X, r);
            const Mat U = oracles::svd_left_vectors(X).leftCols(r);
            CHECK(oracles::projector_distance_dense(Sr.columns(), U) < 1e-8);
        }
        // singular values along the pipeline agree with the oracle
        const RealVec lib = singular_values(X);
        const RealVec ref = oracles::svd_singular_values(X);
        for (int k = 0; k < 5; ++k)
            CHECK(lib(k) == doctest::Approx(ref(k)).epsilon(1e-9));
    }
}

TEST_CASE("project / residual_project split v exactly") {
    OrthonormalBasis S{Mat(unit(2, 0))};
    Vec v(2);
    v << 3.0, 4.0;
    CHECK((project(S, v) - Vec(3.0 * unit(2, 0))).norm() < 1e-12);
    CHECK((residual_project(S, v) - Vec(4.0 * unit(2, 1))).norm() < 1e-12);

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Mat Q = rng.haar_orthonormal(Field::complex, 7, 3);
        OrthonormalBasis B(Q);
        Vec x = rng.gaussian_complex(7, 1).col(0);
        const Vec p = project(B, x);
        const Vec q = residual_project(B, x);
        CHECK((p + q - x).norm() < 1e-10 * x.norm());
        CHECK(std::abs(p.dot(q)) < 1e-10 * x.squaredNorm());
        CHECK(std::abs(x.squaredNorm() - p.squaredNorm() - q.squaredNorm()) <
              1e-10 * x.squaredNorm());
        // a vector already inside the span has zero residual
        const Vec inside = Q * rng.gaussian_complex(3, 1).col(0);
        CHECK(residual_project(B, inside).norm() < 1e-10 * inside.norm());
    }
    Vec wrong(3);
    CHECK_THROWS_AS(project(S, wrong), InvalidInput);
}

TEST_CASE("angle_between endpoints and containment") {
    OrthonormalBasis e1{Mat(unit(3, 0))}, e2{Mat(unit(3, 1))};
    CHECK(angle_between(e1, e1) == doctest::Approx(0));
    CHECK(angle_between(e1, e2) == doctest::Approx(std::numbers::pi / 2));

    Rng rng(9);
    Mat Q = rng.haar_orthonormal(Field::complex, 6, 3);
    OrthonormalBasis big(Q), small(Mat(Q.leftCols(1)));
    CHECK(angle_between(big, small) < 1e-10);  // contained subspace

    OrthonormalBasis other{Mat(unit(4, 0))};
    CHECK_THROWS_AS(angle_between(e1, other), InvalidInput);
}

TEST_CASE("subspace_distance against the 2x2 hand construction") {
    // span{e1} vs span{(cos t, sin t)}: distance is |sin t|
    for (double t : {0.1, std::numbers::pi / 6, 1.0, 1.4}) {
        Mat q(2, 1);
        q << std::cos(t), std::sin(t);
        OrthonormalBasis S1{Mat(unit(2, 0))}, S2{q};
        CHECK(subspace_distance(S1, S2) == doctest::Approx(std::abs(std::sin(t))));
        // direct projector subtraction oracle
        CHECK(oracles::projector_distance_dense(S1.columns(), q) ==
              doctest::Approx(std::abs(std::sin(t))));
    }
    Mat q(2, 1);
    q << std::cos(std::numbers::pi / 6), std::sin(std::numbers::pi / 6);
    CHECK(subspace_distance(OrthonormalBasis{Mat(unit(2, 0))}, OrthonormalBasis{q}) ==
          doctest::Approx(0.5));
}

TEST_CASE("subspace_distance: rotation invariance, unequal dims, metric") {
    Rng rng(31);
    Mat Q = rng.haar_orthonormal(Field::complex, 6, 3);
    // right-rotated copy spans the same subspace
    Mat R = rng.haar_orthonormal(Field::complex, 3, 3);
    CHECK(subspace_distance(OrthonormalBasis(Q), OrthonormalBasis(Mat(Q * R))) < 1e-10);

    OrthonormalBasis e1{Mat(unit(2, 0))}, e2{Mat(unit(2, 1))};
    CHECK(subspace_distance(e1, e2) == doctest::Approx(1));

    // different dimensions force distance 1
    OrthonormalBasis small(Mat(Q.leftCols(2))), big(Q);
    CHECK(subspace_distance(small, big) == doctest::Approx(1));

    // symmetry and triangle inequality on equal-dimension random triples
    for (int trial = 0; trial < 60; ++trial) {
        OrthonormalBasis A(rng.haar_orthonormal(Field::complex, 5, 2));
        OrthonormalBasis B(rng.haar_orthonormal(Field::complex, 5, 2));
        OrthonormalBasis C(rng.haar_orthonormal(Field::complex, 5, 2));
        const double ab = subspace_distance(A, B);
        const double ba = subspace_distance(B, A);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ab <= subspace_distance(A, C) + subspace_distance(C, B) + 1e-9);
    }
}

TEST_CASE("augment_subspace spans everything it was given") {
    OrthonormalBasis S{Mat(unit(3, 0))};
    auto grown = augment_subspace(S, Mat(unit(3, 1)));
    CHECK(grown.dim() == 2);
    CHECK(grown.residual(unit(3, 0)).norm() < 1e-12);
    CHECK(grown.residual(unit(3, 1)).norm() < 1e-12);

    // a column already inside the span changes nothing
    auto same = augment_subspace(S, Mat(2.0 * unit(3, 0)));
    CHECK(same.dim() == 1);
    CHECK(subspace_distance(S, same) < 1e-12);

    // Gram-Schmidt by hand: span{e1} + (e1+e2)/sqrt(2) = span{e1, e2}
    Vec mix = (unit(3, 0) + unit(3, 1)) / std::sqrt(2.0);
    auto grown2 = augment_subspace(S, Mat(mix));
    CHECK(grown2.dim() == 2);
    Mat expected(3, 2);
    expected << 1, 0, 0, 1, 0, 0;
    CHECK(oracles::projector_distance_dense(grown2.columns(), expected) < 1e-12);

    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        OrthonormalBasis base(rng.haar_orthonormal(Field::complex, 8, 3));
        Mat cols = rng.gaussian_complex(8, 2);
        auto aug = augment_subspace(base, cols);
        for (int k = 0; k < 3; ++k)
            CHECK(aug.residual(base.columns().col(k)).norm() < 1e-9);
        for (int k = 0; k < 2; ++k)
            CHECK(aug.residual(cols.col(k)).norm() < 1e-9 * cols.col(k).norm());
    }
}

TEST_CASE("pseudo_inverse satisfies the four Penrose identities") {
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 2;
    auto Dp = pseudo_inverse(D);
    CHECK(std::abs(Dp(0, 0) - Complex(0.5, 0)) < 1e-12);
    CHECK(std::abs(Dp(1, 1)) < 1e-12);

    Rng rng(3);
    Mat Q = rng.haar_orthonormal(Field::complex, 5, 3);
    CHECK((pseudo_inverse(Q) - Q.adjoint()).cwiseAbs().maxCoeff() < 1e-10);

    for (int trial = 0; trial < 20; ++trial) {
        Mat M = rng.gaussian_complex(5, 3);
        const Mat P = pseudo_inverse(M);
        const double scale = spectral_norm(M);
        CHECK(spectral_norm(M * P * M - M) < 1e-8 * scale);
        CHECK(spectral_norm(P * M * P - P) < 1e-8 * spectral_norm(P));
        CHECK(spectral_norm(Mat(M * P) - Mat((M * P).adjoint())) < 1e-8);
        CHECK(spectral_norm(Mat(P * M) - Mat((P * M).adjoint())) < 1e-8);
        CHECK(spectral_norm(P * M - Mat::Identity(3, 3)) < 1e-8);  // full column rank
    }
}

TEST_CASE("singular value interlacing under column concatenation") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 6 + rng.below(4);
        const int n1 = 2 + rng.below(3);
        const int n2 = 1 + rng.below(3);
        Mat A1 = rng.gaussian_complex(m, n1);
        Mat A2 = rng.gaussian_complex(m, n2);
        Mat A(m, n1 + n2);
        A << A1, A2;
        const RealVec sa = singular_values(A);
        const RealVec s1 = singular_values(A1);
        for (int k = 0; k < n1; ++k) {
            CHECK(sa(k) >= s1(k) - 1e-9);
            if (k + n2 < sa.size()) CHECK(s1(k) >= sa(k + n2) - 1e-9);
        }
    }
}

TEST_CASE("singular value interlacing through the projected submatrix") {
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 8 + rng.below(4);
        Mat A = rng.gaussian_complex(m, 8);
        // J0 = {1..5}, J = {6..7}: compare A_{J0 u J} against P^perp A_{J0 \ J}
        std::vector<int> j0_minus_j = {1, 2, 3, 4, 5};
        std::vector<int> j = {6, 7};
        std::vector<int> all = {1, 2, 3, 4, 5, 6, 7};
        const Mat AJ = select_columns(A, j);
        const OrthonormalBasis span_j = orthonormalize(AJ);
        const Mat proj = span_j.residual_cols(select_columns(A, j0_minus_j));
        const RealVec outer = singular_values(select_columns(A, all));
        const RealVec inner = singular_values(proj);
        const int jsz = static_cast<int>(j.size());
        for (int k = 0; k < static_cast<int>(j0_minus_j.size()); ++k) {
            CHECK(outer(k) >= inner(k) - 1e-9);
            if (k + jsz < outer.size()) CHECK(inner(k) >= outer(k + jsz) - 1e-9);
        }
    }
}

TEST_CASE("product norm lower bound from extreme singular values") {
    Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + rng.below(3);
        const int m = n + rng.below(4);
        const int p = n + rng.below(4);
        Mat A = rng.gaussian_complex(m, n);
        Mat B = rng.gaussian_complex(n, p);
        const double prod = spectral_norm(A * B);
        const RealVec sa = singular_values(A);
        const RealVec sb = singular_values(B);
        for (int k = 1; k <= n; ++k)
            CHECK(prod >= sa(n - k) * sb(k - 1) - 1e-9);
    }
}

TEST_CASE("orthonormal basis constructor rejects bad input") {
    Mat notQ(2, 2);
    notQ << 1, 1, 0, 1;
    CHECK_THROWS_AS(OrthonormalBasis{notQ}, InvalidInput);
    CHECK_THROWS_AS(OrthonormalBasis{Mat(Mat::Zero(2, 3))}, InvalidInput);
}
