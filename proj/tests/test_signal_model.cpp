#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "samusic/errors.hpp"
#include "samusic/linalg.hpp"
#include "samusic/rng.hpp"
#include "samusic/signal_model.hpp"

using namespace samusic;

namespace {

Mat nonzero_block(const Mat& X0, const SupportSet& J0) {
    Mat block(J0.size(), X0.cols());
    for (int k = 0; k < J0.size(); ++k)
        block.row(k) = X0.row(J0.indices()[k] - 1);
    return block;
}

SignalSpec base_spec() {
    SignalSpec spec;
    spec.n = 32;
    spec.s = 8;
    spec.N = 64;
    spec.field = Field::complex;
    spec.seed = 42;
    return spec;
}

}  // namespace

TEST_CASE("fixed_rank full-rank equal singular values") {
    SignalSpec spec = base_spec();
    spec.model = SignalModel::fixed_rank;
    spec.rank = 8;
    spec.singular_values = RealVec::Ones(8);
    auto [X0, J0] = generate_signal(spec);
    const RealVec sv = singular_values(nonzero_block(X0, J0));
    CHECK(numerical_rank(nonzero_block(X0, J0)) == 8);
    CHECK(sv(0) / sv(7) == doctest::Approx(1).epsilon(1e-9));
    // rows outside the support are exactly zero
    for (int i = 1; i <= spec.n; ++i)
        if (!J0.contains(i)) CHECK(X0.row(i - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fixed_rank rank-defective block") {
    SignalSpec spec = base_spec();
    spec.model = SignalModel::fixed_rank;
    spec.rank = 4;
    spec.singular_values = RealVec::Ones(4);
    auto [X0, J0] = generate_signal(spec);
    const RealVec sv = singular_values(nonzero_block(X0, J0));
    CHECK(sv(3) == doctest::Approx(1).epsilon(1e-9));
    CHECK(sv(4) < 1e-12);
}

TEST_CASE("conditioned model hits the requested condition number") {
    SignalSpec spec = base_spec();
    spec.model = SignalModel::conditioned;
    spec.kappa = 50.0;
    auto [X0, J0] = generate_signal(spec);
    const RealVec sv = singular_values(nonzero_block(X0, J0));
    CHECK(sv(0) / sv(7) == doctest::Approx(50).epsilon(1e-9));
    CHECK(numerical_rank(nonzero_block(X0, J0)) == 8);
}

TEST_CASE("mixed multichannel with identity mixing matches the row covariance") {
    SignalSpec spec = base_spec();
    spec.s = 4;
    spec.N = 10000;
    spec.model = SignalModel::mixed_multichannel;
    spec.psi = Mat::Identity(4, 4);
    RealVec lambda(4);
    lambda << 2.0, 1.5, 1.0, 0.5;
    spec.lambda = lambda;
    auto [X0, J0] = generate_signal(spec);
    const Mat block = nonzero_block(X0, J0);
    const Mat cov = block * block.adjoint() / static_cast<double>(spec.N);
    const Mat target = (lambda.array().square().matrix()).asDiagonal();
    CHECK(spectral_norm(cov - target) < 0.1 * spectral_norm(target));
}

TEST_CASE("explicit support is honored") {
    SignalSpec spec = base_spec();
    spec.model = SignalModel::fixed_rank;
    spec.rank = 2;
    spec.singular_values = RealVec::Ones(2);
    spec.s = 3;
    spec.support = SupportSet({5, 9, 20}, 32);
    auto [X0, J0] = generate_signal(spec);
    CHECK(J0 == *spec.support);
}

TEST_CASE("same seed reproduces the signal exactly") {
    SignalSpec spec = base_spec();
    spec.model = SignalModel::conditioned;
    spec.kappa = 10.0;
    auto [X0a, J0a] = generate_signal(spec);
    auto [X0b, J0b] = generate_signal(spec);
    CHECK((X0a - X0b).cwiseAbs().maxCoeff() == 0.0);
    CHECK(support_match(J0a, J0b));
}

TEST_CASE("add_noise modes") {
    Rng rng(1);
    const Mat A = rng.gaussian_complex(64, 32);
    SignalSpec spec = base_spec();
    spec.model = SignalModel::fixed_rank;
    spec.rank = 8;
    spec.singular_values = RealVec::Ones(8);
    spec.N = 256;
    auto [X0, J0] = generate_signal(spec);

    NoiseSpec none;
    const auto clean = add_noise(A, X0, none, Field::complex);
    CHECK(clean.W.cwiseAbs().maxCoeff() == 0.0);
    CHECK((clean.Y - A * X0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(clean.sigma_w_used == 0.0);

    NoiseSpec zero_sigma{NoiseKind::sigma_w, 0.0, 3};
    const auto same = add_noise(A, X0, zero_sigma, Field::complex);
    CHECK((same.Y - clean.Y).cwiseAbs().maxCoeff() == 0.0);

    // empirical SNR within +-1 dB of the requested 30 dB (m N = 16384 entries)
    NoiseSpec snr{NoiseKind::snr_db, 30.0, 5};
    const auto noisy = add_noise(A, X0, snr, Field::complex);
    const double realized =
        10.0 * std::log10((A * X0).squaredNorm() / noisy.W.squaredNorm());
    CHECK(realized == doctest::Approx(30.0).epsilon(1.0 / 30.0));
}

TEST_CASE("is_row_nondegenerate") {
    CHECK(is_row_nondegenerate(Mat::Identity(3, 3)));

    Mat prop(3, 3);
    prop << Complex(1, 0), Complex(2, 0), Complex(3, 0),
            Complex(2, 0), Complex(4, 0), Complex(6, 0),
            Complex(0, 0), Complex(1, 0), Complex(0, 0);
    CHECK(numerical_rank(prop) == 2);
    CHECK_FALSE(is_row_nondegenerate(prop));

    Rng rng(8);
    CHECK(is_row_nondegenerate(rng.gaussian_complex(8, 4)));

    CHECK_THROWS_AS(is_row_nondegenerate(Mat::Zero(21, 2)), UnsupportedSize);
}

TEST_CASE("instance assembly and directory round-trip") {
    SensingSpec sensing{Ensemble::fourier_uniform_rows, 16, 32, true, 101};
    SignalSpec signal = base_spec();
    signal.model = SignalModel::fixed_rank;
    signal.rank = 4;
    signal.singular_values = RealVec::Ones(4);
    NoiseSpec noise{NoiseKind::snr_db, 20.0, 55};
    const ProblemInstance inst = make_instance(sensing, signal, noise);
    CHECK((inst.Y - (inst.A * inst.X0 + inst.W)).cwiseAbs().maxCoeff() == 0.0);

    const std::string dir = "test_instance_tmp";
    save_instance(inst, dir);
    const ProblemInstance back = load_instance(dir);
    CHECK((back.A - inst.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.X0 - inst.X0).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.W - inst.W).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.Y - inst.Y).cwiseAbs().maxCoeff() == 0.0);
    CHECK(support_match(back.J0, inst.J0));
    CHECK(back.signal.rank == 4);
    CHECK(back.noise.value == 20.0);
    std::filesystem::remove_all(dir);

    // mixing a real ensemble with a complex signal is rejected
    SensingSpec gauss{Ensemble::gaussian, 16, 32, true, 1};
    CHECK_THROWS_AS(make_instance(gauss, signal, noise), InvalidInput);
}
