#include "samusic/rng.hpp"

#include <cmath>
#include <numbers>

#include "samusic/errors.hpp"

namespace samusic {

double Rng::uniform01() {
    // 53 random bits -> double in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    // Box-Muller; draws until the log argument is nonzero.
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

Mat Rng::gaussian_real(Index rows, Index cols, double sigma) {
    Mat out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            out(i, j) = Complex(sigma * normal(), 0.0);
    return out;
}

Mat Rng::gaussian_complex(Index rows, Index cols, double sigma) {
    const double part = sigma / std::sqrt(2.0);
    Mat out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            out(i, j) = Complex(part * normal(), part * normal());
    return out;
}

int Rng::below(int n) {
    if (n <= 0) throw InvalidInput("Rng::below: n must be positive");
    // rejection sampling to avoid modulo bias
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<int>(x % un);
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
    if (k < 0 || k > n) throw InvalidInput("sample_without_replacement: k out of range");
    // partial Fisher-Yates over 1..n
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    for (int i = 0; i < k; ++i) {
        const int j = i + below(n - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

Mat Rng::haar_orthonormal(Field field, Index rows, Index cols) {
    if (cols > rows) throw InvalidInput("haar_orthonormal: cols > rows");
    const Mat G = gaussian(field, rows, cols);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ() * Mat::Identity(rows, cols);
    // Fix the phase so the distribution is exactly rotation-invariant.
    const Mat R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Index j = 0; j < cols; ++j) {
        const Complex d = R(j, j);
        if (std::abs(d) > 0) Q.col(j) *= d / std::abs(d);
    }
    return Q;
}

}  // namespace samusic
