#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "samusic/types.hpp"

namespace samusic {

/// SplitMix64 finalizer (Steele, Lea, Flood / xorshift-family mixer).
/// Used to derive independent child seeds from a base seed; every stream of
/// randomness in the library flows from an explicit 64-bit seed through here.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic child seed for (base, stream, step). Splittable: distinct
/// (stream, step) pairs give independent seeds, so parallel trials can be
/// seeded without sharing generator state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t step = 0) {
    std::uint64_t x = splitmix64(base ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    return splitmix64(x ^ (0xC2B2AE3D27D4EB4FULL * (step + 1)));
}

/// Seeded engine wrapper. mt19937_64's output sequence is fixed by the C++
/// standard; distribution shapes below are implemented explicitly so results
/// are reproducible for a given (platform, seed).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01();

    /// Standard real normal via Box-Muller (no engine-dependent caching).
    double normal();

    /// i.i.d. real N(0, sigma^2) entries (imaginary parts zero).
    Mat gaussian_real(Index rows, Index cols, double sigma = 1.0);

    /// i.i.d. circular complex Gaussian, variance sigma^2 per entry
    /// (real and imaginary parts each N(0, sigma^2/2)).
    Mat gaussian_complex(Index rows, Index cols, double sigma = 1.0);

    Mat gaussian(Field field, Index rows, Index cols, double sigma = 1.0) {
        return field == Field::real ? gaussian_real(rows, cols, sigma)
                                    : gaussian_complex(rows, cols, sigma);
    }

    /// Uniform k-subset of {1, ..., n}, returned sorted.
    std::vector<int> sample_without_replacement(int n, int k);

    /// Uniform integer in [0, n).
    int below(int n);

    /// Matrix with orthonormal columns drawn from the rotation-invariant
    /// distribution (QR of an i.i.d. Gaussian block, sign-fixed R diagonal).
    Mat haar_orthonormal(Field field, Index rows, Index cols);

private:
    std::mt19937_64 engine_;
};

}  // namespace samusic
