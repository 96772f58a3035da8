#include "samusic/subspace.hpp"

#include <vector>

#include "samusic/errors.hpp"

namespace samusic {

SubspaceEstimate estimate_signal_subspace(const Mat& Y, double tau) {
    if (!(tau > 0.0 && tau < 1.0))
        throw InvalidInput("estimate_signal_subspace: tau must lie in (0, 1)");
    if (Y.rows() < 2) throw InvalidInput("estimate_signal_subspace: need m >= 2");
    if (Y.cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateInput("estimate_signal_subspace: Y is zero");

    const Index m = Y.rows();
    const double N = static_cast<double>(Y.cols());
    const Mat cov = (Y * Y.adjoint()) / N;
    auto [lambda, vectors] = hermitian_eig_desc(cov);

    // Remove the noise-floor bias: shift the spectrum so the smallest
    // eigenvalue becomes exactly zero. Eigenvectors are unchanged.
    RealVec biased = lambda.array() - lambda(m - 1);
    biased(m - 1) = 0.0;

    const double top = biased(0);
    if (top <= 0.0)
        throw NoSpectralGap("estimate_signal_subspace: flat spectrum after bias removal",
                            std::vector<double>(biased.data(), biased.data() + m));

    // Largest r in [1, m-1] whose gap clears tau * top; ties at the
    // threshold are accepted.
    int r = 0;
    for (int k = static_cast<int>(m) - 1; k >= 1; --k) {
        if (biased(k - 1) - biased(k) >= tau * top) {
            r = k;
            break;
        }
    }
    if (r == 0)
        throw NoSpectralGap("estimate_signal_subspace: no eigenvalue gap clears tau",
                            std::vector<double>(biased.data(), biased.data() + m));

    // The chosen r must pass the two-sided form of the gap rule: its own gap
    // clears the threshold and every later gap stays strictly below it.
    for (int k = r + 1; k <= static_cast<int>(m) - 1; ++k)
        if (biased(k - 1) - biased(k) >= tau * top)
            throw Error("estimate_signal_subspace: gap rule postcondition violated");

    SubspaceEstimate est{r, OrthonormalBasis(vectors.columns().leftCols(r)),
                         std::move(biased), tau, Y.cols() < m};
    return est;
}

}  // namespace samusic
