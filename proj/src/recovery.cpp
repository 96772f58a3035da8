#include "samusic/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "samusic/errors.hpp"

namespace samusic {

namespace {

constexpr double kInSpanTol = 1e-10;

/// Greedy argmax update: a candidate must beat the incumbent by more than
/// floating-point noise, so scanning in index order makes the lowest index
/// win on (numerically) exact ties.
bool improves(double score, double incumbent) {
    return score > incumbent + 1e-12 * incumbent;
}

/// Indices (1-based) of the `count` largest scores among `candidates`;
/// ties resolved toward the lowest index.
std::vector<int> top_scoring(const RealVec& scores, const std::vector<int>& candidates,
                             int count) {
    std::vector<int> order = candidates;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores(a - 1) > scores(b - 1);
    });
    order.resize(std::min<size_t>(order.size(), static_cast<size_t>(count)));
    return order;
}

RealVec column_norms(const Mat& A) {
    RealVec norms(A.cols());
    for (Index j = 0; j < A.cols(); ++j) norms(j) = A.col(j).norm();
    return norms;
}

/// Incrementally maintained orthonormal basis of span(A_J) for greedy loops.
class GrowingSpan {
public:
    explicit GrowingSpan(Index ambient) : Q_(ambient, 0) {}

    void add(const Vec& column) {
        Vec v = column;
        for (int pass = 0; pass < 2; ++pass)
            if (Q_.cols() > 0) v -= Q_ * (Q_.adjoint() * v);
        const double norm = v.norm();
        if (norm <= kInSpanTol * column.norm()) return;  // nothing new to add
        Q_.conservativeResize(Eigen::NoChange, Q_.cols() + 1);
        Q_.col(Q_.cols() - 1) = v / norm;
    }

    Vec residual(const Vec& v) const {
        return Q_.cols() == 0 ? v : Vec(v - Q_ * (Q_.adjoint() * v));
    }

    Mat residual_cols(const Mat& M) const {
        return Q_.cols() == 0 ? M : Mat(M - Q_ * (Q_.adjoint() * M));
    }

    Index dim() const { return Q_.cols(); }

private:
    Mat Q_;
};

/// zeta_l = ||P_S a_l|| / ||a_l|| for every column; the criterion normalizes
/// by the column norm, so column scaling cannot change the ranking.
RealVec music_scores(const OrthonormalBasis& S, const Mat& A) {
    if (A.rows() != S.ambient_dim())
        throw InvalidInput("music: subspace and matrix dimensions disagree");
    RealVec zeta(A.cols());
    const Mat coeff = S.columns().adjoint() * A;  // r x n
    for (Index l = 0; l < A.cols(); ++l) {
        const double norm = A.col(l).norm();
        if (norm == 0.0) throw InvalidInput("music: zero column in A");
        zeta(l) = coeff.col(l).norm() / norm;
    }
    return zeta;
}

SupportSet greedy_partial(const OrthonormalBasis& S, const Mat& A, int k,
                          PartialSupportMethod::Kind kind) {
    return kind == PartialSupportMethod::Kind::ss_omp ? ss_omp(S, A, k)
                                                      : ss_omsp(S, A, k);
}

/// MUSIC completion over [n] \ J1 using the subspace augmented with A_{J1};
/// adds `extra` top-scoring indices. Returns the report with full scores.
RecoveryReport complete_with_augmented(const OrthonormalBasis& S_hat, const Mat& A,
                                       const SupportSet& J1, int extra,
                                       const std::string& method_name) {
    const int n = static_cast<int>(A.cols());
    const OrthonormalBasis augmented =
        J1.size() > 0 ? augment_subspace(S_hat, select_columns(A, J1)) : S_hat;
    const RealVec zeta = music_scores(augmented, A);
    const std::vector<int> picked = top_scoring(zeta, J1.complement(), extra);
    SupportSet J = J1.united(SupportSet(picked, n));
    return RecoveryReport{std::move(J), static_cast<int>(augmented.dim()), method_name,
                          zeta, J1};
}

}  // namespace

std::string PartialSupportMethod::name() const {
    switch (kind) {
        case Kind::ss_omp: return "ss-omp";
        case Kind::ss_omsp: return "ss-omsp";
        case Kind::oracle: return "oracle";
        case Kind::exhaustive: return "exhaustive";
    }
    return "?";
}

RecoveryReport music(const OrthonormalBasis& S, const Mat& A, int s) {
    const int n = static_cast<int>(A.cols());
    if (s < 0 || s > n) throw InvalidInput("music: s out of range");
    const RealVec zeta = music_scores(S, A);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    SupportSet J(top_scoring(zeta, all, s), n);
    return RecoveryReport{std::move(J), static_cast<int>(S.dim()), "music", zeta,
                          SupportSet::empty(n)};
}

SupportSet ss_omp(const OrthonormalBasis& S, const Mat& A, int k) {
    const int n = static_cast<int>(A.cols());
    if (k < 0 || k > n) throw InvalidInput("ss_omp: k out of range");
    if (A.rows() != S.ambient_dim())
        throw InvalidInput("ss_omp: subspace and matrix dimensions disagree");
    GrowingSpan span(A.rows());
    std::vector<int> J;
    std::vector<char> in_J(n, 0);
    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_score = -1.0;
        for (int l = 1; l <= n; ++l) {
            if (in_J[l - 1]) continue;
            const Vec res = span.residual(A.col(l - 1));
            const double score = (S.columns().adjoint() * res).norm();
            if (improves(score, best_score)) {
                best_score = score;
                best = l;
            }
        }
        J.push_back(best);
        in_J[best - 1] = 1;
        span.add(A.col(best - 1));
    }
    return SupportSet(std::move(J), n);
}

SupportSet ss_omsp(const OrthonormalBasis& S, const Mat& A, int k) {
    const int n = static_cast<int>(A.cols());
    if (k < 0 || k > n) throw InvalidInput("ss_omsp: k out of range");
    if (A.rows() != S.ambient_dim())
        throw InvalidInput("ss_omsp: subspace and matrix dimensions disagree");
    const RealVec a_norms = column_norms(A);
    GrowingSpan span(A.rows());
    std::vector<int> J;
    std::vector<char> in_J(n, 0);
    for (int step = 0; step < k; ++step) {
        // re-orthonormalize the deflated subspace (I - P_{R(A_J)}) S each step;
        // it may collapse entirely, in which case every candidate scores zero
        const Mat W = orthonormal_columns(span.residual_cols(S.columns()));
        int best = -1;
        double best_score = -1.0;
        for (int l = 1; l <= n; ++l) {
            if (in_J[l - 1]) continue;
            const Vec res = span.residual(A.col(l - 1));
            const double res_norm = res.norm();
            if (res_norm <= kInSpanTol * a_norms(l - 1)) continue;  // already spanned
            const double score =
                W.cols() == 0 ? 0.0 : (W.adjoint() * A.col(l - 1)).norm() / res_norm;
            if (improves(score, best_score)) {
                best_score = score;
                best = l;
            }
        }
        if (best < 0)
            throw SpanExhausted("ss_omsp: no admissible candidate before k selections");
        J.push_back(best);
        in_J[best - 1] = 1;
        span.add(A.col(best - 1));
    }
    return SupportSet(std::move(J), n);
}

SupportSet p_somp(const Mat& Y, const Mat& A, int s, double p) {
    const int n = static_cast<int>(A.cols());
    if (s < 0 || s > n) throw InvalidInput("p_somp: s out of range");
    if (!(p >= 1.0)) throw InvalidInput("p_somp: norm order must be >= 1");
    if (Y.rows() != A.rows()) throw InvalidInput("p_somp: Y and A row counts disagree");
    GrowingSpan span(A.rows());
    std::vector<int> J;
    std::vector<char> in_J(n, 0);
    const bool inf_norm = std::isinf(p);
    for (int step = 0; step < s; ++step) {
        int best = -1;
        double best_score = -1.0;
        for (int l = 1; l <= n; ++l) {
            if (in_J[l - 1]) continue;
            const Vec corr = Y.adjoint() * span.residual(A.col(l - 1));
            double score;
            if (inf_norm)
                score = corr.cwiseAbs().maxCoeff();
            else if (p == 2.0)
                score = corr.norm();
            else
                score = std::pow(corr.cwiseAbs().array().pow(p).sum(), 1.0 / p);
            if (improves(score, best_score)) {
                best_score = score;
                best = l;
            }
        }
        J.push_back(best);
        in_J[best - 1] = 1;
        span.add(A.col(best - 1));
    }
    return SupportSet(std::move(J), n);
}

namespace {

/// Exhaustive partial-support search: enumerate all (s-r)-subsets, complete
/// each candidate through the augmented-subspace ranking, and keep the one
/// whose selected-vs-rejected score margin is largest (most MUSIC-consistent).
SupportSet exhaustive_partial(const OrthonormalBasis& S_hat, const Mat& A, int size) {
    const int n = static_cast<int>(A.cols());
    double combos = 1.0;
    for (int i = 0; i < size; ++i) combos *= static_cast<double>(n - i) / (i + 1);
    if (combos > 1e6)
        throw BudgetExceeded("exhaustive partial support: too many subsets");
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i + 1;
    std::vector<int> best_pick;
    double best_margin = -std::numeric_limits<double>::infinity();
    const int extra = static_cast<int>(S_hat.dim());
    while (true) {
        const SupportSet J1(pick, n);
        const OrthonormalBasis augmented =
            augment_subspace(S_hat, select_columns(A, J1));
        const RealVec zeta = music_scores(augmented, A);
        std::vector<double> rest_scores;
        rest_scores.reserve(n - size);
        for (int l : J1.complement()) rest_scores.push_back(zeta(l - 1));
        std::sort(rest_scores.begin(), rest_scores.end(), std::greater<>());
        // margin between the last accepted and the first rejected score
        const double margin =
            extra < static_cast<int>(rest_scores.size())
                ? rest_scores[extra - 1] - rest_scores[extra]
                : std::numeric_limits<double>::infinity();
        if (margin > best_margin) {
            best_margin = margin;
            best_pick = pick;
        }
        int pos = size - 1;
        while (pos >= 0 && pick[pos] == n - size + pos + 1) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int i = pos + 1; i < size; ++i) pick[i] = pick[i - 1] + 1;
    }
    return SupportSet(best_pick, n);
}

}  // namespace

RecoveryReport sa_music_with_subspace(const SubspaceEstimate& est, const Mat& A,
                                      int s, const PartialSupportMethod& method) {
    const int n = static_cast<int>(A.cols());
    if (s < 0 || s > n) throw InvalidInput("sa_music: s out of range");
    if (est.r >= s) {
        RecoveryReport rep = music(est.basis, A, s);
        rep.method = "sa-music(" + method.name() + ")";
        return rep;
    }
    const int missing = s - est.r;
    SupportSet J1 = SupportSet::empty(n);
    switch (method.kind) {
        case PartialSupportMethod::Kind::ss_omp:
        case PartialSupportMethod::Kind::ss_omsp:
            J1 = greedy_partial(est.basis, A, missing, method.kind);
            break;
        case PartialSupportMethod::Kind::oracle:
            if (!method.oracle_j1)
                throw InvalidInput("sa_music: oracle method without a support");
            if (method.oracle_j1->universe() != n)
                throw InvalidInput("sa_music: oracle support universe mismatch");
            if (method.oracle_j1->size() > s)
                throw InvalidInput("sa_music: oracle support larger than s");
            J1 = *method.oracle_j1;
            break;
        case PartialSupportMethod::Kind::exhaustive:
            J1 = exhaustive_partial(est.basis, A, missing);
            break;
    }
    RecoveryReport rep =
        complete_with_augmented(est.basis, A, J1, s - J1.size(),
                                "sa-music(" + method.name() + ")");
    rep.r_used = est.r;
    return rep;
}

RecoveryReport sa_music(const Mat& Y, const Mat& A, int s, double tau,
                        const PartialSupportMethod& method) {
    return sa_music_with_subspace(estimate_signal_subspace(Y, tau), A, s, method);
}

RecoveryReport sa_music_unknown_s_with_subspace(const SubspaceEstimate& est,
                                                const Mat& A, double eta,
                                                GreedyRule rule) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidInput("sa_music_unknown_s: eta must lie in [0, 1]");
    const int n = static_cast<int>(A.cols());
    const RealVec a_norms = column_norms(A);

    RecoveryReport rep = complete_with_augmented(est.basis, A, SupportSet::empty(n),
                                                 est.r, "sa-music-unknown");
    rep.r_used = est.r;

    GrowingSpan j1_span(A.rows());  // span of the greedily selected columns
    std::vector<int> j1;
    std::vector<char> in_j1(n, 0);
    // floating-point floor so eta = 0 matches the exact-arithmetic semantics
    const double stop_level = std::max(eta, 1e-9);
    const int max_steps = n - est.r;
    for (int step = 0; step <= max_steps; ++step) {
        // stop once the estimated subspace sits inside span(A_J) up to eta
        const OrthonormalBasis current = orthonormalize(select_columns(A, rep.support));
        if (cross_projector_norm(current, est.basis) <= stop_level) return rep;
        if (step == max_steps) break;

        // one greedy pick against the accumulated partial support
        int best = -1;
        double best_score = -1.0;
        if (rule == GreedyRule::ss_omp) {
            for (int l = 1; l <= n; ++l) {
                if (in_j1[l - 1]) continue;
                const Vec res = j1_span.residual(A.col(l - 1));
                const double score = (est.basis.columns().adjoint() * res).norm();
                if (improves(score, best_score)) {
                    best_score = score;
                    best = l;
                }
            }
        } else {
            const Mat W = orthonormal_columns(j1_span.residual_cols(est.basis.columns()));
            for (int l = 1; l <= n; ++l) {
                if (in_j1[l - 1]) continue;
                const Vec res = j1_span.residual(A.col(l - 1));
                const double res_norm = res.norm();
                if (res_norm <= kInSpanTol * a_norms(l - 1)) continue;
                const double score =
                    W.cols() == 0 ? 0.0 : (W.adjoint() * A.col(l - 1)).norm() / res_norm;
                if (improves(score, best_score)) {
                    best_score = score;
                    best = l;
                }
            }
        }
        if (best < 0)
            throw SpanExhausted("sa_music_unknown_s: no admissible candidate");
        j1.push_back(best);
        in_j1[best - 1] = 1;
        j1_span.add(A.col(best - 1));

        const SupportSet J1(j1, n);
        rep = complete_with_augmented(est.basis, A, J1, est.r, "sa-music-unknown");
        rep.r_used = est.r;
    }
    throw NoConvergence("sa_music_unknown_s: stopping condition never met");
}

RecoveryReport sa_music_unknown_s(const Mat& Y, const Mat& A, double tau,
                                  double eta, GreedyRule rule) {
    return sa_music_unknown_s_with_subspace(estimate_signal_subspace(Y, tau), A, eta,
                                            rule);
}

}  // namespace samusic
