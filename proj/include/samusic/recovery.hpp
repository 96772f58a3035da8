#pragma once

#include <optional>
#include <string>

#include "samusic/linalg.hpp"
#include "samusic/subspace.hpp"
#include "samusic/support_set.hpp"
#include "samusic/types.hpp"

namespace samusic {

/// How SA-MUSIC obtains the partial support when the estimated subspace
/// dimension falls short of the sparsity level.
struct PartialSupportMethod {
    enum class Kind { ss_omp, ss_omsp, oracle, exhaustive } kind = Kind::ss_omsp;
    std::optional<SupportSet> oracle_j1;  // required for Kind::oracle

    static PartialSupportMethod ssomp() { return {Kind::ss_omp, std::nullopt}; }
    static PartialSupportMethod ssomsp() { return {Kind::ss_omsp, std::nullopt}; }
    static PartialSupportMethod oracle(SupportSet j1) {
        return {Kind::oracle, std::move(j1)};
    }
    static PartialSupportMethod exhaustive() { return {Kind::exhaustive, std::nullopt}; }

    std::string name() const;
};

struct RecoveryReport {
    SupportSet support;          // recovered J
    int r_used = 0;              // subspace dimension used
    std::string method;
    RealVec scores;              // final-pass selection scores per index (empty for pure greedy)
    SupportSet partial_support;  // J1 (empty when no augmentation happened)
};

/// Support selection from a given subspace: scores every column by
/// zeta_l = ||P_S a_l|| / ||a_l|| and returns the s top-scoring indices.
/// Ties break toward the lowest index. Zero columns are rejected.
RecoveryReport music(const OrthonormalBasis& S, const Mat& A, int s);

/// Greedy partial support from a subspace basis: k steps of
///   argmax_l ||P_S (I - P_{R(A_J)}) a_l||.
SupportSet ss_omp(const OrthonormalBasis& S, const Mat& A, int k);

/// Greedy partial support by subspace matching: k steps of
///   argmax_l ||P_{(I - P_{R(A_J)}) S} a_l|| / ||(I - P_{R(A_J)}) a_l||,
/// excluding candidates already inside span(A_J). Throws SpanExhausted if
/// the candidate pool empties before k selections.
SupportSet ss_omsp(const OrthonormalBasis& S, const Mat& A, int k);

/// Data-domain greedy baseline: s steps of argmax_l ||Y^H (I - P_{R(A_J)}) a_l||_p.
/// p = 2 selects by row-wise l2 energy (the usual multichannel OMP);
/// p may be any order in [1, inf], with inf meaning the max row magnitude.
SupportSet p_somp(const Mat& Y, const Mat& A, int s, double p);

/// Subspace-augmented MUSIC given an already-estimated subspace. When the
/// estimate dimension reaches s the partial-support step is skipped entirely
/// and this is exactly `music`. Otherwise a partial support of size
/// s - r is found by `method`, the subspace is augmented with those columns,
/// and the remaining r indices come from the top scores over the rest.
RecoveryReport sa_music_with_subspace(const SubspaceEstimate& est, const Mat& A,
                                      int s, const PartialSupportMethod& method);

/// Full pipeline: estimate the signal subspace from Y, then recover.
RecoveryReport sa_music(const Mat& Y, const Mat& A, int s, double tau,
                        const PartialSupportMethod& method);

enum class GreedyRule { ss_omp, ss_omsp };

/// Sparsity-free variant: after an initial top-r pass, grow a greedy partial
/// support one index at a time (augmenting and re-ranking after each pick)
/// until the estimated subspace fits inside span(A_J) up to eta:
/// ||(I - P_{R(A_J)}) P_S|| <= eta.
RecoveryReport sa_music_unknown_s(const Mat& Y, const Mat& A, double tau,
                                  double eta, GreedyRule rule);

RecoveryReport sa_music_unknown_s_with_subspace(const SubspaceEstimate& est,
                                                const Mat& A, double eta,
                                                GreedyRule rule);

}  // namespace samusic
