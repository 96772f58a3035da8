#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "samusic/sensing.hpp"
#include "samusic/signal_model.hpp"
#include "samusic/types.hpp"

namespace samusic {

/// Monte-Carlo sweep description. Cells are the cartesian product of
/// m_values and variants (ranks of the equal-singular-value signal, or
/// condition numbers of the geometrically-decaying one).
struct SweepConfig {
    int n = 128;
    int s = 8;
    int N = 256;
    std::vector<int> m_values;
    enum class VariantKind { rank, kappa } variant_kind = VariantKind::rank;
    std::vector<double> variants;
    std::optional<double> snr_db;  // absent: noiseless
    std::vector<std::string> algorithms;
    int trials = 100;
    double tau = 1e-3;
    double eta = 0.0;  // stopping threshold for the unknown-sparsity variant
    std::uint64_t base_seed = 0;
    Ensemble ensemble = Ensemble::fourier_uniform_rows;
    bool normalize_columns = true;
    bool record_timing = true;  // false pins the timing column to 0 for byte-stable output

    static SweepConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
    void validate() const;
};

/// One Monte-Carlo outcome; reproducible from (config, cell, trial) alone
/// apart from the wall time.
struct TrialRecord {
    std::string variant_kind;
    double variant = 0.0;
    int m = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string algorithm;
    std::vector<int> recovered;  // 1-based support indices
    bool exact_match = false;
    double wall_time_s = 0.0;
    int r_estimated = 0;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::vector<TrialRecord> records;  // deterministic order
    std::string results_csv;
    std::string trials_jsonl;
};

/// Runs every (cell, trial, algorithm) combination. Per-trial errors are
/// recorded, not thrown. `jobs` > 1 runs trials on a thread pool; output is
/// identical to the serial run.
SweepResult run_sweep(const SweepConfig& config, int jobs = 1);

/// Rebuilds the exact problem instance of a recorded trial from its child
/// seed (TrialRecord::seed), for post-hoc diagnosis of individual trials.
ProblemInstance rebuild_trial_instance(const SweepConfig& config, int m,
                                       double variant, std::uint64_t child_seed);

/// Runtime scaling experiment: for scale factor f, the problem grows as
/// n = 64 f, s = n/16, m = 2 s, rank = ceil(7 s / 8), with N = 256 snapshots
/// at 30 dB SNR. Emits one CSV row per (scale, algorithm) with the median
/// wall time in milliseconds.
std::string runtime_scaling_csv(const std::vector<int>& scale_factors, int trials,
                                const std::vector<std::string>& algorithms,
                                std::uint64_t base_seed, int jobs = 1);

/// Wilson 95% score interval for `successes` out of `trials`.
std::pair<double, double> wilson_interval(int successes, int trials);

}  // namespace samusic
