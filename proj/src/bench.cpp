#include "samusic/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include <nlohmann/json.hpp>

#include "samusic/errors.hpp"
#include "samusic/recovery.hpp"
#include "samusic/rng.hpp"
#include "samusic/signal_model.hpp"
#include "samusic/subspace.hpp"

namespace samusic {

using nlohmann::json;

void SweepConfig::validate() const {
    if (n < 1 || s < 1 || N < 1 || s > n)
        throw InvalidInput("sweep config: bad (n, s, N)");
    if (trials < 1) throw InvalidInput("sweep config: trials must be >= 1");
    if (m_values.empty()) throw InvalidInput("sweep config: empty m_values");
    for (int m : m_values)
        if (m < s + 1 || m > n)
            throw InvalidInput("sweep config: m_values must lie in [s+1, n]");
    if (variants.empty()) throw InvalidInput("sweep config: empty variant list");
    for (double v : variants) {
        if (variant_kind == VariantKind::rank) {
            const int r = static_cast<int>(v);
            if (r < 1 || r > std::min(s, N) || v != r)
                throw InvalidInput("sweep config: rank variants must be integers in [1, min(s, N)]");
        } else if (v < 1.0) {
            throw InvalidInput("sweep config: kappa variants must be >= 1");
        }
    }
    if (algorithms.empty()) throw InvalidInput("sweep config: no algorithms");
    if (!(tau > 0.0 && tau < 1.0)) throw InvalidInput("sweep config: tau must lie in (0, 1)");
    if (!(eta >= 0.0 && eta < 1.0)) throw InvalidInput("sweep config: eta must lie in [0, 1)");
}

SweepConfig SweepConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    SweepConfig c;
    c.n = j.at("n").get<int>();
    c.s = j.at("s").get<int>();
    c.N = j.at("N").get<int>();
    c.m_values = j.at("m_values").get<std::vector<int>>();
    if (j.contains("ranks") == j.contains("kappas"))
        throw InvalidInput("sweep config: provide exactly one of 'ranks' or 'kappas'");
    if (j.contains("ranks")) {
        c.variant_kind = VariantKind::rank;
        for (int r : j.at("ranks").get<std::vector<int>>())
            c.variants.push_back(static_cast<double>(r));
    } else {
        c.variant_kind = VariantKind::kappa;
        c.variants = j.at("kappas").get<std::vector<double>>();
    }
    if (j.contains("snr_db") && !j.at("snr_db").is_null())
        c.snr_db = j.at("snr_db").get<double>();
    c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    c.trials = j.at("trials").get<int>();
    c.tau = j.at("tau").get<double>();
    c.eta = j.value("eta", 0.0);
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
    c.ensemble = ensemble_from_string(
        j.value("ensemble", std::string("fourier_uniform_rows")));
    c.normalize_columns = j.value("normalize_columns", true);
    c.record_timing = j.value("record_timing", true);
    c.validate();
    return c;
}

std::string SweepConfig::to_json_text() const {
    json j{{"n", n},       {"s", s},           {"N", N},
           {"m_values", m_values}, {"algorithms", algorithms},
           {"trials", trials},     {"tau", tau},
           {"eta", eta},           {"base_seed", base_seed},
           {"ensemble", to_string(ensemble)},
           {"normalize_columns", normalize_columns},
           {"record_timing", record_timing}};
    if (variant_kind == VariantKind::rank) {
        std::vector<int> ranks;
        for (double v : variants) ranks.push_back(static_cast<int>(v));
        j["ranks"] = ranks;
    } else {
        j["kappas"] = variants;
    }
    if (snr_db) j["snr_db"] = *snr_db;
    return j.dump(2);
}

std::pair<double, double> wilson_interval(int successes, int trials) {
    if (trials < 1) throw InvalidInput("wilson_interval: trials must be >= 1");
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double nt = trials, p = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double center = (p + z2 / (2.0 * nt)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct AlgoResult {
    SupportSet support;
    int r_estimated = 0;
};

/// Runs one named algorithm on an instance. The oracle variant completes a
/// correct partial support (the lowest s - r true indices).
AlgoResult run_algorithm(const std::string& name, const ProblemInstance& inst,
                         int s, double tau, double eta) {
    const Mat& A = inst.A;
    const Mat& Y = inst.Y;
    if (name == "m-omp") return {p_somp(Y, A, s, 2.0), 0};
    if (name == "s-omp") return {p_somp(Y, A, s, 1.0), 0};

    const SubspaceEstimate est = estimate_signal_subspace(Y, tau);
    if (name == "music") return {music(est.basis, A, s).support, est.r};
    if (name == "ss-omp") return {ss_omp(est.basis, A, s), est.r};
    if (name == "ss-omsp") return {ss_omsp(est.basis, A, s), est.r};
    if (name == "sa-music-ssomp")
        return {sa_music_with_subspace(est, A, s, PartialSupportMethod::ssomp()).support,
                est.r};
    if (name == "sa-music-ssomsp")
        return {sa_music_with_subspace(est, A, s, PartialSupportMethod::ssomsp()).support,
                est.r};
    if (name == "sa-music-exhaustive")
        return {sa_music_with_subspace(est, A, s, PartialSupportMethod::exhaustive())
                    .support,
                est.r};
    if (name == "sa-music-oracle") {
        const int missing = std::max(0, s - est.r);
        std::vector<int> head(inst.J0.indices().begin(),
                              inst.J0.indices().begin() + missing);
        const auto method =
            PartialSupportMethod::oracle(SupportSet(head, inst.J0.universe()));
        return {sa_music_with_subspace(est, A, s, method).support, est.r};
    }
    if (name == "sa-music-unknown")
        return {sa_music_unknown_s_with_subspace(est, A, eta, GreedyRule::ss_omsp)
                    .support,
                est.r};
    if (name == "sa-music-unknown-ssomp")
        return {sa_music_unknown_s_with_subspace(est, A, eta, GreedyRule::ss_omp)
                    .support,
                est.r};
    throw InvalidInput("unknown algorithm: " + name);
}

}  // namespace

ProblemInstance rebuild_trial_instance(const SweepConfig& cfg, int m, double variant,
                                       std::uint64_t child_seed) {
    SensingSpec sensing;
    sensing.ensemble = cfg.ensemble;
    sensing.m = m;
    sensing.n = cfg.n;
    sensing.normalize_columns = cfg.normalize_columns;
    sensing.seed = derive_seed(child_seed, 1);

    SignalSpec signal;
    signal.n = cfg.n;
    signal.s = cfg.s;
    signal.N = cfg.N;
    signal.field = field_of(cfg.ensemble);
    signal.seed = derive_seed(child_seed, 2);
    if (cfg.variant_kind == SweepConfig::VariantKind::rank) {
        signal.model = SignalModel::fixed_rank;
        signal.rank = static_cast<int>(variant);
        signal.singular_values = RealVec::Ones(signal.rank);
    } else {
        signal.model = SignalModel::conditioned;
        signal.kappa = variant;
    }

    NoiseSpec noise;
    if (cfg.snr_db) {
        noise.kind = NoiseKind::snr_db;
        noise.value = *cfg.snr_db;
    }
    noise.seed = derive_seed(child_seed, 3);
    return make_instance(sensing, signal, noise);
}

namespace {

std::string format_double(double v, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

json record_to_json(const TrialRecord& r) {
    return json{{"variant_kind", r.variant_kind},
                {"variant", r.variant},
                {"m", r.m},
                {"trial", r.trial},
                {"seed", r.seed},
                {"algorithm", r.algorithm},
                {"recovered", r.recovered},
                {"exact_match", r.exact_match},
                {"wall_time_s", r.wall_time_s},
                {"r_estimated", r.r_estimated},
                {"failed", r.failed},
                {"error", r.error}};
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, int jobs) {
    cfg.validate();
    if (jobs < 1) jobs = 1;
    const std::string vk =
        cfg.variant_kind == SweepConfig::VariantKind::rank ? "rank" : "kappa";
    const int n_algos = static_cast<int>(cfg.algorithms.size());

    struct Task {
        int variant_idx, m_idx, trial;
    };
    std::vector<Task> tasks;
    for (int vi = 0; vi < static_cast<int>(cfg.variants.size()); ++vi)
        for (int mi = 0; mi < static_cast<int>(cfg.m_values.size()); ++mi)
            for (int t = 0; t < cfg.trials; ++t) tasks.push_back({vi, mi, t});

    SweepResult result;
    result.records.resize(tasks.size() * n_algos);

    auto run_task = [&](size_t task_idx) {
        const Task& task = tasks[task_idx];
        const double variant = cfg.variants[task.variant_idx];
        const int m = cfg.m_values[task.m_idx];
        const std::uint64_t cell_id =
            static_cast<std::uint64_t>(task.variant_idx) * 1000003u +
            static_cast<std::uint64_t>(task.m_idx);
        const std::uint64_t child = derive_seed(cfg.base_seed, cell_id, task.trial);

        std::optional<ProblemInstance> inst;
        std::string gen_error;
        try {
            inst = rebuild_trial_instance(cfg, m, variant, child);
        } catch (const std::exception& e) {
            gen_error = e.what();
        }

        for (int a = 0; a < n_algos; ++a) {
            TrialRecord rec;
            rec.variant_kind = vk;
            rec.variant = variant;
            rec.m = m;
            rec.trial = task.trial;
            rec.seed = child;
            rec.algorithm = cfg.algorithms[a];
            if (!inst) {
                rec.failed = true;
                rec.error = gen_error;
            } else {
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    AlgoResult out =
                        run_algorithm(rec.algorithm, *inst, cfg.s, cfg.tau, cfg.eta);
                    rec.recovered = out.support.indices();
                    rec.r_estimated = out.r_estimated;
                    rec.exact_match = out.support.universe() == inst->J0.universe() &&
                                      support_match(out.support, inst->J0);
                } catch (const std::exception& e) {
                    rec.failed = true;
                    rec.error = e.what();
                }
                const auto t1 = std::chrono::steady_clock::now();
                rec.wall_time_s =
                    std::chrono::duration<double>(t1 - t0).count();
            }
            result.records[task_idx * n_algos + a] = std::move(rec);
        }
    };

    if (jobs == 1) {
        for (size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                run_task(i);
        };
        std::vector<std::thread> pool;
        const int count = std::min<int>(jobs, static_cast<int>(tasks.size()));
        pool.reserve(count);
        for (int w = 0; w < count; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // aggregate in deterministic (variant, m, algorithm) order
    std::string csv =
        "n,s,N,ensemble,snr_db,tau,variant_kind,variant,m,algorithm,trials,"
        "successes,success_rate,ci_lo,ci_hi,median_ms\n";
    for (int vi = 0; vi < static_cast<int>(cfg.variants.size()); ++vi) {
        for (int mi = 0; mi < static_cast<int>(cfg.m_values.size()); ++mi) {
            for (int a = 0; a < n_algos; ++a) {
                int successes = 0;
                std::vector<double> times;
                times.reserve(cfg.trials);
                for (int t = 0; t < cfg.trials; ++t) {
                    const size_t task_idx =
                        (static_cast<size_t>(vi) * cfg.m_values.size() + mi) *
                            cfg.trials +
                        t;
                    const TrialRecord& rec = result.records[task_idx * n_algos + a];
                    successes += rec.exact_match ? 1 : 0;
                    times.push_back(rec.wall_time_s);
                }
                std::sort(times.begin(), times.end());
                const double median_s =
                    cfg.trials % 2 == 1
                        ? times[cfg.trials / 2]
                        : (times[cfg.trials / 2 - 1] + times[cfg.trials / 2]) / 2.0;
                const auto [lo, hi] = wilson_interval(successes, cfg.trials);
                csv += std::to_string(cfg.n) + ',' + std::to_string(cfg.s) + ',' +
                       std::to_string(cfg.N) + ',' + to_string(cfg.ensemble) + ',' +
                       (cfg.snr_db ? format_double(*cfg.snr_db, 3) : "none") + ',' +
                       format_double(cfg.tau, 9) + ',' + vk + ',' +
                       format_double(cfg.variants[vi], 3) + ',' +
                       std::to_string(cfg.m_values[mi]) + ',' + cfg.algorithms[a] +
                       ',' + std::to_string(cfg.trials) + ',' +
                       std::to_string(successes) + ',' +
                       format_double(static_cast<double>(successes) / cfg.trials) +
                       ',' + format_double(lo) + ',' + format_double(hi) + ',' +
                       format_double(
                           cfg.record_timing ? 1000.0 * median_s : 0.0, 3) +
                       '\n';
            }
        }
    }
    result.results_csv = std::move(csv);

    std::string jsonl;
    for (TrialRecord& rec : result.records) {
        if (!cfg.record_timing) rec.wall_time_s = 0.0;
        jsonl += record_to_json(rec).dump();
        jsonl += '\n';
    }
    result.trials_jsonl = std::move(jsonl);
    return result;
}

std::string runtime_scaling_csv(const std::vector<int>& scale_factors, int trials,
                                const std::vector<std::string>& algorithms,
                                std::uint64_t base_seed, int jobs) {
    if (trials < 1) throw InvalidInput("runtime scaling: trials must be >= 1");
    std::string csv = "scale,n,s,m,rank,algorithm,median_ms\n";
    for (size_t si = 0; si < scale_factors.size(); ++si) {
        const int f = scale_factors[si];
        if (f < 1) throw InvalidInput("runtime scaling: scale factors must be >= 1");
        SweepConfig cfg;
        cfg.n = 64 * f;
        cfg.s = cfg.n / 16;
        cfg.N = 256;
        cfg.m_values = {2 * cfg.s};
        cfg.variant_kind = SweepConfig::VariantKind::rank;
        cfg.variants = {static_cast<double>((7 * cfg.s + 7) / 8)};
        cfg.snr_db = 30.0;
        cfg.algorithms = algorithms;
        cfg.trials = trials;
        cfg.tau = 1e-3;
        cfg.base_seed = derive_seed(base_seed, 1000 + si);
        const SweepResult res = run_sweep(cfg, jobs);
        // one aggregated row per algorithm; reuse the sweep's own CSV tail
        for (size_t a = 0; a < algorithms.size(); ++a) {
            std::vector<double> times;
            for (const TrialRecord& rec : res.records)
                if (rec.algorithm == algorithms[a]) times.push_back(rec.wall_time_s);
            std::sort(times.begin(), times.end());
            const double median_s =
                times.size() % 2 == 1
                    ? times[times.size() / 2]
                    : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2.0;
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3f", 1000.0 * median_s);
            csv += std::to_string(f) + ',' + std::to_string(cfg.n) + ',' +
                   std::to_string(cfg.s) + ',' + std::to_string(cfg.m_values[0]) +
                   ',' + std::to_string(static_cast<int>(cfg.variants[0])) + ',' +
                   algorithms[a] + ',' + buf + '\n';
        }
    }
    return csv;
}

}  // namespace samusic
