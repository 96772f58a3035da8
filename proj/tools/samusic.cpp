// Command-line front end: matrix generation, subspace estimation, support
// recovery, restricted-isometry diagnostics, guarantee curves, sample
// complexity calculators, and the Monte-Carlo sweep harness.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "samusic/analysis.hpp"
#include "samusic/bench.hpp"
#include "samusic/cmx.hpp"
#include "samusic/recovery.hpp"
#include "samusic/rng.hpp"
#include "samusic/sensing.hpp"
#include "samusic/signal_model.hpp"
#include "samusic/subspace.hpp"

using nlohmann::json;
using namespace samusic;

namespace {

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << text;
    if (!f) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::vector<int> parse_index_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

std::string sidecar_path(const std::string& out) {
    const auto dot = out.find_last_of('.');
    const auto slash = out.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + ".json";
    return out.substr(0, dot) + ".json";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SA-MUSIC joint sparse recovery toolkit"};
    app.require_subcommand(1);

    // ---- gen-matrix ----
    auto* gen = app.add_subcommand("gen-matrix", "generate a sensing matrix (CMX v1)");
    std::string gen_ensemble = "fourier_uniform_rows", gen_out;
    int gen_m = 0, gen_n = 0;
    std::uint64_t gen_seed = 0;
    bool gen_normalize = false;
    gen->add_option("--ensemble", gen_ensemble,
                    "gaussian | fourier_bernoulli_rows | fourier_uniform_rows | "
                    "fourier_bunched_rows");
    gen->add_option("--m", gen_m, "rows")->required();
    gen->add_option("--n", gen_n, "columns")->required();
    gen->add_option("--seed", gen_seed, "64-bit seed");
    gen->add_flag("--normalize", gen_normalize, "scale columns to unit norm");
    gen->add_option("--out", gen_out, "output .cmx path")->required();

    // ---- gen-instance ----
    auto* gi = app.add_subcommand("gen-instance",
                                  "generate a reproducible problem instance directory");
    std::string gi_ensemble = "fourier_uniform_rows", gi_model = "fixed_rank", gi_dir;
    int gi_m = 0, gi_n = 128, gi_s = 8, gi_N = 256, gi_rank = 0;
    double gi_kappa = 1.0, gi_snr = 0.0, gi_sigma = 0.0;
    bool gi_noiseless = false;
    std::string gi_support, gi_sv;
    std::uint64_t gi_seed = 0;
    gi->add_option("--ensemble", gi_ensemble);
    gi->add_option("--m", gi_m)->required();
    gi->add_option("--n", gi_n);
    gi->add_option("--s", gi_s);
    gi->add_option("--N", gi_N);
    gi->add_option("--model", gi_model, "fixed_rank | conditioned");
    gi->add_option("--rank", gi_rank, "rank for fixed_rank (default s)");
    gi->add_option("--singular-values", gi_sv,
                   "comma list for fixed_rank (default all ones)");
    gi->add_option("--kappa", gi_kappa, "condition number for conditioned");
    gi->add_option("--support", gi_support, "comma list of 1-based indices (default random)");
    auto* gi_snr_opt = gi->add_option("--snr-db", gi_snr, "noise at this SNR");
    auto* gi_sigma_opt = gi->add_option("--sigma-w", gi_sigma, "noise std per entry");
    gi->add_flag("--noiseless", gi_noiseless, "no noise (default)");
    gi->add_option("--seed", gi_seed);
    gi->add_option("--out-dir", gi_dir)->required();

    // ---- subspace ----
    auto* sub = app.add_subcommand("subspace", "estimate the signal subspace from snapshots");
    std::string sub_in, sub_out;
    double sub_tau = 1e-3;
    sub->add_option("--in", sub_in, "snapshot matrix Y (.cmx)")->required();
    sub->add_option("--tau", sub_tau, "relative eigenvalue-gap threshold");
    sub->add_option("--out", sub_out, "basis output (.cmx); a .json sidecar is written too")
        ->required();

    // ---- recover ----
    auto* rec = app.add_subcommand("recover", "run a support recovery algorithm");
    std::string rec_algo, rec_dir, rec_out;
    double rec_tau = 1e-3, rec_eta = 0.0;
    int rec_s = 0;
    rec->add_option("--algo", rec_algo,
                    "music | sa-music-ssomp | sa-music-ssomsp | ss-omp | ss-omsp | "
                    "m-omp | sa-music-unknown")
        ->required();
    rec->add_option("--instance", rec_dir, "instance directory")->required();
    rec->add_option("--tau", rec_tau);
    rec->add_option("--eta", rec_eta, "stopping threshold for sa-music-unknown");
    rec->add_option("--s", rec_s, "sparsity level (default: |J0| from the instance)");
    rec->add_option("--out", rec_out, "report JSON path")->required();

    // ---- rip ----
    auto* rip = app.add_subcommand("rip", "weak-1 restricted isometry constants");
    std::string rip_matrix, rip_support, rip_out;
    rip->add_option("--matrix", rip_matrix, "A (.cmx)")->required();
    rip->add_option("--support", rip_support, "comma list of 1-based indices")->required();
    rip->add_option("--out", rip_out, "output JSON")->required();

    // ---- curve ----
    auto* cur = app.add_subcommand("curve", "guarantee trade-off curve (CSV)");
    std::string cur_regime, cur_out;
    int cur_s = 0, cur_r = 0, cur_n = 0, cur_N = 0, cur_steps = 99;
    double cur_eps = 1e-3, cur_dmin = 0.0, cur_dmax = 0.99;
    cur->add_option("--regime", cur_regime,
                    "music_full_rank | sa_music_oracle | sa_music_ssomp | "
                    "sa_music_ssomsp | ssomsp_oracle | mbp")
        ->required();
    cur->add_option("--s", cur_s);
    cur->add_option("--r", cur_r);
    cur->add_option("--n", cur_n);
    cur->add_option("--N", cur_N);
    cur->add_option("--eps", cur_eps);
    cur->add_option("--delta-min", cur_dmin);
    cur->add_option("--delta-max", cur_dmax);
    cur->add_option("--steps", cur_steps);
    cur->add_option("--out", cur_out)->required();

    // ---- complexity ----
    auto* cx = app.add_subcommand("complexity", "closed-form sample-complexity calculators");
    std::string cx_target = "m", cx_rule = "gaussian_weak1_linear", cx_out;
    int cx_s = 8, cx_n = 128, cx_m = 64;
    double cx_bound = 0.5, cx_eps = 1e-3, cx_K = 1.0;
    double cx_eta = 0.2, cx_nu = 0.5, cx_theta = 0.3, cx_tau = 0.01, cx_noise = 0.0;
    cx->add_option("--target", cx_target, "m | snapshots");
    cx->add_option("--ensemble", cx_rule,
                   "gaussian_weak1_sqrt | gaussian_weak1_linear | gaussian_asym_sqrt | "
                   "gaussian_asym_linear | fourier_weak1 | untf_weak1 | gaussian_uniform");
    cx->add_option("--s", cx_s);
    cx->add_option("--n", cx_n);
    cx->add_option("--delta", cx_bound, "isometry bound (delta or gamma)");
    cx->add_option("--eps", cx_eps);
    cx->add_option("--K", cx_K, "frame coherence constant");
    cx->add_option("--m", cx_m, "measurements (snapshots target)");
    cx->add_option("--eta", cx_eta);
    cx->add_option("--nu", cx_nu);
    cx->add_option("--theta", cx_theta);
    cx->add_option("--tau", cx_tau);
    cx->add_option("--noise-ratio", cx_noise, "sigma_w^2 / lambda_1");
    cx->add_option("--out", cx_out)->required();

    // ---- sweep ----
    auto* sw = app.add_subcommand("sweep", "Monte-Carlo success-rate sweep");
    std::string sw_config, sw_out, sw_trials_out;
    int sw_jobs = 1;
    sw->add_option("--config", sw_config, "JSON config")->required();
    sw->add_option("--out", sw_out, "aggregated results CSV")->required();
    sw->add_option("--trials-out", sw_trials_out, "per-trial JSONL (default <out>.jsonl)");
    sw->add_option("--jobs", sw_jobs, "worker threads");

    // ---- runtime ----
    auto* rt = app.add_subcommand("runtime", "runtime scaling experiment");
    std::string rt_scales = "1,2,4", rt_out, rt_algos = "music,sa-music-ssomp,sa-music-ssomsp,m-omp";
    int rt_trials = 5, rt_jobs = 1;
    std::uint64_t rt_seed = 0;
    rt->add_option("--scales", rt_scales, "comma list of scale factors");
    rt->add_option("--trials", rt_trials);
    rt->add_option("--algorithms", rt_algos);
    rt->add_option("--seed", rt_seed);
    rt->add_option("--jobs", rt_jobs);
    rt->add_option("--out", rt_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            SensingSpec spec{ensemble_from_string(gen_ensemble), gen_m, gen_n,
                             gen_normalize, gen_seed};
            write_cmx_file(gen_out, generate(spec), field_of(spec.ensemble));
        } else if (*gi) {
            SensingSpec sensing{ensemble_from_string(gi_ensemble), gi_m, gi_n, true,
                                derive_seed(gi_seed, 1)};
            SignalSpec signal;
            signal.n = gi_n;
            signal.s = gi_s;
            signal.N = gi_N;
            signal.field = field_of(sensing.ensemble);
            signal.seed = derive_seed(gi_seed, 2);
            signal.model = signal_model_from_string(gi_model);
            if (!gi_support.empty())
                signal.support = SupportSet(parse_index_list(gi_support), gi_n);
            if (signal.model == SignalModel::fixed_rank) {
                signal.rank = gi_rank > 0 ? gi_rank : gi_s;
                if (!gi_sv.empty()) {
                    std::vector<double> sv;
                    std::stringstream ss(gi_sv);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) sv.push_back(std::stod(tok));
                    signal.singular_values = Eigen::Map<const RealVec>(
                        sv.data(), static_cast<Index>(sv.size()));
                } else {
                    signal.singular_values = RealVec::Ones(signal.rank);
                }
            } else if (signal.model == SignalModel::conditioned) {
                signal.kappa = gi_kappa;
            }
            NoiseSpec noise;
            noise.seed = derive_seed(gi_seed, 3);
            if (gi_snr_opt->count() > 0) {
                noise.kind = NoiseKind::snr_db;
                noise.value = gi_snr;
            } else if (gi_sigma_opt->count() > 0) {
                noise.kind = NoiseKind::sigma_w;
                noise.value = gi_sigma;
            }
            save_instance(make_instance(sensing, signal, noise), gi_dir);
        } else if (*sub) {
            const CmxMatrix Y = read_cmx_file(sub_in);
            const SubspaceEstimate est = estimate_signal_subspace(Y.values, sub_tau);
            write_cmx_file(sub_out, est.basis.columns(), Field::complex);
            json meta{{"r", est.r},
                      {"tau", est.tau},
                      {"covariance_rank_deficient", est.covariance_rank_deficient},
                      {"eigenvalues_biased",
                       std::vector<double>(est.eigenvalues_biased.data(),
                                           est.eigenvalues_biased.data() +
                                               est.eigenvalues_biased.size())}};
            write_text_file(sidecar_path(sub_out), meta.dump(2) + "\n");
        } else if (*rec) {
            const ProblemInstance inst = load_instance(rec_dir);
            const int s = rec_s > 0 ? rec_s : inst.J0.size();
            RecoveryReport rep{SupportSet::empty(static_cast<int>(inst.A.cols())), 0,
                               rec_algo, RealVec(),
                               SupportSet::empty(static_cast<int>(inst.A.cols()))};
            if (rec_algo == "music") {
                const auto est = estimate_signal_subspace(inst.Y, rec_tau);
                rep = music(est.basis, inst.A, s);
            } else if (rec_algo == "sa-music-ssomp") {
                rep = sa_music(inst.Y, inst.A, s, rec_tau, PartialSupportMethod::ssomp());
            } else if (rec_algo == "sa-music-ssomsp") {
                rep = sa_music(inst.Y, inst.A, s, rec_tau, PartialSupportMethod::ssomsp());
            } else if (rec_algo == "ss-omp") {
                const auto est = estimate_signal_subspace(inst.Y, rec_tau);
                rep.support = ss_omp(est.basis, inst.A, s);
                rep.r_used = est.r;
            } else if (rec_algo == "ss-omsp") {
                const auto est = estimate_signal_subspace(inst.Y, rec_tau);
                rep.support = ss_omsp(est.basis, inst.A, s);
                rep.r_used = est.r;
            } else if (rec_algo == "m-omp") {
                rep.support = p_somp(inst.Y, inst.A, s, 2.0);
            } else if (rec_algo == "sa-music-unknown") {
                rep = sa_music_unknown_s(inst.Y, inst.A, rec_tau, rec_eta,
                                         GreedyRule::ss_omsp);
            } else {
                throw InvalidInput("unknown algorithm: " + rec_algo);
            }
            json out{{"algorithm", rec_algo},
                     {"method", rep.method},
                     {"support", rep.support.indices()},
                     {"r_used", rep.r_used},
                     {"partial_support", rep.partial_support.indices()},
                     {"match_J0", support_match(rep.support, inst.J0)}};
            if (rep.scores.size() > 0)
                out["scores"] = std::vector<double>(rep.scores.data(),
                                                    rep.scores.data() + rep.scores.size());
            write_text_file(rec_out, out.dump(2) + "\n");
        } else if (*rip) {
            const CmxMatrix A = read_cmx_file(rip_matrix);
            const SupportSet J(parse_index_list(rip_support),
                               static_cast<int>(A.values.cols()));
            const Weak1Ric ric = weak1_ric(A.values, J);
            json out{{"delta", ric.delta}, {"alpha", ric.alpha}, {"beta", ric.beta},
                     {"argmax_j", ric.argmax_j}, {"support", ric.J.indices()}};
            write_text_file(rip_out, out.dump(2) + "\n");
        } else if (*cur) {
            GuaranteeParams params;
            params.s = cur_s;
            params.r = cur_r;
            params.n = cur_n;
            params.N = cur_N;
            params.epsilon = cur_eps;
            const auto regime = regime_from_string(cur_regime);
            const auto curve = guarantee_curve(regime, cur_dmin, cur_dmax, cur_steps, params);
            std::string csv = regime == GuaranteeRegime::mbp ? "delta,eta_max,feasible\n"
                                                             : "delta,eta_max\n";
            for (const CurvePoint& pt : curve) {
                csv += shortest_double(pt.delta) + ',' + shortest_double(pt.eta_max);
                if (regime == GuaranteeRegime::mbp)
                    csv += pt.feasible ? ",1" : ",0";
                csv += '\n';
            }
            write_text_file(cur_out, csv);
        } else if (*cx) {
            json out;
            if (cx_target == "m") {
                const long m = min_measurements(measurement_rule_from_string(cx_rule),
                                                cx_s, cx_n, cx_bound, cx_eps, cx_K);
                out = json{{"target", "m"}, {"rule", cx_rule}, {"s", cx_s}, {"n", cx_n},
                           {"bound", cx_bound}, {"epsilon", cx_eps}, {"m", m}};
            } else if (cx_target == "snapshots") {
                const long N = min_snapshots(cx_m, cx_s, cx_eps, cx_eta, cx_nu,
                                             cx_theta, cx_tau, cx_noise);
                out = json{{"target", "snapshots"}, {"m", cx_m}, {"s", cx_s},
                           {"epsilon", cx_eps}, {"eta", cx_eta}, {"nu", cx_nu},
                           {"theta", cx_theta}, {"tau", cx_tau},
                           {"noise_ratio", cx_noise}, {"N", N}};
            } else {
                throw InvalidInput("complexity: target must be 'm' or 'snapshots'");
            }
            write_text_file(cx_out, out.dump(2) + "\n");
        } else if (*sw) {
            const SweepConfig cfg = SweepConfig::from_json_text(read_text_file(sw_config));
            const SweepResult res = run_sweep(cfg, sw_jobs);
            write_text_file(sw_out, res.results_csv);
            const std::string trials_path =
                sw_trials_out.empty() ? sw_out + ".jsonl" : sw_trials_out;
            write_text_file(trials_path, res.trials_jsonl);
        } else if (*rt) {
            std::vector<int> scales;
            for (int v : parse_index_list(rt_scales)) scales.push_back(v);
            std::vector<std::string> algos;
            std::stringstream ss(rt_algos);
            std::string tok;
            while (std::getline(ss, tok, ',')) algos.push_back(tok);
            write_text_file(rt_out,
                            runtime_scaling_csv(scales, rt_trials, algos, rt_seed, rt_jobs));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
