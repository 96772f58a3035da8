#include "samusic/signal_model.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "samusic/cmx.hpp"
#include "samusic/errors.hpp"
#include "samusic/linalg.hpp"
#include "samusic/rng.hpp"

namespace samusic {

using nlohmann::json;

std::string to_string(SignalModel m) {
    switch (m) {
        case SignalModel::mixed_multichannel: return "mixed_multichannel";
        case SignalModel::fixed_rank: return "fixed_rank";
        case SignalModel::conditioned: return "conditioned";
    }
    throw InvalidInput("unknown signal model");
}

SignalModel signal_model_from_string(const std::string& s) {
    if (s == "mixed_multichannel") return SignalModel::mixed_multichannel;
    if (s == "fixed_rank") return SignalModel::fixed_rank;
    if (s == "conditioned") return SignalModel::conditioned;
    throw InvalidInput("unknown signal model: " + s);
}

namespace {

void validate(const SignalSpec& spec) {
    if (spec.n < 1 || spec.s < 1 || spec.N < 1)
        throw InvalidInput("signal spec: n, s, N must be positive");
    if (spec.s > spec.n) throw InvalidInput("signal spec: s > n");
    if (spec.support && (spec.support->universe() != spec.n ||
                         spec.support->size() != spec.s))
        throw InvalidInput("signal spec: support inconsistent with (n, s)");
    switch (spec.model) {
        case SignalModel::mixed_multichannel: {
            const Index M = spec.psi.cols();
            if (spec.psi.rows() != spec.s || M < 1 || M > spec.s)
                throw InvalidInput("mixed model: Psi must be s x M with 1 <= M <= s");
            if (spec.lambda.size() != M || (spec.lambda.array() <= 0.0).any())
                throw InvalidInput("mixed model: Lambda must be M positive entries");
            break;
        }
        case SignalModel::fixed_rank: {
            if (spec.rank < 1 || spec.rank > std::min(spec.s, spec.N))
                throw InvalidInput("fixed_rank: rank outside [1, min(s, N)]");
            if (spec.singular_values.size() != spec.rank)
                throw InvalidInput("fixed_rank: need exactly rank singular values");
            for (Index k = 0; k < spec.singular_values.size(); ++k) {
                if (spec.singular_values(k) <= 0.0)
                    throw InvalidInput("fixed_rank: singular values must be positive");
                if (k > 0 && spec.singular_values(k) > spec.singular_values(k - 1))
                    throw InvalidInput("fixed_rank: singular values must be descending");
            }
            break;
        }
        case SignalModel::conditioned: {
            if (spec.kappa < 1.0) throw InvalidInput("conditioned: kappa must be >= 1");
            if (spec.s > spec.N)
                throw InvalidInput("conditioned: full row rank needs N >= s");
            break;
        }
    }
}

}  // namespace

std::pair<Mat, SupportSet> generate_signal(const SignalSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    const SupportSet J0 = spec.support
                              ? *spec.support
                              : SupportSet(rng.sample_without_replacement(spec.n, spec.s),
                                           spec.n);
    Mat block;  // s x N nonzero rows
    switch (spec.model) {
        case SignalModel::mixed_multichannel: {
            const Index M = spec.psi.cols();
            const Mat phi = rng.gaussian(spec.field, M, spec.N);
            block = spec.psi * spec.lambda.asDiagonal() * phi;
            break;
        }
        case SignalModel::fixed_rank: {
            const Mat U0 = rng.haar_orthonormal(spec.field, spec.s, spec.rank);
            const Mat V0 = rng.haar_orthonormal(spec.field, spec.N, spec.rank);
            block = U0 * spec.singular_values.asDiagonal() * V0.adjoint();
            break;
        }
        case SignalModel::conditioned: {
            RealVec sv(spec.s);
            for (int k = 0; k < spec.s; ++k)
                sv(k) = spec.s == 1 ? 1.0
                                    : std::pow(spec.kappa,
                                               -static_cast<double>(k) / (spec.s - 1));
            const Mat U0 = rng.haar_orthonormal(spec.field, spec.s, spec.s);
            const Mat V0 = rng.haar_orthonormal(spec.field, spec.N, spec.s);
            block = U0 * sv.asDiagonal() * V0.adjoint();
            break;
        }
    }
    Mat X0 = Mat::Zero(spec.n, spec.N);
    const auto& idx = J0.indices();
    for (int k = 0; k < J0.size(); ++k) X0.row(idx[k] - 1) = block.row(k);
    return {std::move(X0), J0};
}

NoisyMeasurement add_noise(const Mat& A, const Mat& X0, const NoiseSpec& noise,
                           Field field) {
    if (A.cols() != X0.rows()) throw InvalidInput("add_noise: A and X0 not conformable");
    NoisyMeasurement out;
    const Mat signal = A * X0;
    double sigma = 0.0;
    switch (noise.kind) {
        case NoiseKind::none:
            sigma = 0.0;
            break;
        case NoiseKind::sigma_w:
            if (noise.value < 0.0) throw InvalidInput("add_noise: sigma_w < 0");
            sigma = noise.value;
            break;
        case NoiseKind::snr_db: {
            const double signal_power = signal.squaredNorm();
            const double target = std::pow(10.0, noise.value / 10.0);
            sigma = std::sqrt(signal_power /
                              (static_cast<double>(signal.rows()) * signal.cols() * target));
            break;
        }
    }
    if (sigma == 0.0) {
        out.W = Mat::Zero(signal.rows(), signal.cols());
    } else {
        Rng rng(noise.seed);
        out.W = rng.gaussian(field, signal.rows(), signal.cols(), sigma);
    }
    out.Y = signal + out.W;
    out.sigma_w_used = sigma;
    return out;
}

bool is_row_nondegenerate(const Mat& X) {
    if (X.rows() > 20)
        throw UnsupportedSize("is_row_nondegenerate: more than 20 rows");
    const int k = numerical_rank(X);
    if (k == 0) return false;
    const int rows = static_cast<int>(X.rows());
    // walk all k-subsets of rows in lexicographic order
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        Mat sub(k, X.cols());
        for (int i = 0; i < k; ++i) sub.row(i) = X.row(pick[i]);
        if (numerical_rank(sub) < k) return false;
        int pos = k - 1;
        while (pos >= 0 && pick[pos] == rows - k + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
    return true;
}

ProblemInstance make_instance(const SensingSpec& sensing, const SignalSpec& signal,
                              const NoiseSpec& noise) {
    if (field_of(sensing.ensemble) != signal.field)
        throw InvalidInput("instance: sensing and signal fields disagree");
    if (sensing.n != signal.n) throw InvalidInput("instance: sensing/signal n mismatch");
    ProblemInstance inst;
    inst.sensing = sensing;
    inst.signal = signal;
    inst.noise = noise;
    inst.field = signal.field;
    inst.A = generate(sensing);
    auto [X0, J0] = generate_signal(signal);
    inst.X0 = std::move(X0);
    inst.J0 = std::move(J0);
    auto meas = add_noise(inst.A, inst.X0, noise, inst.field);
    inst.W = std::move(meas.W);
    inst.Y = std::move(meas.Y);
    inst.sigma_w_used = meas.sigma_w_used;
    return inst;
}

namespace {

json signal_spec_to_json(const SignalSpec& s) {
    json j{{"n", s.n},       {"s", s.s},          {"N", s.N},
           {"model", to_string(s.model)}, {"field", to_string(s.field)},
           {"seed", s.seed}};
    if (s.support) j["support"] = s.support->indices();
    switch (s.model) {
        case SignalModel::mixed_multichannel: {
            j["M"] = s.psi.cols();
            j["lambda"] = std::vector<double>(s.lambda.data(),
                                              s.lambda.data() + s.lambda.size());
            break;
        }
        case SignalModel::fixed_rank: {
            j["rank"] = s.rank;
            j["singular_values"] = std::vector<double>(
                s.singular_values.data(),
                s.singular_values.data() + s.singular_values.size());
            break;
        }
        case SignalModel::conditioned:
            j["kappa"] = s.kappa;
            break;
    }
    return j;
}

}  // namespace

void save_instance(const ProblemInstance& inst, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_cmx_file(dir + "/A.cmx", inst.A, inst.field);
    write_cmx_file(dir + "/X0.cmx", inst.X0, inst.field);
    write_cmx_file(dir + "/W.cmx", inst.W, inst.field);
    write_cmx_file(dir + "/Y.cmx", inst.Y, inst.field);
    if (inst.signal.model == SignalModel::mixed_multichannel)
        write_cmx_file(dir + "/Psi.cmx", inst.signal.psi, inst.field);
    json meta;
    meta["field"] = to_string(inst.field);
    meta["J0"] = inst.J0.indices();
    meta["sigma_w_used"] = inst.sigma_w_used;
    meta["sensing"] = {{"ensemble", to_string(inst.sensing.ensemble)},
                       {"m", inst.sensing.m},
                       {"n", inst.sensing.n},
                       {"normalize_columns", inst.sensing.normalize_columns},
                       {"seed", inst.sensing.seed}};
    meta["signal"] = signal_spec_to_json(inst.signal);
    std::string noise_kind = inst.noise.kind == NoiseKind::none
                                 ? "none"
                                 : (inst.noise.kind == NoiseKind::snr_db ? "snr_db"
                                                                          : "sigma_w");
    meta["noise"] = {{"kind", noise_kind},
                     {"value", inst.noise.value},
                     {"seed", inst.noise.seed}};
    std::ofstream f(dir + "/instance.json");
    if (!f) throw Error("cannot write " + dir + "/instance.json");
    f << meta.dump(2) << '\n';
}

ProblemInstance load_instance(const std::string& dir) {
    std::ifstream f(dir + "/instance.json");
    if (!f) throw Error("cannot read " + dir + "/instance.json");
    json meta = json::parse(f);
    ProblemInstance inst;
    inst.field = field_from_string(meta.at("field").get<std::string>());
    inst.A = read_cmx_file(dir + "/A.cmx").values;
    inst.X0 = read_cmx_file(dir + "/X0.cmx").values;
    inst.W = read_cmx_file(dir + "/W.cmx").values;
    inst.Y = read_cmx_file(dir + "/Y.cmx").values;
    inst.J0 = SupportSet(meta.at("J0").get<std::vector<int>>(),
                         static_cast<int>(inst.A.cols()));
    inst.sigma_w_used = meta.value("sigma_w_used", 0.0);
    const json& sj = meta.at("sensing");
    inst.sensing.ensemble = ensemble_from_string(sj.at("ensemble").get<std::string>());
    inst.sensing.m = sj.at("m").get<int>();
    inst.sensing.n = sj.at("n").get<int>();
    inst.sensing.normalize_columns = sj.at("normalize_columns").get<bool>();
    inst.sensing.seed = sj.at("seed").get<std::uint64_t>();
    const json& gj = meta.at("signal");
    inst.signal.n = gj.at("n").get<int>();
    inst.signal.s = gj.at("s").get<int>();
    inst.signal.N = gj.at("N").get<int>();
    inst.signal.model = signal_model_from_string(gj.at("model").get<std::string>());
    inst.signal.field = field_from_string(gj.at("field").get<std::string>());
    inst.signal.seed = gj.at("seed").get<std::uint64_t>();
    if (gj.contains("support"))
        inst.signal.support = SupportSet(gj.at("support").get<std::vector<int>>(),
                                         inst.signal.n);
    if (gj.contains("kappa")) inst.signal.kappa = gj.at("kappa").get<double>();
    if (gj.contains("rank")) inst.signal.rank = gj.at("rank").get<int>();
    if (gj.contains("singular_values")) {
        const auto sv = gj.at("singular_values").get<std::vector<double>>();
        inst.signal.singular_values =
            Eigen::Map<const RealVec>(sv.data(), static_cast<Index>(sv.size()));
    }
    if (gj.contains("lambda")) {
        const auto lv = gj.at("lambda").get<std::vector<double>>();
        inst.signal.lambda =
            Eigen::Map<const RealVec>(lv.data(), static_cast<Index>(lv.size()));
    }
    if (inst.signal.model == SignalModel::mixed_multichannel &&
        std::filesystem::exists(dir + "/Psi.cmx"))
        inst.signal.psi = read_cmx_file(dir + "/Psi.cmx").values;
    const json& nj = meta.at("noise");
    const std::string nk = nj.at("kind").get<std::string>();
    inst.noise.kind = nk == "none" ? NoiseKind::none
                                   : (nk == "snr_db" ? NoiseKind::snr_db
                                                     : NoiseKind::sigma_w);
    inst.noise.value = nj.at("value").get<double>();
    inst.noise.seed = nj.at("seed").get<std::uint64_t>();
    return inst;
}

}  // namespace samusic
