#include "fcae/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fcae/rsvd.hpp"
#include "fcae/seeding.hpp"
#include "fcae/tchebichef.hpp"

namespace fcae::pipeline {

namespace {

constexpr std::uint64_t kNoiseTag = 0x4e4f495345ULL;
constexpr std::uint64_t kSplitTag = 0x53504c4954ULL;
constexpr std::uint64_t kGenTag = 0x47454eULL;
constexpr std::uint64_t kSweepTag = 0x5357454550ULL;

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: cannot parse number '" + s + "' for " + what);
    }
}

long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: cannot parse integer '" + s + "' for " + what);
    }
}

bool parse_bool(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::runtime_error("config: cannot parse bool '" + s + "' for " + what);
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_double(trim(tok), what));
    return out;
}

std::vector<std::vector<int>> parse_layer_subsets(const std::string& s) {
    std::vector<std::vector<int>> out;
    for (const auto& group : split(s, ';')) {
        std::vector<int> subset;
        for (const auto& tok : split(group, ',')) {
            subset.push_back(static_cast<int>(parse_int(trim(tok), "layer_subset")));
        }
        if (!subset.empty()) out.push_back(subset);
    }
    return out;
}

std::vector<double> default_ratios() {
    std::vector<double> r;
    for (int i = 0; i <= 9; ++i) r.push_back(0.50 + 0.05 * i);
    return r;
}

void apply_preset(ExperimentConfig& cfg, const std::string& name) {
    if (name == "keirn") {
        cfg.training.epochs = 3000;
        cfg.training.batch_size = 256;
        cfg.training.recompress_every = 200;
    } else if (name == "motor") {
        cfg.training.epochs = 500;
        cfg.training.batch_size = 1024;
        cfg.training.recompress_every = 50;
    } else {
        throw std::runtime_error("config: unknown preset '" + name + "'");
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!(train_split > 0.0 && train_split < 1.0)) {
        throw std::invalid_argument("config: train_split must be in (0, 1)");
    }
    if (frag_len < 2) throw std::invalid_argument("config: frag_len must be >= 2");
    if (sigma < 0.0) throw std::invalid_argument("config: sigma must be >= 0");
    for (double a : sweep_alphas) {
        if (!(a >= 1.0 && a < 2.0)) {
            throw std::invalid_argument("config: sweep alpha " + fmt_g(a) + " outside [1, 2)");
        }
    }
    for (double r : sweep_ratios) {
        if (!(r >= 0.0 && r < 1.0)) {
            throw std::invalid_argument("config: sweep ratio " + fmt_g(r) + " outside [0, 1)");
        }
    }
    for (const auto& subset : layer_subsets) {
        if (subset.empty()) throw std::invalid_argument("config: empty layer subset");
        for (int l : subset) {
            if (l < 1 || l > autoencoder::kNumLayers) {
                throw std::invalid_argument("config: layer index " + std::to_string(l) +
                                            " outside {1..4}");
            }
        }
    }
    training.layer_spec.validate();
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string preset;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: missing '=' at line " + std::to_string(line_no));
        }
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }

    ExperimentConfig cfg;
    if (auto it = kv.find("preset"); it != kv.end()) {
        preset = it->second;
        apply_preset(cfg, preset);
        kv.erase(it);
    }
    for (const auto& [key, value] : kv) {
        if (key == "data_source") cfg.data_source = value;
        else if (key == "n_signals") cfg.n_signals = static_cast<int>(parse_int(value, key));
        else if (key == "signal_length") cfg.signal_length = static_cast<int>(parse_int(value, key));
        else if (key == "sigma") cfg.sigma = parse_double(value, key);
        else if (key == "frag_len") cfg.frag_len = static_cast<int>(parse_int(value, key));
        else if (key == "train_split") cfg.train_split = parse_double(value, key);
        else if (key == "per_feature_norm") cfg.per_feature_norm = parse_bool(value, key);
        else if (key == "alpha") cfg.training.alpha = parse_double(value, key);
        else if (key == "eta") cfg.training.eta = parse_double(value, key);
        else if (key == "lambda") cfg.training.lambda = parse_double(value, key);
        else if (key == "epochs") cfg.training.epochs = static_cast<int>(parse_int(value, key));
        else if (key == "batch_size") cfg.training.batch_size = static_cast<int>(parse_int(value, key));
        else if (key == "recompress_every") cfg.training.recompress_every = static_cast<int>(parse_int(value, key));
        else if (key == "energy_fraction") cfg.training.energy_fraction = parse_double(value, key);
        else if (key == "eps_clamp") cfg.training.eps_clamp = parse_double(value, key);
        else if (key == "rsvd_iters") cfg.training.rsvd_iters = static_cast<int>(parse_int(value, key));
        else if (key == "seed") cfg.training.seed = static_cast<std::uint64_t>(parse_int(value, key));
        else if (key == "n_in") cfg.training.layer_spec.n_in = static_cast<int>(parse_int(value, key));
        else if (key == "n_h") cfg.training.layer_spec.n_h = static_cast<int>(parse_int(value, key));
        else if (key == "n_e") cfg.training.layer_spec.n_e = static_cast<int>(parse_int(value, key));
        else if (key == "sweep_alphas") cfg.sweep_alphas = parse_double_list(value, key);
        else if (key == "sweep_ratios") cfg.sweep_ratios = parse_double_list(value, key);
        else if (key == "layer_subset") cfg.layer_subsets = parse_layer_subsets(value);
        else if (key == "output_dir") cfg.output_dir = value;
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    if (cfg.sweep_ratios.empty()) cfg.sweep_ratios = default_ratios();
    cfg.validate();
    return cfg;
}

std::vector<signal::Signal> ingest_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("ingest: cannot open " + path.string());
    std::vector<signal::Signal> signals;
    double rate = 250.0;
    std::string line;
    int row = 0;
    while (std::getline(is, line)) {
        ++row;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto pos = t.find("rate=");
            if (pos != std::string::npos) {
                rate = parse_double(trim(t.substr(pos + 5)), "rate header");
            }
            continue;
        }
        signal::Signal sig;
        const auto tokens = split(t, ',');
        sig.samples.resize(static_cast<Eigen::Index>(tokens.size()));
        for (std::size_t col = 0; col < tokens.size(); ++col) {
            const std::string tok = trim(tokens[col]);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) {
                throw std::runtime_error("ingest: unparsable token '" + tok + "' at row " +
                                         std::to_string(row) + " col " + std::to_string(col + 1));
            }
            sig.samples[static_cast<Eigen::Index>(col)] = v;
        }
        sig.sample_rate_hz = rate;
        signals.push_back(std::move(sig));
    }
    if (signals.empty()) throw std::runtime_error("ingest: empty dataset in " + path.string());
    return signals;
}

void write_csv(const std::filesystem::path& path, const std::vector<signal::Signal>& signals) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path.string());
    if (!signals.empty()) {
        os << "# rate=" << fmt_g(signals.front().sample_rate_hz) << "\n";
    }
    for (const auto& sig : signals) {
        for (Eigen::Index i = 0; i < sig.samples.size(); ++i) {
            if (i) os << ",";
            os << fmt_g(sig.samples[i]);
        }
        os << "\n";
    }
    if (!os) throw std::runtime_error("write_csv: write failed: " + path.string());
}

std::vector<signal::Signal> gen_synthetic(int n_signals, int length, std::uint64_t seed) {
    if (n_signals < 1) throw std::invalid_argument("gen_synthetic: n_signals must be >= 1");
    if (length < 2) throw std::invalid_argument("gen_synthetic: length must be >= 2");
    constexpr double kFragLen = 250.0;  // frequency unit: cycles per fragment
    constexpr double kSigmaRef = 15.0;
    std::vector<signal::Signal> signals;
    signals.reserve(static_cast<std::size_t>(n_signals));
    for (int s = 0; s < n_signals; ++s) {
        std::mt19937_64 rng(seeding::derive(seed, kGenTag, static_cast<std::uint64_t>(s)));
        std::uniform_int_distribution<int> n_tones(3, 5);
        std::uniform_real_distribution<double> freq(1.0, 40.0);
        std::uniform_real_distribution<double> amp(5.0, 50.0);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
        std::uniform_real_distribution<double> target_snr_db(-2.0, 5.0);

        const int k = n_tones(rng);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(length);
        for (int j = 0; j < k; ++j) {
            const double omega = 2.0 * M_PI * freq(rng) / kFragLen;
            const double a = amp(rng);
            const double phi = phase(rng);
            for (int t = 0; t < length; ++t) {
                x[t] += a * std::sin(omega * t + phi);
            }
        }
        // One global scale per signal pins the input SNR at sigma = 15.
        const double rms = std::sqrt(x.squaredNorm() / length);
        const double target_rms = kSigmaRef * std::pow(10.0, target_snr_db(rng) / 20.0);
        x *= target_rms / rms;
        signals.push_back(signal::Signal{std::move(x), 250.0});
    }
    return signals;
}

Eigen::MatrixXd Normalizer::apply(const Eigen::MatrixXd& data) const {
    return per_feature ? signal::apply_minmax(data, columns) : signal::apply_minmax(data, global);
}

Eigen::MatrixXd Normalizer::invert(const Eigen::MatrixXd& data) const {
    return per_feature ? signal::invert_minmax(data, columns) : signal::invert_minmax(data, global);
}

std::filesystem::path metadata_path_for(const std::filesystem::path& checkpoint_path) {
    std::filesystem::path p = checkpoint_path;
    p += ".meta.json";
    return p;
}

void save_metadata(const std::filesystem::path& path, const Metadata& meta) {
    nlohmann::json j;
    j["frag_len"] = meta.frag_len;
    j["sigma"] = meta.sigma;
    j["initial_loss"] = meta.initial_loss;
    j["final_loss"] = meta.final_loss;
    j["seed"] = meta.seed;
    j["norm_mode"] = meta.norm.per_feature ? "per_feature" : "global";
    if (meta.norm.per_feature) {
        j["norm_min"] = std::vector<double>(meta.norm.columns.min_vals.begin(),
                                            meta.norm.columns.min_vals.end());
        j["norm_max"] = std::vector<double>(meta.norm.columns.max_vals.begin(),
                                            meta.norm.columns.max_vals.end());
    } else {
        j["norm_min"] = meta.norm.global.min_val;
        j["norm_max"] = meta.norm.global.max_val;
    }
    j["training"] = {
        {"alpha", meta.training.alpha},
        {"eta", meta.training.eta},
        {"lambda", meta.training.lambda},
        {"epochs", meta.training.epochs},
        {"batch_size", meta.training.batch_size},
        {"recompress_every", meta.training.recompress_every},
        {"energy_fraction", meta.training.energy_fraction},
        {"eps_clamp", meta.training.eps_clamp},
        {"rsvd_iters", meta.training.rsvd_iters},
        {"seed", meta.training.seed},
        {"n_in", meta.training.layer_spec.n_in},
        {"n_h", meta.training.layer_spec.n_h},
        {"n_e", meta.training.layer_spec.n_e},
    };
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("metadata: cannot open for writing: " + path.string());
    os << j.dump(2) << "\n";
}

Metadata load_metadata(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("metadata: cannot open " + path.string());
    nlohmann::json j;
    is >> j;
    Metadata meta;
    meta.frag_len = j.at("frag_len").get<int>();
    meta.sigma = j.at("sigma").get<double>();
    meta.initial_loss = j.at("initial_loss").get<double>();
    meta.final_loss = j.at("final_loss").get<double>();
    meta.seed = j.at("seed").get<std::uint64_t>();
    meta.norm.per_feature = j.at("norm_mode").get<std::string>() == "per_feature";
    if (meta.norm.per_feature) {
        const auto mins = j.at("norm_min").get<std::vector<double>>();
        const auto maxs = j.at("norm_max").get<std::vector<double>>();
        meta.norm.columns.min_vals =
            Eigen::Map<const Eigen::VectorXd>(mins.data(), static_cast<Eigen::Index>(mins.size()));
        meta.norm.columns.max_vals =
            Eigen::Map<const Eigen::VectorXd>(maxs.data(), static_cast<Eigen::Index>(maxs.size()));
    } else {
        meta.norm.global.min_val = j.at("norm_min").get<double>();
        meta.norm.global.max_val = j.at("norm_max").get<double>();
    }
    const auto& t = j.at("training");
    meta.training.alpha = t.at("alpha").get<double>();
    meta.training.eta = t.at("eta").get<double>();
    meta.training.lambda = t.at("lambda").get<double>();
    meta.training.epochs = t.at("epochs").get<int>();
    meta.training.batch_size = t.at("batch_size").get<int>();
    meta.training.recompress_every = t.at("recompress_every").get<int>();
    meta.training.energy_fraction = t.at("energy_fraction").get<double>();
    meta.training.eps_clamp = t.at("eps_clamp").get<double>();
    meta.training.rsvd_iters = t.at("rsvd_iters").get<int>();
    meta.training.seed = t.at("seed").get<std::uint64_t>();
    meta.training.layer_spec.n_in = t.at("n_in").get<int>();
    meta.training.layer_spec.n_h = t.at("n_h").get<int>();
    meta.training.layer_spec.n_e = t.at("n_e").get<int>();
    return meta;
}

namespace {

Eigen::MatrixXd stack_fragments(const std::vector<signal::Signal>& signals, int frag_len) {
    std::vector<Eigen::VectorXd> all;
    for (const auto& sig : signals) {
        auto frags = signal::fragment(sig, frag_len);
        all.insert(all.end(), frags.begin(), frags.end());
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(all.size()), frag_len);
    for (std::size_t i = 0; i < all.size(); ++i) {
        m.row(static_cast<Eigen::Index>(i)) = all[i];
    }
    return m;
}

}  // namespace

TrainResult run_training(const ExperimentConfig& config,
                         const autoencoder::EpochCallback& on_epoch) {
    config.validate();
    if (config.training.layer_spec.n_in != config.frag_len) {
        throw std::invalid_argument("pipeline: n_in must equal frag_len (full-order moments)");
    }

    std::vector<signal::Signal> clean =
        config.data_source == "synthetic"
            ? gen_synthetic(config.n_signals, config.signal_length, config.training.seed)
            : ingest_csv(config.data_source);

    std::vector<signal::Signal> noisy;
    noisy.reserve(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) {
        noisy.push_back(signal::add_gaussian_noise(
            clean[i], config.sigma,
            seeding::derive(config.training.seed, kNoiseTag, static_cast<std::uint64_t>(i))));
    }

    const auto& basis = tchebichef::cached_basis(config.frag_len, config.frag_len);
    const Eigen::MatrixXd clean_moments =
        tchebichef::forward_moments(stack_fragments(clean, config.frag_len), basis);
    const Eigen::MatrixXd noisy_moments =
        tchebichef::forward_moments(stack_fragments(noisy, config.frag_len), basis);
    if (clean_moments.rows() == 0) {
        throw std::runtime_error("pipeline: no fragments (signals shorter than frag_len?)");
    }

    // Single NormState fitted on the union of noisy and clean moments.
    Eigen::MatrixXd both(clean_moments.rows() + noisy_moments.rows(), clean_moments.cols());
    both << noisy_moments, clean_moments;
    Normalizer norm;
    norm.per_feature = config.per_feature_norm;
    if (norm.per_feature) {
        norm.columns = signal::fit_minmax_per_feature(both);
    } else {
        norm.global = signal::fit_minmax(both);
    }
    const Eigen::MatrixXd x_all = norm.apply(noisy_moments);
    const Eigen::MatrixXd y_all = norm.apply(clean_moments);

    // Deterministic shuffled 70/30 fragment split.
    std::vector<int> order(static_cast<std::size_t>(x_all.rows()));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 split_rng(seeding::derive(config.training.seed, kSplitTag));
    std::shuffle(order.begin(), order.end(), split_rng);
    const int n_train = std::max<int>(1, static_cast<int>(config.train_split * x_all.rows()));
    Eigen::MatrixXd x_train(n_train, x_all.cols());
    Eigen::MatrixXd y_train(n_train, y_all.cols());
    for (int i = 0; i < n_train; ++i) {
        x_train.row(i) = x_all.row(order[static_cast<std::size_t>(i)]);
        y_train.row(i) = y_all.row(order[static_cast<std::size_t>(i)]);
    }

    const autoencoder::NetworkParams init =
        autoencoder::init_params(config.training.layer_spec, config.training.seed);
    const auto init_cache = autoencoder::forward(init, x_train);
    const double initial_loss = autoencoder::cost(init_cache.a[autoencoder::kNumLayers], y_train,
                                                  init, config.training.lambda);

    double final_loss = initial_loss;
    const auto params = autoencoder::train(
        x_train, y_train, config.training, [&](int epoch, double loss) {
            final_loss = loss;
            if (on_epoch) on_epoch(epoch, loss);
        });

    std::filesystem::create_directories(config.output_dir);
    char name[64];
    std::snprintf(name, sizeof name, "checkpoint_a%.2f.ckpt", config.training.alpha);
    const std::filesystem::path ckpt_path = std::filesystem::path(config.output_dir) / name;
    checkpoint::save(ckpt_path, checkpoint::Checkpoint{config.training.layer_spec,
                                                       config.training.alpha, params});
    Metadata meta;
    meta.norm = norm;
    meta.frag_len = config.frag_len;
    meta.sigma = config.sigma;
    meta.initial_loss = initial_loss;
    meta.final_loss = final_loss;
    meta.seed = config.training.seed;
    meta.training = config.training;
    save_metadata(metadata_path_for(ckpt_path), meta);

    return TrainResult{ckpt_path, initial_loss, final_loss};
}

std::vector<DenoiseResult> run_denoise(const checkpoint::Checkpoint& ckpt, const Metadata& meta,
                                       const std::vector<signal::Signal>& noisy,
                                       const std::vector<signal::Signal>* clean) {
    if (ckpt.spec.n_in != meta.frag_len) {
        throw std::invalid_argument("pipeline: checkpoint n_in " + std::to_string(ckpt.spec.n_in) +
                                    " != frag_len " + std::to_string(meta.frag_len));
    }
    if (clean && clean->size() != noisy.size()) {
        throw std::invalid_argument("pipeline: clean/noisy signal count mismatch");
    }
    const auto& basis = tchebichef::cached_basis(meta.frag_len, meta.frag_len);
    std::vector<DenoiseResult> results;
    results.reserve(noisy.size());
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        const auto frags = signal::fragment(noisy[i], meta.frag_len);
        if (frags.empty()) {
            throw std::invalid_argument("pipeline: signal " + std::to_string(i) +
                                        " shorter than one fragment");
        }
        Eigen::MatrixXd rows(static_cast<Eigen::Index>(frags.size()), meta.frag_len);
        for (std::size_t f = 0; f < frags.size(); ++f) {
            rows.row(static_cast<Eigen::Index>(f)) = frags[f];
        }
        const Eigen::MatrixXd moments = tchebichef::forward_moments(rows, basis);
        const Eigen::MatrixXd normed = meta.norm.apply(moments);
        const auto cache = autoencoder::forward(ckpt.params, normed);
        const Eigen::MatrixXd denoised_moments =
            meta.norm.invert(cache.a[autoencoder::kNumLayers]);
        const Eigen::MatrixXd recon = tchebichef::inverse_moments(denoised_moments, basis);

        std::vector<Eigen::VectorXd> out_frags;
        out_frags.reserve(frags.size());
        for (Eigen::Index f = 0; f < recon.rows(); ++f) {
            out_frags.push_back(recon.row(f));
        }
        DenoiseResult res;
        res.denoised = signal::reassemble(out_frags);
        res.denoised.sample_rate_hz = noisy[i].sample_rate_hz;
        if (clean) {
            signal::Signal ref;
            ref.samples = (*clean)[i].samples.head(res.denoised.samples.size());
            res.report = signal::metrics(ref, res.denoised);
        }
        results.push_back(std::move(res));
    }
    return results;
}

std::vector<DenoiseResult> run_denoise(const std::filesystem::path& checkpoint_path,
                                       const std::vector<signal::Signal>& noisy,
                                       const std::vector<signal::Signal>* clean) {
    const auto ckpt = checkpoint::load(checkpoint_path);
    const auto meta = load_metadata(metadata_path_for(checkpoint_path));
    return run_denoise(ckpt, meta, noisy, clean);
}

std::vector<SweepCell> run_sweep(const std::filesystem::path& checkpoint_path,
                                 const std::vector<signal::Signal>& noisy,
                                 const std::vector<signal::Signal>& clean,
                                 const std::vector<double>& ratios,
                                 const std::vector<std::vector<int>>& layer_subsets) {
    const auto ckpt = checkpoint::load(checkpoint_path);
    const auto meta = load_metadata(metadata_path_for(checkpoint_path));
    std::vector<SweepCell> cells;
    for (const double ratio : ratios) {
        for (const auto& subset : layer_subsets) {
            if (subset.empty()) throw std::invalid_argument("sweep: empty layer subset");
            checkpoint::Checkpoint compressed = ckpt;
            for (const int layer : subset) {
                if (layer < 1 || layer > autoencoder::kNumLayers) {
                    throw std::invalid_argument("sweep: layer index " + std::to_string(layer) +
                                                " outside {1..4}");
                }
                const std::uint64_t seed = seeding::derive(
                    meta.seed, kSweepTag,
                    static_cast<std::uint64_t>(layer) * 1024 +
                        static_cast<std::uint64_t>(ratio * 1000.0));
                compressed.params.w[layer - 1] = rsvd::compress_at_ratio(
                    ckpt.params.w[layer - 1], ratio, meta.training.rsvd_iters, seed);
            }
            const auto results = run_denoise(compressed, meta, noisy, &clean);
            double snr_sum = 0.0;
            double prd_sum = 0.0;
            for (const auto& r : results) {
                snr_sum += r.report->snr_db;
                prd_sum += r.report->prd_pct;
            }
            SweepCell cell;
            cell.alpha = ckpt.alpha;
            cell.c_r = ratio;
            cell.layers = subset;
            cell.n_signals = static_cast<int>(results.size());
            cell.mean_snr_db = snr_sum / results.size();
            cell.mean_prd_pct = prd_sum / results.size();
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::vector<EnergyPoint> energy_profile(const checkpoint::Checkpoint& ckpt) {
    std::vector<EnergyPoint> points;
    for (int l = 0; l < autoencoder::kNumLayers; ++l) {
        const auto& w = ckpt.params.w[l];
        const int full = static_cast<int>(std::min(w.rows(), w.cols()));
        const Eigen::VectorXd s = rsvd::exact_svd(w, full).s;
        for (int r = 1; r <= full; ++r) {
            const auto [e, f_s] = rsvd::energy_fraction(s, r);
            points.push_back(EnergyPoint{l + 1, f_s, e});
        }
    }
    return points;
}

namespace {

std::string layers_label(const std::vector<int>& layers) {
    std::string s;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(layers[i]);
    }
    return s;
}

// Minimal SVG line chart: one polyline per named series.
void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>&
                   series) {
    constexpr double kW = 640, kH = 420, kMargin = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [name, pts] : series) {
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const auto px = [&](double x) { return kMargin + (x - xmin) / (xmax - xmin) * (kW - 2 * kMargin); };
    const auto py = [&](double y) { return kH - kMargin - (y - ymin) / (ymax - ymin) * (kH - 2 * kMargin); };
    static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("emit_report: cannot open " + path.string());
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "  <text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title << "</text>\n";
    os << "  <line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
       << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
       << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << kW / 2 << "\" y=\"" << kH - 16
       << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    os << "  <text x=\"18\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
       << "transform=\"rotate(-90 18 " << kH / 2 << ")\">" << y_label << "</text>\n";
    os << "  <text x=\"" << kMargin << "\" y=\"" << kH - kMargin + 16 << "\" font-size=\"10\">"
       << fmt_g(xmin) << "</text>\n";
    os << "  <text x=\"" << kW - kMargin << "\" y=\"" << kH - kMargin + 16
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt_g(xmax) << "</text>\n";
    os << "  <text x=\"" << kMargin - 4 << "\" y=\"" << kH - kMargin
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt_g(ymin) << "</text>\n";
    os << "  <text x=\"" << kMargin - 4 << "\" y=\"" << kMargin
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt_g(ymax) << "</text>\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& [name, pts] = series[si];
        const char* color = kColors[si % 8];
        os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) {
            os << px(x) << "," << py(y) << " ";
        }
        os << "\"/>\n";
        os << "  <text x=\"" << kW - kMargin + 4 << "\" y=\"" << kMargin + 14.0 * si
           << "\" font-size=\"10\" fill=\"" << color << "\">" << name << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace

void emit_report(const std::vector<SweepCell>& cells, const std::vector<EnergyPoint>& energy,
                 const std::filesystem::path& output_dir) {
    if (cells.empty() && energy.empty()) {
        throw std::invalid_argument("emit_report: nothing to report");
    }
    std::filesystem::create_directories(output_dir);

    if (!cells.empty()) {
        std::ofstream os(output_dir / "sweep.csv", std::ios::trunc);
        if (!os) throw std::runtime_error("emit_report: cannot write sweep.csv");
        os << "alpha,c_r,layers,mean_snr_db,mean_prd_pct,n\n";
        for (const auto& c : cells) {
            os << fmt_g(c.alpha) << "," << fmt_g(c.c_r) << "," << layers_label(c.layers) << ","
               << fmt_g(c.mean_snr_db) << "," << fmt_g(c.mean_prd_pct) << "," << c.n_signals
               << "\n";
        }

        // one SNR plot and one PRD plot per alpha, series keyed by layer subset
        std::vector<double> alphas;
        for (const auto& c : cells) {
            if (std::find(alphas.begin(), alphas.end(), c.alpha) == alphas.end()) {
                alphas.push_back(c.alpha);
            }
        }
        for (const double alpha : alphas) {
            for (const bool use_snr : {true, false}) {
                std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
                for (const auto& c : cells) {
                    if (c.alpha != alpha) continue;
                    const std::string name = "W" + layers_label(c.layers);
                    auto it = std::find_if(series.begin(), series.end(),
                                           [&](const auto& s) { return s.first == name; });
                    if (it == series.end()) {
                        series.push_back({name, {}});
                        it = series.end() - 1;
                    }
                    it->second.push_back({c.c_r, use_snr ? c.mean_snr_db : c.mean_prd_pct});
                }
                char fname[64];
                std::snprintf(fname, sizeof fname, "%s_vs_cr_alpha%.2f.svg",
                              use_snr ? "snr" : "prd", alpha);
                write_svg(output_dir / fname,
                          std::string(use_snr ? "SNR" : "PRD") + " vs compression ratio (alpha=" +
                              fmt_g(alpha) + ")",
                          "C_R", use_snr ? "mean SNR (dB)" : "mean PRD (%)", series);
            }
        }
    }

    if (!energy.empty()) {
        std::ofstream os(output_dir / "energy.csv", std::ios::trunc);
        if (!os) throw std::runtime_error("emit_report: cannot write energy.csv");
        os << "layer,f_s,e\n";
        for (const auto& p : energy) {
            os << p.layer << "," << fmt_g(p.f_s) << "," << fmt_g(p.e) << "\n";
        }
        std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
        for (const auto& p : energy) {
            const std::string name = "W[" + std::to_string(p.layer) + "]";
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const auto& s) { return s.first == name; });
            if (it == series.end()) {
                series.push_back({name, {}});
                it = series.end() - 1;
            }
            it->second.push_back({p.f_s, p.e});
        }
        write_svg(output_dir / "energy.svg", "Singular-value energy vs retained fraction", "F_s",
                  "E", series);
    }
}

}  // namespace fcae::pipeline
