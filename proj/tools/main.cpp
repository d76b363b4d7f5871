#include <CLI11.hpp>
#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "fcae/checkpoint.hpp"
#include "fcae/pipeline.hpp"
#include "fcae/rsvd.hpp"
#include "fcae/signal.hpp"

namespace fs = std::filesystem;
using namespace fcae;

namespace {

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = ".";
    double alpha = 1.0;
    bool alpha_set = false;
    double sigma = 15.0;
    bool sigma_set = false;
    std::vector<double> ratios;
    std::vector<int> layers;
    int threads = 0;  // 0 = Eigen default; 1 = strict reproducibility
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Flat key=value config file");
    cmd->add_option("--seed", opts.seed, "RNG seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--alpha", opts.alpha, "Fractional order in [1, 2)")
        ->each([&](const std::string&) { opts.alpha_set = true; });
    cmd->add_option("--sigma", opts.sigma, "Additive noise std")
        ->each([&](const std::string&) { opts.sigma_set = true; });
    cmd->add_option("--ratios", opts.ratios, "Compression ratios in [0, 1)")
        ->delimiter(',');
    cmd->add_option("--layers", opts.layers, "Layer indices to compress (1-4)")
        ->delimiter(',');
    cmd->add_option("--threads", opts.threads,
                    "Eigen thread count (1 = strict reproducibility)");
}

pipeline::ExperimentConfig resolve_config(const CommonOpts& opts) {
    pipeline::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = pipeline::load_config(opts.config_path);
    if (opts.seed_set) cfg.training.seed = opts.seed;
    if (opts.alpha_set) cfg.training.alpha = opts.alpha;
    if (opts.sigma_set) cfg.sigma = opts.sigma;
    if (!opts.ratios.empty()) cfg.sweep_ratios = opts.ratios;
    if (!opts.layers.empty()) cfg.layer_subsets = {opts.layers};
    cfg.output_dir = opts.out_dir;
    cfg.validate();
    return cfg;
}

void apply_threads(int threads) {
    if (threads > 0) Eigen::setNbThreads(threads);
}

std::vector<signal::Signal> load_or_generate(const pipeline::ExperimentConfig& cfg) {
    if (cfg.data_source == "synthetic") {
        return pipeline::gen_synthetic(cfg.n_signals, cfg.signal_length,
                                       cfg.training.seed);
    }
    return pipeline::ingest_csv(cfg.data_source);
}

int cmd_gen(const CommonOpts& opts, int n_signals, int length) {
    apply_threads(opts.threads);
    auto cfg = resolve_config(opts);
    if (n_signals > 0) cfg.n_signals = n_signals;
    if (length > 0) cfg.signal_length = length;
    fs::create_directories(cfg.output_dir);
    const auto clean =
        pipeline::gen_synthetic(cfg.n_signals, cfg.signal_length, cfg.training.seed);
    std::vector<signal::Signal> noisy;
    noisy.reserve(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) {
        noisy.push_back(signal::add_gaussian_noise(
            clean[i], cfg.sigma, cfg.training.seed * 1000003ULL + i));
    }
    const fs::path clean_path = fs::path(cfg.output_dir) / "clean.csv";
    const fs::path noisy_path = fs::path(cfg.output_dir) / "noisy.csv";
    pipeline::write_csv(clean_path, clean);
    pipeline::write_csv(noisy_path, noisy);
    std::printf("wrote %zu signals to %s and %s\n", clean.size(),
                clean_path.string().c_str(), noisy_path.string().c_str());
    return 0;
}

int cmd_train(const CommonOpts& opts) {
    apply_threads(opts.threads);
    const auto cfg = resolve_config(opts);
    fs::create_directories(cfg.output_dir);
    const auto res = pipeline::run_training(cfg, [](int epoch, double loss) {
        if (epoch % 100 == 0) std::printf("epoch %d loss %.9g\n", epoch, loss);
    });
    std::printf("initial loss %.9g, final loss %.9g\ncheckpoint: %s\n",
                res.initial_loss, res.final_loss,
                res.checkpoint_path.string().c_str());
    return 0;
}

int cmd_denoise(const CommonOpts& opts, const std::string& ckpt,
                const std::string& input_csv, const std::string& reference_csv) {
    apply_threads(opts.threads);
    fs::create_directories(opts.out_dir);
    const auto noisy = pipeline::ingest_csv(input_csv);
    std::vector<signal::Signal> clean;
    if (!reference_csv.empty()) clean = pipeline::ingest_csv(reference_csv);
    const auto results =
        pipeline::run_denoise(ckpt, noisy, clean.empty() ? nullptr : &clean);
    std::vector<signal::Signal> out;
    out.reserve(results.size());
    double snr_sum = 0.0, prd_sum = 0.0;
    int n_reports = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        out.push_back(results[i].denoised);
        if (results[i].report) {
            std::printf("signal %zu: SNR %.9g dB, PRD %.9g%%\n", i,
                        results[i].report->snr_db, results[i].report->prd_pct);
            snr_sum += results[i].report->snr_db;
            prd_sum += results[i].report->prd_pct;
            ++n_reports;
        }
    }
    const fs::path out_path = fs::path(opts.out_dir) / "denoised.csv";
    pipeline::write_csv(out_path, out);
    if (n_reports > 0) {
        std::printf("mean: SNR %.9g dB, PRD %.9g%%\n", snr_sum / n_reports,
                    prd_sum / n_reports);
    }
    std::printf("wrote %s\n", out_path.string().c_str());
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<std::string>& ckpts,
              const std::string& input_csv, const std::string& reference_csv) {
    apply_threads(opts.threads);
    auto cfg = resolve_config(opts);
    fs::create_directories(cfg.output_dir);
    const auto noisy = pipeline::ingest_csv(input_csv);
    const auto clean = pipeline::ingest_csv(reference_csv);
    std::vector<pipeline::SweepCell> cells;
    for (const auto& ckpt : ckpts) {
        const auto part = pipeline::run_sweep(ckpt, noisy, clean, cfg.sweep_ratios,
                                              cfg.layer_subsets);
        cells.insert(cells.end(), part.begin(), part.end());
    }
    const auto loaded = checkpoint::load(ckpts.front());
    pipeline::emit_report(cells, pipeline::energy_profile(loaded), cfg.output_dir);
    std::printf("%zu sweep cells -> %s/sweep.csv\n", cells.size(),
                cfg.output_dir.c_str());
    return 0;
}

int cmd_energy(const CommonOpts& opts, const std::string& ckpt) {
    apply_threads(opts.threads);
    fs::create_directories(opts.out_dir);
    const auto loaded = checkpoint::load(ckpt);
    pipeline::emit_report({}, pipeline::energy_profile(loaded), opts.out_dir);
    std::printf("wrote %s/energy.csv and energy.svg\n", opts.out_dir.c_str());
    return 0;
}

int cmd_inspect(const std::string& ckpt) {
    const auto loaded = checkpoint::load(ckpt);
    std::printf("layers: %d -> %d -> %d -> %d -> %d\nalpha: %.9g\n",
                loaded.spec.n_in, loaded.spec.n_h, loaded.spec.n_e, loaded.spec.n_h,
                loaded.spec.n_in, loaded.alpha);
    for (std::size_t l = 0; l < loaded.params.w.size(); ++l) {
        const auto& w = loaded.params.w[l];
        std::printf("W[%zu]: %lldx%lld, |W|_F = %.9g\n", l + 1,
                    static_cast<long long>(w.rows()),
                    static_cast<long long>(w.cols()), w.norm());
    }
    const fs::path meta_path = pipeline::metadata_path_for(ckpt);
    if (fs::exists(meta_path)) {
        const auto meta = pipeline::load_metadata(meta_path);
        std::printf("frag_len: %d\nsigma: %.9g\nseed: %llu\nfinal loss: %.9g\n",
                    meta.frag_len, meta.sigma,
                    static_cast<unsigned long long>(meta.seed), meta.final_loss);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional autoencoder signal denoiser"};
    app.require_subcommand(1);

    CommonOpts opts;
    int gen_n = 0, gen_len = 0;
    std::string ckpt, input_csv, reference_csv;
    std::vector<std::string> ckpts;

    auto* gen = app.add_subcommand("gen", "Generate synthetic clean/noisy CSVs");
    add_common_flags(gen, opts);
    gen->add_option("--signals", gen_n, "Number of signals");
    gen->add_option("--length", gen_len, "Samples per signal");

    auto* train = app.add_subcommand("train", "Train from config, write checkpoint");
    add_common_flags(train, opts);

    auto* denoise = app.add_subcommand("denoise", "Denoise a CSV through a checkpoint");
    add_common_flags(denoise, opts);
    denoise->add_option("--checkpoint", ckpt, "Trained checkpoint")->required();
    denoise->add_option("--input", input_csv, "Noisy signals CSV")->required();
    denoise->add_option("--reference", reference_csv, "Clean reference CSV (optional)");

    auto* sweep = app.add_subcommand("sweep", "Compression-ratio sweep report");
    add_common_flags(sweep, opts);
    sweep->add_option("--checkpoint", ckpts, "Checkpoint(s), one per alpha")
        ->required();
    sweep->add_option("--input", input_csv, "Noisy signals CSV")->required();
    sweep->add_option("--reference", reference_csv, "Clean reference CSV")->required();

    auto* energy = app.add_subcommand("energy", "Per-layer E vs F_s profile");
    add_common_flags(energy, opts);
    energy->add_option("--checkpoint", ckpt, "Trained checkpoint")->required();

    auto* inspect = app.add_subcommand("inspect", "Dump checkpoint header");
    inspect->add_option("--checkpoint", ckpt, "Checkpoint to inspect")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(opts, gen_n, gen_len);
        if (train->parsed()) return cmd_train(opts);
        if (denoise->parsed()) return cmd_denoise(opts, ckpt, input_csv, reference_csv);
        if (sweep->parsed()) return cmd_sweep(opts, ckpts, input_csv, reference_csv);
        if (energy->parsed()) return cmd_energy(opts, ckpt);
        if (inspect->parsed()) return cmd_inspect(ckpt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
