#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fcae/autoencoder.hpp"
#include "fcae/checkpoint.hpp"
#include "fcae/signal.hpp"

namespace fcae::pipeline {

struct ExperimentConfig {
    std::string data_source = "synthetic";  // "synthetic" or a CSV path
    int n_signals = 40;                     // synthetic generation
    int signal_length = 2500;
    double sigma = 15.0;
    int frag_len = 250;
    double train_split = 0.7;
    bool per_feature_norm = false;
    autoencoder::TrainingConfig training;
    std::vector<double> sweep_alphas{1.0};
    std::vector<double> sweep_ratios;        // default 0.50..0.95 step 0.05
    std::vector<std::vector<int>> layer_subsets{{1, 2, 3, 4}};
    std::string output_dir = ".";
    void validate() const;
};

/// Flat key=value config file; '#' comments; unknown keys are errors.
ExperimentConfig load_config(const std::filesystem::path& path);

/// One signal per CSV row; '#' lines skipped ("# rate=<hz>" sets the rate).
std::vector<signal::Signal> ingest_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const std::vector<signal::Signal>& signals);

/// Sums of 3-5 random sinusoids scaled so sigma=15 noise lands the input
/// SNR roughly in [-3, +6] dB. Deterministic per seed.
std::vector<signal::Signal> gen_synthetic(int n_signals, int length, std::uint64_t seed);

/// Either global or per-feature min-max bounds, as configured at training time.
struct Normalizer {
    bool per_feature = false;
    signal::NormState global;
    signal::PerFeatureNormState columns;
    Eigen::MatrixXd apply(const Eigen::MatrixXd& data) const;
    Eigen::MatrixXd invert(const Eigen::MatrixXd& data) const;
};

/// Sidecar metadata written next to each checkpoint (<ckpt>.meta.json).
struct Metadata {
    Normalizer norm;
    int frag_len = 250;
    double sigma = 15.0;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    std::uint64_t seed = 0;
    autoencoder::TrainingConfig training;
};

struct TrainResult {
    std::filesystem::path checkpoint_path;
    double initial_loss = 0.0;
    double final_loss = 0.0;
};

/// Full training pipeline: load/generate -> add noise -> fragment ->
/// Tchebichef moments -> normalize -> split -> train -> checkpoint + sidecar.
TrainResult run_training(const ExperimentConfig& config,
                         const autoencoder::EpochCallback& on_epoch = {});

struct DenoiseResult {
    signal::Signal denoised;
    std::optional<signal::MetricReport> report;
};

std::vector<DenoiseResult> run_denoise(
    const std::filesystem::path& checkpoint_path,
    const std::vector<signal::Signal>& noisy,
    const std::vector<signal::Signal>* clean = nullptr);

/// Same flow with explicit in-memory weights (used by the sweep).
std::vector<DenoiseResult> run_denoise(
    const checkpoint::Checkpoint& ckpt, const Metadata& meta,
    const std::vector<signal::Signal>& noisy,
    const std::vector<signal::Signal>* clean = nullptr);

struct SweepCell {
    double alpha = 1.0;
    double c_r = 0.0;
    std::vector<int> layers;
    double mean_snr_db = 0.0;
    double mean_prd_pct = 0.0;
    int n_signals = 0;
};

/// One cell per (ratio, layer subset): compress the subset at C_R, denoise
/// the test set, record mean SNR/PRD. Alpha comes from the checkpoint header.
std::vector<SweepCell> run_sweep(
    const std::filesystem::path& checkpoint_path,
    const std::vector<signal::Signal>& noisy,
    const std::vector<signal::Signal>& clean,
    const std::vector<double>& ratios,
    const std::vector<std::vector<int>>& layer_subsets);

struct EnergyPoint {
    int layer = 1;  // 1-based
    double f_s = 0.0;
    double e = 0.0;
};

/// Full E vs F_s profile per layer from the checkpoint's weights.
std::vector<EnergyPoint> energy_profile(const checkpoint::Checkpoint& ckpt);

/// Writes sweep.csv, energy.csv and SVG line plots under output_dir.
void emit_report(const std::vector<SweepCell>& cells,
                 const std::vector<EnergyPoint>& energy,
                 const std::filesystem::path& output_dir);

void save_metadata(const std::filesystem::path& path, const Metadata& meta);
Metadata load_metadata(const std::filesystem::path& path);
std::filesystem::path metadata_path_for(const std::filesystem::path& checkpoint_path);

}  // namespace fcae::pipeline
