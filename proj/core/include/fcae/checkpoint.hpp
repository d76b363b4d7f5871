#pragma once

#include <filesystem>

#include "fcae/autoencoder.hpp"

namespace fcae::checkpoint {

/// Binary checkpoint: magic "FCAE1", header (N, N_h, N_e, alpha, layer
/// count), then per layer: rows, cols, row-major f64 weights, bias length,
/// f64 biases. All integers u32, all floats f64, little-endian. Round trips
/// bit-exactly.
struct Checkpoint {
    autoencoder::LayerSpec spec;
    double alpha = 1.0;
    autoencoder::NetworkParams params;
};

void save(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load(const std::filesystem::path& path);

}  // namespace fcae::checkpoint
