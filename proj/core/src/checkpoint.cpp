#include "fcae/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace fcae::checkpoint {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace {

constexpr char kMagic[5] = {'F', 'C', 'A', 'E', '1'};

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
    write_u32(os, static_cast<std::uint32_t>(m.rows()));
    write_u32(os, static_cast<std::uint32_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            write_f64(os, m(i, j));
        }
    }
}

Eigen::MatrixXd read_matrix(std::istream& is) {
    const auto rows = read_u32(is);
    const auto cols = read_u32(is);
    Eigen::MatrixXd m(rows, cols);
    for (std::uint32_t i = 0; i < rows; ++i) {
        for (std::uint32_t j = 0; j < cols; ++j) {
            m(i, j) = read_f64(is);
        }
    }
    return m;
}

}  // namespace

void save(const std::filesystem::path& path, const Checkpoint& ckpt) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint: cannot open for writing: " + path.string());
    os.write(kMagic, sizeof kMagic);
    write_u32(os, static_cast<std::uint32_t>(ckpt.spec.n_in));
    write_u32(os, static_cast<std::uint32_t>(ckpt.spec.n_h));
    write_u32(os, static_cast<std::uint32_t>(ckpt.spec.n_e));
    write_f64(os, ckpt.alpha);
    write_u32(os, autoencoder::kNumLayers);
    for (int l = 0; l < autoencoder::kNumLayers; ++l) {
        write_matrix(os, ckpt.params.w[l]);
        write_u32(os, static_cast<std::uint32_t>(ckpt.params.b[l].size()));
        for (Eigen::Index i = 0; i < ckpt.params.b[l].size(); ++i) {
            write_f64(os, ckpt.params.b[l][i]);
        }
    }
    if (!os) throw std::runtime_error("checkpoint: write failed: " + path.string());
}

Checkpoint load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open for reading: " + path.string());
    char magic[5];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        throw std::runtime_error("checkpoint: bad magic in " + path.string());
    }
    Checkpoint ckpt;
    ckpt.spec.n_in = static_cast<int>(read_u32(is));
    ckpt.spec.n_h = static_cast<int>(read_u32(is));
    ckpt.spec.n_e = static_cast<int>(read_u32(is));
    ckpt.alpha = read_f64(is);
    const auto layers = read_u32(is);
    if (layers != autoencoder::kNumLayers) {
        throw std::runtime_error("checkpoint: unexpected layer count " + std::to_string(layers));
    }
    for (int l = 0; l < autoencoder::kNumLayers; ++l) {
        ckpt.params.w[l] = read_matrix(is);
        const auto len = read_u32(is);
        ckpt.params.b[l].resize(len);
        for (std::uint32_t i = 0; i < len; ++i) {
            ckpt.params.b[l][i] = read_f64(is);
        }
    }
    if (!is) throw std::runtime_error("checkpoint: truncated file " + path.string());
    return ckpt;
}

}  // namespace fcae::checkpoint
