#pragma once

#include "fks/dynamics.hpp"
#include "fks/spectral.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fks {

/// Snapshot file "FKS1":
///
///   bytes 0-3   magic "FKS1"
///   bytes 4-7   header length H, uint32 little-endian
///   bytes 8..   H bytes of UTF-8 JSON {n, t, eps, gamma, delta, variant}
///   then        n float64 little-endian physical values u(x_j)
struct Snapshot {
    int n = 0;
    double t = 0.0;
    ModelParams params;
    std::vector<double> values;

    PhysicalField physical() const;
};

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s);
/// Throws std::runtime_error on a bad magic, truncated data or a header
/// that does not match the payload length.
Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes);

void write_snapshot(const std::filesystem::path& path, double t, const ModelParams& p,
                    const SpectralField& u);
Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace fks
