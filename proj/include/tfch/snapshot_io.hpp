#pragma once

#include <cstdint>
#include <filesystem>

#include "tfch/spectral_field.hpp"

namespace tfch {

struct SnapshotMeta {
    double time = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
};

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// TFCH1 snapshot: one ASCII header line
///   TFCH1 nx ny lx ly t alpha seed\n
/// followed by nx*ny little-endian float64 values, row-major (x slow).
/// Writing then reading restores the field bit-exactly.
void write_snapshot(const Field& field, const SnapshotMeta& meta,
                    const std::filesystem::path& path);

struct Snapshot {
    Field field;
    SnapshotMeta meta;
};

Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace tfch
