// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

#include "lumi/descriptors.hpp"
#include "lumi/geometry.hpp"
#include "lumi/render_head.hpp"

namespace lumi {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Serialized fit state. On disk: magic "NMBG", u32 version, then the fg and
/// bg descriptor tensors (u64 dims N x 9 x 8, f32 row-major data), the four
/// head matrices (u64 rows, u64 cols, f32 data each), and the split sphere
/// as f64 center + radius. Everything little-endian.
struct Checkpoint {
    std::uint32_t version = kCheckpointVersion;
    DescriptorSet fg;
    DescriptorSet bg;
    RenderHeadParams head;
    SceneSplit split;
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);

/// Throws ParseError on malformed bytes, VersionMismatch on an unknown
/// version, IoError on filesystem failures.
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace lumi
