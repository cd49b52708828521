// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "lumi/image.hpp"

namespace lumi {

/// Decodes a PNG to a 3-channel image in [0, 1]. Grayscale and palette
/// images are expanded to RGB, alpha is dropped, 16-bit samples map as
/// v / 65535 and 8-bit as v / 255.
Image read_png(const std::filesystem::path& path);

/// Encodes an 8-bit RGB PNG; values are clamped to [0, 1] and rounded
/// half away from zero.
void write_png(const std::filesystem::path& path, const Image& img);

} // namespace lumi
