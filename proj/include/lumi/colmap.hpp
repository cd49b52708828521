// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lumi/camera.hpp"

namespace lumi {

/// One registered image from a COLMAP text export: pose plus intrinsics
/// resolved through its camera id.
struct PosedImage {
    int image_id = 0;
    std::string name;
    Camera cam;
};

/// Parses COLMAP's cameras.txt + images.txt text pair. Supports PINHOLE and
/// SIMPLE_PINHOLE models; quaternions are Hamilton convention, w first,
/// world-to-camera. The per-image 2D point lines are skipped.
std::vector<PosedImage> load_colmap_cameras(const std::filesystem::path& cameras_txt,
                                            const std::filesystem::path& images_txt);

} // namespace lumi
