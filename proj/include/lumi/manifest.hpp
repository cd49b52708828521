// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lumi/colmap.hpp"
#include "lumi/fit.hpp"
#include "lumi/geometry.hpp"
#include "lumi/mesh.hpp"

namespace lumi {

/// Scene description JSON: paths are resolved relative to the manifest file.
///
///   {
///     "mesh": "mesh.ply",
///     "cameras_txt": "cameras.txt",
///     "images_txt": "images.txt",
///     "images_dir": "images",
///     "images": { "<image id>": "view.png", ... },
///     "split": { "center": [x, y, z], "radius": r },   // optional override
///     "up": [0, 1, 0],                                 // optional
///     "point_radius": 0.006                            // optional
///   }
struct SceneManifest {
    std::filesystem::path mesh_path;
    std::filesystem::path cameras_path;
    std::filesystem::path images_txt_path;
    std::filesystem::path images_dir;
    std::map<int, std::string> images;  // image id -> filename under images_dir
    std::optional<SceneSplit> split;
    Eigen::Vector3d up = Eigen::Vector3d(0.0, 1.0, 0.0);
    double point_radius = 0.006;
};

/// Parses and validates the manifest; every referenced file must exist.
SceneManifest load_manifest(const std::filesystem::path& path);

/// Manifest plus the geometry and poses it references (images stay on disk).
struct Scene {
    SceneManifest manifest;
    TriangleMesh mesh;
    std::vector<PosedImage> views;
};

Scene load_scene(const std::filesystem::path& manifest_path);

/// The split to fit or render with: the manifest override when present,
/// otherwise computed from every posed camera.
SceneSplit scene_split(const Scene& scene);

/// Finds the posed view with the given image id; throws IndexOutOfRange.
const PosedImage& find_view(const Scene& scene, int image_id);

/// Reads the training images listed in the manifest, pairing each with its
/// posed camera.
std::vector<TrainingView> load_training_views(const Scene& scene);

} // namespace lumi
