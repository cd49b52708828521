// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "lumi/mesh.hpp"

namespace lumi {

/// Loads an ascii or binary_little_endian PLY. Vertex x/y/z may be any
/// scalar numeric type; unknown properties and elements are skipped. Faces
/// must be triangles. A PLY with no face element loads as a point cloud.
TriangleMesh load_ply(const std::filesystem::path& path);

/// Writes a PLY with float64 positions, exact under load_ply round trips
/// in both modes.
void save_ply(const std::filesystem::path& path, const TriangleMesh& mesh, bool binary = true);

} // namespace lumi
