// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace lumi {

/// Indexed triangle mesh. Faces may be empty (a bare point cloud).
struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }

    /// Throws Error if a face references a missing vertex or repeats one.
    void validate() const;
};

} // namespace lumi
