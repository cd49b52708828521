// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "lumi/camera.hpp"
#include "lumi/mesh.hpp"
#include "lumi/rng.hpp"

namespace lumi {

/// Foreground sphere: everything within `radius` of `center` is foreground.
struct SceneSplit {
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    double radius = 0.0;
};

/// Elevation statistics of the training cameras about a scene up axis.
struct CameraStats {
    double mean_elevation = 0.0; // polar angle from `up`, radians
    double std_elevation = 0.0;
    Eigen::Vector3d up = Eigen::Vector3d(0.0, 1.0, 0.0);
};

/// World-to-camera pose without intrinsics.
struct CameraPose {
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    Eigen::Vector3d T = Eigen::Vector3d::Zero();

    Eigen::Vector3d position() const { return -R.transpose() * T; }
};

/// Submesh plus the map from its vertex indices back to the source mesh.
struct SubMesh {
    TriangleMesh mesh;
    std::vector<int> vertex_map; // submesh vertex -> original vertex
};

struct MeshPartition {
    SubMesh fg;
    SubMesh bg;
};

/// Sphere centered at the mean camera position with radius 1.1x the
/// distance to the furthest camera. Throws DegenerateSplit when the
/// cameras coincide or fewer than two are given.
SceneSplit compute_scene_split(std::span<const Camera> cameras);

/// Assigns each face to fg iff its centroid lies within the split sphere.
/// Each submesh keeps only the vertices its faces reference, in ascending
/// original-index order.
MeshPartition partition_mesh(const TriangleMesh& mesh, const SceneSplit& split);

/// World-to-camera rotation looking from `position` toward `target` with
/// image up approximately along `up`. Camera +z is the forward axis and
/// +y points down in the image. Throws DegenerateLookAt when position and
/// target coincide or `up` is parallel to the view direction.
Eigen::Matrix3d look_at(const Eigen::Vector3d& position, const Eigen::Vector3d& target,
                        const Eigen::Vector3d& up);

/// Mean and standard deviation of camera elevations about `up`, measured
/// as the polar angle of (camera position - center).
CameraStats compute_camera_stats(std::span<const Camera> cameras, const Eigen::Vector3d& center,
                                 const Eigen::Vector3d& up);

/// Deterministic spherical placement used by sample_augmented_camera:
/// center + r * (sin(theta)sin(phi) b1 + cos(theta) up + sin(theta)cos(phi) b2)
/// where (b1, up, b2) is an orthonormal basis with pole `up`. For
/// up = (0,1,0) this is exactly r * [sin(theta)sin(phi), cos(theta), sin(theta)cos(phi)].
Eigen::Vector3d augmented_camera_position(const Eigen::Vector3d& center, const Eigen::Vector3d& up,
                                          double radius, double theta, double phi);

/// Draws an augmented camera pose around the foreground sphere:
/// r ~ U[0.6 radius, radius], phi ~ U[0, 2pi), theta ~ U[mean +- 1.5 std]
/// clamped to (0, pi), oriented by look_at toward the split center.
CameraPose sample_augmented_camera(const SceneSplit& split, const CameraStats& stats, Rng& rng);

} // namespace lumi
