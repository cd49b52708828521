// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>

namespace lumi {

/// Pinhole camera in world-to-camera convention: p_cam = R * p + T.
/// The camera center in world coordinates is -R^T * T.
struct Camera {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    Eigen::Vector3d T = Eigen::Vector3d::Zero();
    int width = 0;
    int height = 0;

    Eigen::Vector3d position() const { return -R.transpose() * T; }

    /// Throws Error if R is not a proper rotation or the intrinsics are invalid.
    void validate() const;
};

/// Image-plane coordinates plus camera-space depth of a projected point.
struct Projection {
    double u = 0.0;
    double v = 0.0;
    double z = 0.0;
};

inline constexpr double kDepthEpsilon = 1e-9;

/// Projects a world point. Returns nullopt for points at or behind the
/// camera plane (z <= kDepthEpsilon).
std::optional<Projection> project_point(const Eigen::Vector3d& p, const Camera& cam);

/// Unit world-frame direction of the ray through continuous image point
/// (u, v): normalize(R^T * K^-1 * (u, v, 1)).
Eigen::Vector3d pixel_ray_direction(double u, double v, const Camera& cam);

} // namespace lumi
