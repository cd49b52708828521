// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/camera.hpp"

#include "lumi/error.hpp"

namespace lumi {

void Camera::validate() const {
    const Eigen::Matrix3d residual = R.transpose() * R - Eigen::Matrix3d::Identity();
    if (residual.cwiseAbs().maxCoeff() >= 1e-9) {
        throw Error("camera rotation is not orthonormal");
    }
    if (R.determinant() <= 0.0) {
        throw Error("camera rotation has negative determinant");
    }
    if (!(fx > 0.0) || !(fy > 0.0)) {
        throw Error("camera focal lengths must be positive");
    }
    if (width < 1 || height < 1) {
        throw Error("camera image size must be at least 1x1");
    }
}

std::optional<Projection> project_point(const Eigen::Vector3d& p, const Camera& cam) {
    const Eigen::Vector3d p_cam = cam.R * p + cam.T;
    if (p_cam.z() <= kDepthEpsilon) {
        return std::nullopt;
    }
    Projection out;
    out.u = cam.fx * p_cam.x() / p_cam.z() + cam.cx;
    out.v = cam.fy * p_cam.y() / p_cam.z() + cam.cy;
    out.z = p_cam.z();
    return out;
}

Eigen::Vector3d pixel_ray_direction(double u, double v, const Camera& cam) {
    const Eigen::Vector3d dir_cam((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
    return (cam.R.transpose() * dir_cam).normalized();
}

} // namespace lumi
