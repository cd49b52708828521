// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include <Eigen/Core>

namespace lumi {

/// Number of real spherical-harmonic basis functions with l <= 2.
inline constexpr int kShCoeffCount = 9;

/// Real SH basis evaluated at a unit direction, ordered
/// (0,0), (1,-1), (1,0), (1,1), (2,-2), (2,-1), (2,0), (2,1), (2,2).
inline std::array<double, kShCoeffCount> sh_basis(const Eigen::Vector3d& dir) {
    const double x = dir.x();
    const double y = dir.y();
    const double z = dir.z();
    return {
        0.28209479177387814,
        0.4886025119029199 * y,
        0.4886025119029199 * z,
        0.4886025119029199 * x,
        1.0925484305920792 * x * y,
        1.0925484305920792 * y * z,
        0.31539156525252005 * (3.0 * z * z - 1.0),
        1.0925484305920792 * x * z,
        0.5462742152960396 * (x * x - y * y),
    };
}

} // namespace lumi
