// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lumi/image.hpp"

namespace lumi {

struct L1Loss {
    double value = 0.0;
    Image grad;  // d value / d pred, same shape as pred
};

/// Mean absolute error over every pixel and channel; gradient is
/// sign(pred - target) / count, with sign(0) = 0.
L1Loss loss_l1(const Image& pred, const Image& target);

/// 10 log10(max_val^2 / MSE); +infinity when the images are identical.
double psnr(const Image& pred, const Image& target, double max_val = 1.0);

/// Mean structural similarity: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 1, computed per channel over the valid interior
/// and averaged.
double ssim(const Image& pred, const Image& target);

} // namespace lumi
