// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace lumi {

/// Dense H x W x C image, row-major, double precision.
/// Pixel values are nominally in [0, 1] but are not clamped until export.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, int c) : width(w), height(h), channels(c), data(static_cast<std::size_t>(w) * h * c, 0.0) {}

    double& at(int u, int v, int c) {
        return data[(static_cast<std::size_t>(v) * width + u) * channels + c];
    }
    double at(int u, int v, int c) const {
        return data[(static_cast<std::size_t>(v) * width + u) * channels + c];
    }

    std::size_t size() const { return data.size(); }

    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

} // namespace lumi
