// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/losses.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lumi/error.hpp"

namespace lumi {

namespace {

void check_same_shape(const Image& a, const Image& b) {
    if (!a.same_shape(b))
        throw DimensionMismatch(std::to_string(a.width) + "x" + std::to_string(a.height) + "x" +
                                std::to_string(a.channels) + " vs " + std::to_string(b.width) + "x" +
                                std::to_string(b.height) + "x" + std::to_string(b.channels));
}

constexpr int kWindow = 11;

std::array<double, kWindow> gaussian_window() {
    std::array<double, kWindow> w{};
    const double sigma = 1.5;
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - (kWindow - 1) / 2.0;
        w[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return w;
}

// Valid-region separable convolution: (W, H) -> (W - 10, H - 10).
std::vector<double> filter_valid(const std::vector<double>& src, int width, int height) {
    const auto win = gaussian_window();
    const int out_w = width - kWindow + 1;
    const int out_h = height - kWindow + 1;
    std::vector<double> horiz(static_cast<std::size_t>(out_w) * height);
    for (int v = 0; v < height; ++v)
        for (int u = 0; u < out_w; ++u) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) acc += win[k] * src[v * width + u + k];
            horiz[static_cast<std::size_t>(v) * out_w + u] = acc;
        }
    std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
    for (int v = 0; v < out_h; ++v)
        for (int u = 0; u < out_w; ++u) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) acc += win[k] * horiz[static_cast<std::size_t>(v + k) * out_w + u];
            out[static_cast<std::size_t>(v) * out_w + u] = acc;
        }
    return out;
}

std::vector<double> channel_plane(const Image& img, int c) {
    std::vector<double> plane(static_cast<std::size_t>(img.width) * img.height);
    for (int v = 0; v < img.height; ++v)
        for (int u = 0; u < img.width; ++u)
            plane[static_cast<std::size_t>(v) * img.width + u] = img.at(u, v, c);
    return plane;
}

}  // namespace

L1Loss loss_l1(const Image& pred, const Image& target) {
    check_same_shape(pred, target);
    L1Loss out;
    out.grad = Image(pred.width, pred.height, pred.channels);
    const double inv_count = 1.0 / static_cast<double>(pred.data.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const double d = pred.data[i] - target.data[i];
        sum += std::abs(d);
        out.grad.data[i] = d > 0.0 ? inv_count : (d < 0.0 ? -inv_count : 0.0);
    }
    out.value = sum * inv_count;
    return out;
}

double psnr(const Image& pred, const Image& target, double max_val) {
    check_same_shape(pred, target);
    double mse = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const double d = pred.data[i] - target.data[i];
        mse += d * d;
    }
    mse /= static_cast<double>(pred.data.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(max_val * max_val / mse);
}

double ssim(const Image& pred, const Image& target) {
    check_same_shape(pred, target);
    if (pred.width < kWindow || pred.height < kWindow)
        throw ImageTooSmall(std::to_string(pred.width) + "x" + std::to_string(pred.height) +
                            " is below the " + std::to_string(kWindow) + "x" +
                            std::to_string(kWindow) + " SSIM window");

    const double c1 = 0.01 * 0.01;
    const double c2 = 0.03 * 0.03;
    double total = 0.0;
    std::size_t count = 0;
    for (int c = 0; c < pred.channels; ++c) {
        const auto x = channel_plane(pred, c);
        const auto y = channel_plane(target, c);
        std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            xx[i] = x[i] * x[i];
            yy[i] = y[i] * y[i];
            xy[i] = x[i] * y[i];
        }
        const auto mu_x = filter_valid(x, pred.width, pred.height);
        const auto mu_y = filter_valid(y, pred.width, pred.height);
        const auto m_xx = filter_valid(xx, pred.width, pred.height);
        const auto m_yy = filter_valid(yy, pred.width, pred.height);
        const auto m_xy = filter_valid(xy, pred.width, pred.height);
        for (std::size_t i = 0; i < mu_x.size(); ++i) {
            const double var_x = m_xx[i] - mu_x[i] * mu_x[i];
            const double var_y = m_yy[i] - mu_y[i] * mu_y[i];
            const double cov = m_xy[i] - mu_x[i] * mu_y[i];
            const double num = (2.0 * mu_x[i] * mu_y[i] + c1) * (2.0 * cov + c2);
            const double den = (mu_x[i] * mu_x[i] + mu_y[i] * mu_y[i] + c1) * (var_x + var_y + c2);
            total += num / den;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

}  // namespace lumi
