// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/render_head.hpp"

#include <string>

#include "lumi/error.hpp"

namespace lumi {

namespace {

void check_branch(const FeatureImage& img, const char* name) {
    if (img.channels != kHeadInputChannels)
        throw DimensionMismatch(std::string(name) + " branch has " + std::to_string(img.channels) +
                                " channels, head expects " + std::to_string(kHeadInputChannels));
}

void check_shapes(const FeatureImage& fg, const FeatureImage& bg) {
    check_branch(fg, "fg");
    check_branch(bg, "bg");
    if (fg.width != bg.width || fg.height != bg.height)
        throw DimensionMismatch("fg " + std::to_string(fg.width) + "x" + std::to_string(fg.height) +
                                " vs bg " + std::to_string(bg.width) + "x" + std::to_string(bg.height));
}

}  // namespace

Image render_head_forward(const FeatureImage& fg, const FeatureImage& bg,
                          const RenderHeadParams& params) {
    check_shapes(fg, bg);
    const int h = params.hidden;
    Image out(fg.width, fg.height, 3);
    std::vector<double> hid(static_cast<std::size_t>(2) * h);
    for (int v = 0; v < fg.height; ++v) {
        for (int u = 0; u < fg.width; ++u) {
            for (int j = 0; j < h; ++j) {
                double a_fg = 0.0;
                double a_bg = 0.0;
                for (int i = 0; i < kHeadInputChannels; ++i) {
                    a_fg += fg.at(u, v, i) * params.w_fg[i * h + j];
                    a_bg += bg.at(u, v, i) * params.w_bg[i * h + j];
                }
                hid[j] = a_fg > 0.0 ? a_fg : 0.0;
                hid[h + j] = a_bg > 0.0 ? a_bg : 0.0;
            }
            for (int c = 0; c < 3; ++c) {
                double acc = params.b_out[c];
                for (int k = 0; k < 2 * h; ++k) acc += hid[k] * params.w_out[k * 3 + c];
                out.at(u, v, c) = acc;
            }
        }
    }
    return out;
}

HeadGradients backward_to_inputs(const Image& grad_rgb, const FeatureImage& fg,
                                 const FeatureImage& bg, const RenderHeadParams& params) {
    check_shapes(fg, bg);
    if (grad_rgb.width != fg.width || grad_rgb.height != fg.height || grad_rgb.channels != 3)
        throw DimensionMismatch("output gradient " + std::to_string(grad_rgb.width) + "x" +
                                std::to_string(grad_rgb.height) + "x" +
                                std::to_string(grad_rgb.channels) + " does not match a " +
                                std::to_string(fg.width) + "x" + std::to_string(fg.height) +
                                " RGB forward pass");

    const int h = params.hidden;
    HeadGradients g;
    g.fg = FeatureImage(fg.width, fg.height, kHeadInputChannels);
    g.bg = FeatureImage(fg.width, fg.height, kHeadInputChannels);
    g.params = RenderHeadParams(h);

    std::vector<double> act_fg(h), act_bg(h), grad_h_fg(h), grad_h_bg(h);
    for (int v = 0; v < fg.height; ++v) {
        for (int u = 0; u < fg.width; ++u) {
            // Recompute pre-activations; cheaper than storing them per pixel.
            for (int j = 0; j < h; ++j) {
                double a_fg = 0.0;
                double a_bg = 0.0;
                for (int i = 0; i < kHeadInputChannels; ++i) {
                    a_fg += fg.at(u, v, i) * params.w_fg[i * h + j];
                    a_bg += bg.at(u, v, i) * params.w_bg[i * h + j];
                }
                act_fg[j] = a_fg;
                act_bg[j] = a_bg;
            }
            for (int c = 0; c < 3; ++c) {
                const double gr = grad_rgb.at(u, v, c);
                g.params.b_out[c] += gr;
            }
            for (int j = 0; j < h; ++j) {
                const double h_fg = act_fg[j] > 0.0 ? act_fg[j] : 0.0;
                const double h_bg = act_bg[j] > 0.0 ? act_bg[j] : 0.0;
                double gh_fg = 0.0;
                double gh_bg = 0.0;
                for (int c = 0; c < 3; ++c) {
                    const double gr = grad_rgb.at(u, v, c);
                    g.params.w_out[j * 3 + c] += h_fg * gr;
                    g.params.w_out[(h + j) * 3 + c] += h_bg * gr;
                    gh_fg += params.w_out[j * 3 + c] * gr;
                    gh_bg += params.w_out[(h + j) * 3 + c] * gr;
                }
                grad_h_fg[j] = act_fg[j] > 0.0 ? gh_fg : 0.0;
                grad_h_bg[j] = act_bg[j] > 0.0 ? gh_bg : 0.0;
            }
            for (int i = 0; i < kHeadInputChannels; ++i) {
                double gi_fg = 0.0;
                double gi_bg = 0.0;
                for (int j = 0; j < h; ++j) {
                    gi_fg += params.w_fg[i * h + j] * grad_h_fg[j];
                    gi_bg += params.w_bg[i * h + j] * grad_h_bg[j];
                    g.params.w_fg[i * h + j] += fg.at(u, v, i) * grad_h_fg[j];
                    g.params.w_bg[i * h + j] += bg.at(u, v, i) * grad_h_bg[j];
                }
                g.fg.at(u, v, i) = gi_fg;
                g.bg.at(u, v, i) = gi_bg;
            }
        }
    }
    return g;
}

}  // namespace lumi
