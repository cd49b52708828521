// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/fit.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lumi/descriptor_grad.hpp"
#include "lumi/error.hpp"
#include "lumi/losses.hpp"
#include "lumi/rasterizer.hpp"
#include "lumi/rng.hpp"

namespace lumi {

namespace {

struct ViewBuffers {
    PointFragmentBuffer fg_points;
    MeshFragmentBuffer fg_mesh;
    PointFragmentBuffer bg_points;
    MeshFragmentBuffer bg_mesh;
};

struct BranchImages {
    FeatureImage fg;
    FeatureImage bg;
};

ViewBuffers rasterize_view(const MeshPartition& parts, const Camera& cam, double radius,
                           int width, int height) {
    ViewBuffers b;
    b.fg_points = rasterize_points(parts.fg.mesh.vertices, cam, radius, width, height);
    b.fg_mesh = rasterize_mesh(parts.fg.mesh, cam, width, height);
    b.bg_points = rasterize_points(parts.bg.mesh.vertices, cam, radius, width, height);
    b.bg_mesh = rasterize_mesh(parts.bg.mesh, cam, width, height);
    return b;
}

BranchImages evaluate_branches(const ViewBuffers& bufs, const MeshPartition& parts,
                               const DescriptorSet& d_fg, const DescriptorSet& d_bg,
                               const Camera& cam) {
    BranchImages out;
    out.fg = concat_features(eval_point_features(bufs.fg_points, d_fg, cam),
                             eval_mesh_features(bufs.fg_mesh, d_fg, parts.fg.mesh, {}, cam));
    out.bg = concat_features(eval_point_features(bufs.bg_points, d_bg, cam),
                             eval_mesh_features(bufs.bg_mesh, d_bg, parts.bg.mesh, {}, cam));
    return out;
}

void fill_normal(std::vector<double>& dst, Rng& rng, double stddev) {
    for (double& x : dst) x = rng.normal() * stddev;
}

void zero_upper_bands(DescriptorSet& d) {
    for (int vert = 0; vert < d.vertex_count; ++vert)
        for (int k = 1; k < DescriptorSet::kCoeffs; ++k)
            for (int c = 0; c < DescriptorSet::kChannels; ++c) d.at(vert, k, c) = 0.0;
}

}  // namespace

FitResult fit_scene(const TriangleMesh& mesh, const SceneSplit& split,
                    std::span<const TrainingView> views, const FitConfig& config) {
    if (views.empty()) throw Error("fit_scene requires at least one training view");
    if (config.epochs < 1) throw Error("fit_scene requires epochs >= 1");
    if (config.lr_descriptors <= 0.0 || config.lr_head <= 0.0)
        throw Error("fit_scene requires positive learning rates");
    for (const auto& view : views) {
        if (view.target.width != view.cam.width || view.target.height != view.cam.height ||
            view.target.channels != 3)
            throw DimensionMismatch("training image " + std::to_string(view.target.width) + "x" +
                                    std::to_string(view.target.height) + "x" +
                                    std::to_string(view.target.channels) +
                                    " does not match its camera (" + std::to_string(view.cam.width) +
                                    "x" + std::to_string(view.cam.height) + "x3)");
    }

    const MeshPartition parts = partition_mesh(mesh, split);
    std::vector<ViewBuffers> buffers;
    buffers.reserve(views.size());
    for (const auto& view : views)
        buffers.push_back(rasterize_view(parts, view.cam, config.point_radius, view.cam.width,
                                         view.cam.height));

    FitResult result;
    result.split = split;
    result.fg = DescriptorSet(static_cast<int>(parts.fg.mesh.vertex_count()));
    result.bg = DescriptorSet(static_cast<int>(parts.bg.mesh.vertex_count()));
    result.head = RenderHeadParams(config.head_hidden);

    Rng rng(config.seed);
    fill_normal(result.fg.data, rng, config.descriptor_init_std);
    fill_normal(result.bg.data, rng, config.descriptor_init_std);
    fill_normal(result.head.w_fg, rng, 1.0 / std::sqrt(static_cast<double>(kHeadInputChannels)));
    fill_normal(result.head.w_bg, rng, 1.0 / std::sqrt(static_cast<double>(kHeadInputChannels)));
    fill_normal(result.head.w_out, rng, 1.0 / std::sqrt(static_cast<double>(2 * config.head_hidden)));
    for (double& x : result.head.b_out) x = 0.5;
    if (config.band0_only) {
        zero_upper_bands(result.fg);
        zero_upper_bands(result.bg);
    }

    AdamState st_fg(result.fg.data.size());
    AdamState st_bg(result.bg.data.size());
    AdamState st_w_fg(result.head.w_fg.size());
    AdamState st_w_bg(result.head.w_bg.size());
    AdamState st_w_out(result.head.w_out.size());
    AdamState st_b_out(result.head.b_out.size());

    std::vector<int> order(views.size());
    std::iota(order.begin(), order.end(), 0);

    result.loss_trace.reserve(config.epochs);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        for (int idx : order) {
            const TrainingView& view = views[idx];
            const ViewBuffers& bufs = buffers[idx];
            const BranchImages feats =
                evaluate_branches(bufs, parts, result.fg, result.bg, view.cam);
            const Image pred = render_head_forward(feats.fg, feats.bg, result.head);
            const L1Loss loss = loss_l1(pred, view.target);
            if (!std::isfinite(loss.value))
                throw NonFiniteLoss("epoch " + std::to_string(epoch) + ", view " +
                                    std::to_string(idx));
            epoch_loss += loss.value;

            const HeadGradients hg = backward_to_inputs(loss.grad, feats.fg, feats.bg, result.head);
            DescriptorSet g_fg =
                backward_to_descriptors(hg.fg, bufs.fg_points, bufs.fg_mesh, parts.fg.mesh, {}, {},
                                        view.cam, result.fg.vertex_count);
            DescriptorSet g_bg =
                backward_to_descriptors(hg.bg, bufs.bg_points, bufs.bg_mesh, parts.bg.mesh, {}, {},
                                        view.cam, result.bg.vertex_count);
            if (config.band0_only) {
                zero_upper_bands(g_fg);
                zero_upper_bands(g_bg);
            }

            adam_step(result.fg.data, g_fg.data, st_fg, config.lr_descriptors);
            adam_step(result.bg.data, g_bg.data, st_bg, config.lr_descriptors);
            adam_step(result.head.w_fg, hg.params.w_fg, st_w_fg, config.lr_head);
            adam_step(result.head.w_bg, hg.params.w_bg, st_w_bg, config.lr_head);
            adam_step(result.head.w_out, hg.params.w_out, st_w_out, config.lr_head);
            adam_step(result.head.b_out, hg.params.b_out, st_b_out, config.lr_head);
        }
        result.loss_trace.push_back(epoch_loss / static_cast<double>(views.size()));
    }
    return result;
}

Image render_view(const TriangleMesh& mesh, const SceneSplit& split, const DescriptorSet& fg,
                  const DescriptorSet& bg, const RenderHeadParams& head, const Camera& cam,
                  double point_radius) {
    const MeshPartition parts = partition_mesh(mesh, split);
    const ViewBuffers bufs = rasterize_view(parts, cam, point_radius, cam.width, cam.height);
    const BranchImages feats = evaluate_branches(bufs, parts, fg, bg, cam);
    return render_head_forward(feats.fg, feats.bg, head);
}

}  // namespace lumi
