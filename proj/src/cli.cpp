// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lumi/checkpoint.hpp"
#include "lumi/error.hpp"
#include "lumi/fit.hpp"
#include "lumi/losses.hpp"
#include "lumi/manifest.hpp"
#include "lumi/png_io.hpp"

namespace lumi {

namespace {

int run_fit(const std::string& scene_path, int epochs, std::uint64_t seed,
            const std::string& out_path, const std::string& trace_path) {
    const Scene scene = load_scene(scene_path);
    const SceneSplit split = scene_split(scene);
    const std::vector<TrainingView> views = load_training_views(scene);

    FitConfig config;
    config.epochs = epochs;
    config.seed = seed;
    config.point_radius = scene.manifest.point_radius;
    const FitResult result = fit_scene(scene.mesh, split, views, config);

    Checkpoint ckpt;
    ckpt.fg = result.fg;
    ckpt.bg = result.bg;
    ckpt.head = result.head;
    ckpt.split = result.split;
    save_checkpoint(out_path, ckpt);

    if (!trace_path.empty()) {
        std::ofstream trace(trace_path, std::ios::trunc);
        if (!trace) throw IoError("cannot open " + trace_path + " for writing");
        trace << "epoch,loss\n";
        char buf[64];
        for (std::size_t i = 0; i < result.loss_trace.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, result.loss_trace[i]);
            trace << buf;
        }
        if (!trace.flush()) throw IoError("cannot write " + trace_path);
    }

    std::printf("fit: %d epochs over %zu views, final loss %.6g\n", epochs, views.size(),
                result.loss_trace.empty() ? 0.0 : result.loss_trace.back());
    return 0;
}

int run_render(const std::string& scene_path, const std::string& ckpt_path, int camera_id,
               const std::string& out_path) {
    const Scene scene = load_scene(scene_path);
    const Checkpoint ckpt = load_checkpoint(ckpt_path);
    const PosedImage& view = find_view(scene, camera_id);
    const Image img = render_view(scene.mesh, ckpt.split, ckpt.fg, ckpt.bg, ckpt.head, view.cam,
                                  scene.manifest.point_radius);
    write_png(out_path, img);
    return 0;
}

int run_split(const std::string& scene_path) {
    const Scene scene = load_scene(scene_path);
    const SceneSplit split = scene_split(scene);
    const MeshPartition parts = partition_mesh(scene.mesh, split);
    std::printf("center %.6f %.6f %.6f\n", split.center.x(), split.center.y(), split.center.z());
    std::printf("radius %.6f\n", split.radius);
    std::printf("fg_faces %zu\n", parts.fg.mesh.faces.size());
    std::printf("bg_faces %zu\n", parts.bg.mesh.faces.size());
    return 0;
}

int run_sample_cameras(const std::string& scene_path, int count, std::uint64_t seed,
                       const std::string& out_path) {
    const Scene scene = load_scene(scene_path);
    const SceneSplit split = scene_split(scene);
    std::vector<Camera> cams;
    cams.reserve(scene.views.size());
    for (const auto& view : scene.views) cams.push_back(view.cam);
    const CameraStats stats = compute_camera_stats(cams, split.center, scene.manifest.up);

    Rng rng(seed);
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < count; ++i) {
        const CameraPose pose = sample_augmented_camera(split, stats, rng);
        nlohmann::json entry;
        entry["id"] = i;
        auto& r = entry["R"] = nlohmann::json::array();
        for (int row = 0; row < 3; ++row)
            for (int col = 0; col < 3; ++col) r.push_back(pose.R(row, col));
        entry["T"] = {pose.T.x(), pose.T.y(), pose.T.z()};
        const Eigen::Vector3d p = pose.position();
        entry["position"] = {p.x(), p.y(), p.z()};
        out.push_back(std::move(entry));
    }

    std::ofstream f(out_path, std::ios::trunc);
    if (!f) throw IoError("cannot open " + out_path + " for writing");
    f << out.dump(2) << "\n";
    if (!f.flush()) throw IoError("cannot write " + out_path);
    std::printf("sampled %d cameras\n", count);
    return 0;
}

int run_metrics(const std::string& pred_path, const std::string& gt_path) {
    const Image pred = read_png(pred_path);
    const Image gt = read_png(gt_path);
    const double p = psnr(pred, gt);
    if (std::isinf(p))
        std::printf("PSNR inf\n");
    else
        std::printf("PSNR %.6f\n", p);
    std::printf("SSIM %.6f\n", ssim(pred, gt));
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Per-scene neural descriptor fitting and rendering"};
    app.require_subcommand(1);

    std::string scene_path, out_path, ckpt_path, trace_path, pred_path, gt_path;
    int epochs = 100;
    int camera_id = 0;
    int count = 0;
    std::uint64_t seed = 0;

    auto* fit = app.add_subcommand("fit", "Fit descriptors and render head to a scene");
    fit->add_option("--scene", scene_path, "Scene manifest JSON")->required();
    fit->add_option("--epochs", epochs, "Training epochs");
    fit->add_option("--seed", seed, "RNG seed");
    fit->add_option("--out", out_path, "Output checkpoint path")->required();
    fit->add_option("--loss-trace", trace_path, "Optional CSV loss trace path");

    auto* render = app.add_subcommand("render", "Render a training camera from a checkpoint");
    render->add_option("--scene", scene_path, "Scene manifest JSON")->required();
    render->add_option("--checkpoint", ckpt_path, "Checkpoint path")->required();
    render->add_option("--camera-id", camera_id, "Posed image id to render")->required();
    render->add_option("--out", out_path, "Output PNG path")->required();

    auto* split = app.add_subcommand("split", "Print the scene split and partition sizes");
    split->add_option("--scene", scene_path, "Scene manifest JSON")->required();

    auto* sample = app.add_subcommand("sample-cameras", "Sample augmented camera poses");
    sample->add_option("--scene", scene_path, "Scene manifest JSON")->required();
    sample->add_option("--count", count, "Number of poses")->required();
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--out", out_path, "Output JSON path")->required();

    auto* metrics = app.add_subcommand("metrics", "PSNR and SSIM between two PNGs");
    metrics->add_option("--pred", pred_path, "Predicted image")->required();
    metrics->add_option("--gt", gt_path, "Ground-truth image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (fit->parsed()) return run_fit(scene_path, epochs, seed, out_path, trace_path);
        if (render->parsed()) return run_render(scene_path, ckpt_path, camera_id, out_path);
        if (split->parsed()) return run_split(scene_path);
        if (sample->parsed()) return run_sample_cameras(scene_path, count, seed, out_path);
        if (metrics->parsed()) return run_metrics(pred_path, gt_path);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}

}  // namespace lumi
