// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/manifest.hpp"

#include <charconv>
#include <fstream>

#include <nlohmann/json.hpp>

#include "lumi/error.hpp"
#include "lumi/ply.hpp"
#include "lumi/png_io.hpp"

namespace lumi {

namespace {

using nlohmann::json;

void require_exists(const std::filesystem::path& p, const char* what) {
    std::error_code ec;
    if (!std::filesystem::exists(p, ec) || ec)
        throw IoError(std::string(what) + " '" + p.string() + "' does not exist");
}

Eigen::Vector3d parse_vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(std::string(what) + " must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

SceneManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("manifest " + path.string() + ": " + e.what());
    }

    SceneManifest m;
    try {
        const auto base = path.parent_path();
        m.mesh_path = base / j.at("mesh").get<std::string>();
        m.cameras_path = base / j.at("cameras_txt").get<std::string>();
        m.images_txt_path = base / j.at("images_txt").get<std::string>();
        m.images_dir = base / j.at("images_dir").get<std::string>();
        for (const auto& [key, value] : j.at("images").items()) {
            int id = 0;
            const auto res = std::from_chars(key.data(), key.data() + key.size(), id);
            if (res.ec != std::errc() || res.ptr != key.data() + key.size())
                throw ParseError("image key '" + key + "' is not an integer id");
            m.images[id] = value.get<std::string>();
        }
        if (j.contains("split")) {
            SceneSplit s;
            s.center = parse_vec3(j["split"].at("center"), "split center");
            s.radius = j["split"].at("radius").get<double>();
            if (!(s.radius > 0.0)) throw ParseError("split radius must be positive");
            m.split = s;
        }
        if (j.contains("up")) m.up = parse_vec3(j["up"], "up");
        if (j.contains("point_radius")) {
            m.point_radius = j["point_radius"].get<double>();
            if (!(m.point_radius > 0.0)) throw ParseError("point_radius must be positive");
        }
    } catch (const json::exception& e) {
        throw ParseError("manifest " + path.string() + ": " + e.what());
    }

    require_exists(m.mesh_path, "mesh");
    require_exists(m.cameras_path, "cameras_txt");
    require_exists(m.images_txt_path, "images_txt");
    for (const auto& [id, name] : m.images) require_exists(m.images_dir / name, "image");
    return m;
}

Scene load_scene(const std::filesystem::path& manifest_path) {
    Scene scene;
    scene.manifest = load_manifest(manifest_path);
    scene.mesh = load_ply(scene.manifest.mesh_path);
    scene.views = load_colmap_cameras(scene.manifest.cameras_path, scene.manifest.images_txt_path);
    return scene;
}

SceneSplit scene_split(const Scene& scene) {
    if (scene.manifest.split) return *scene.manifest.split;
    std::vector<Camera> cams;
    cams.reserve(scene.views.size());
    for (const auto& view : scene.views) cams.push_back(view.cam);
    return compute_scene_split(cams);
}

const PosedImage& find_view(const Scene& scene, int image_id) {
    for (const auto& view : scene.views)
        if (view.image_id == image_id) return view;
    throw IndexOutOfRange("no posed image with id " + std::to_string(image_id));
}

std::vector<TrainingView> load_training_views(const Scene& scene) {
    std::vector<TrainingView> views;
    views.reserve(scene.manifest.images.size());
    for (const auto& [id, name] : scene.manifest.images) {
        TrainingView tv;
        tv.cam = find_view(scene, id).cam;
        tv.target = read_png(scene.manifest.images_dir / name);
        views.push_back(std::move(tv));
    }
    return views;
}

}  // namespace lumi
