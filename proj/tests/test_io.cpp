// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <png.h>

#include "lumi/checkpoint.hpp"
#include "lumi/colmap.hpp"
#include "lumi/error.hpp"
#include "lumi/manifest.hpp"
#include "lumi/ply.hpp"
#include "lumi/png_io.hpp"
#include "support/scene_dir.hpp"

using namespace lumi;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

void write_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Low-level PNG writer so tests can produce bit depths and color types the
// production writer never emits.
void write_raw_png(const std::filesystem::path& path, int w, int h, int bit_depth, int color_type,
                   const std::vector<std::vector<unsigned char>>& rows,
                   const std::vector<png_color>& palette = {}) {
    FILE* fp = std::fopen(path.string().c_str(), "wb");
    REQUIRE(fp != nullptr);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    REQUIRE(png != nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(info != nullptr);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, fp);
    png_set_IHDR(png, info, w, h, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    if (!palette.empty())
        png_set_PLTE(png, info, const_cast<png_color*>(palette.data()),
                     static_cast<int>(palette.size()));
    png_write_info(png, info);
    for (const auto& row : rows)
        png_write_row(png, const_cast<png_bytep>(row.data()));
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

TriangleMesh tiny_mesh() {
    TriangleMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    mesh.faces = {{0, 1, 2}, {0, 2, 3}};
    return mesh;
}

}  // namespace

TEST_CASE("ascii ply with comments and extra properties parses exactly") {
    testing::TempDir dir("ply_ascii");
    const auto path = dir.path() / "tri.ply";
    write_text(path,
               "ply\n"
               "format ascii 1.0\n"
               "comment made by hand\n"
               "element vertex 3\n"
               "property float x\n"
               "property float y\n"
               "property float z\n"
               "property uchar red\n"
               "element face 1\n"
               "property list uchar int vertex_indices\n"
               "end_header\n"
               "0 0 0 255\n"
               "1.5 0 -2 0\n"
               "0 0.25 0 7\n"
               "3 0 1 2\n");
    const TriangleMesh mesh = load_ply(path);
    REQUIRE(mesh.vertex_count() == 3);
    REQUIRE(mesh.face_count() == 1);
    CHECK(mesh.vertices[1] == Eigen::Vector3d(1.5, 0.0, -2.0));
    CHECK(mesh.vertices[2] == Eigen::Vector3d(0.0, 0.25, 0.0));
    CHECK(mesh.faces[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("ascii ply skips unknown elements including list properties") {
    testing::TempDir dir("ply_skip");
    const auto path = dir.path() / "extra.ply";
    write_text(path,
               "ply\n"
               "format ascii 1.0\n"
               "element vertex 3\n"
               "property double x\n"
               "property double y\n"
               "property double z\n"
               "element edge 2\n"
               "property list uchar int verts\n"
               "property float weight\n"
               "element face 1\n"
               "property list uchar int vertex_index\n"
               "end_header\n"
               "0 0 0\n"
               "1 0 0\n"
               "0 1 0\n"
               "2 0 1 0.5\n"
               "3 0 1 2 0.25\n"
               "3 2 1 0\n");
    const TriangleMesh mesh = load_ply(path);
    REQUIRE(mesh.vertex_count() == 3);
    REQUIRE(mesh.face_count() == 1);
    CHECK(mesh.faces[0] == std::array<int, 3>{2, 1, 0});
}

TEST_CASE("binary float ply with an extra scalar property parses") {
    testing::TempDir dir("ply_binf");
    const auto path = dir.path() / "f32.ply";
    std::string header =
        "ply\nformat binary_little_endian 1.0\n"
        "element vertex 3\n"
        "property float x\nproperty float y\nproperty float z\nproperty float nx\n"
        "element face 1\nproperty list uchar int vertex_indices\nend_header\n";
    std::vector<unsigned char> bytes(header.begin(), header.end());
    const float verts[12] = {0, 0, 0, 9, 1, 0, 0, 9, 0, 1, 0, 9};
    const unsigned char* vp = reinterpret_cast<const unsigned char*>(verts);
    bytes.insert(bytes.end(), vp, vp + sizeof(verts));
    bytes.push_back(3);
    const int idx[3] = {0, 1, 2};
    const unsigned char* ip = reinterpret_cast<const unsigned char*>(idx);
    bytes.insert(bytes.end(), ip, ip + sizeof(idx));
    write_bytes(path, bytes);

    const TriangleMesh mesh = load_ply(path);
    REQUIRE(mesh.vertex_count() == 3);
    CHECK(mesh.vertices[1] == Eigen::Vector3d(1, 0, 0));
    CHECK(mesh.faces[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("ply round trips exactly in both encodings") {
    testing::TempDir dir("ply_rt");
    Rng rng(30);
    const TriangleMesh mesh = testing::random_mesh(rng, 20, 30, 2.0);
    for (bool binary : {true, false}) {
        const auto path = dir.path() / (binary ? "b.ply" : "a.ply");
        save_ply(path, mesh, binary);
        const TriangleMesh loaded = load_ply(path);
        REQUIRE(loaded.vertex_count() == mesh.vertex_count());
        REQUIRE(loaded.face_count() == mesh.face_count());
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
            CHECK(loaded.vertices[i] == mesh.vertices[i]);
        CHECK(loaded.faces == mesh.faces);
    }
}

TEST_CASE("ply rejects malformed inputs with typed errors") {
    testing::TempDir dir("ply_bad");

    const auto quad = dir.path() / "quad.ply";
    write_text(quad,
               "ply\nformat ascii 1.0\nelement vertex 4\n"
               "property float x\nproperty float y\nproperty float z\n"
               "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
               "0 0 0\n1 0 0\n1 1 0\n0 1 0\n"
               "4 0 1 2 3\n");
    CHECK_THROWS_AS(load_ply(quad), NonTriangleFace);

    const auto big_endian = dir.path() / "be.ply";
    write_text(big_endian, "ply\nformat binary_big_endian 1.0\nelement vertex 0\nend_header\n");
    CHECK_THROWS_AS(load_ply(big_endian), UnsupportedFormat);

    const auto not_ply = dir.path() / "no.ply";
    write_text(not_ply, "solid noise\n");
    CHECK_THROWS_AS(load_ply(not_ply), ParseError);

    const auto oob = dir.path() / "oob.ply";
    write_text(oob,
               "ply\nformat ascii 1.0\nelement vertex 3\n"
               "property float x\nproperty float y\nproperty float z\n"
               "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
               "0 0 0\n1 0 0\n0 1 0\n"
               "3 0 1 5\n");
    CHECK_THROWS_AS(load_ply(oob), ParseError);

    const auto trunc = dir.path() / "trunc.ply";
    save_ply(trunc, tiny_mesh(), true);
    auto bytes = read_bytes(trunc);
    bytes.resize(bytes.size() - 10);
    write_bytes(trunc, bytes);
    CHECK_THROWS_AS(load_ply(trunc), ParseError);

    CHECK_THROWS_AS(load_ply(dir.path() / "missing.ply"), IoError);
}

TEST_CASE("colmap text poses parse cameras, quaternions, and names") {
    testing::TempDir dir("colmap");
    const auto cameras = dir.path() / "cameras.txt";
    const auto images = dir.path() / "images.txt";
    write_text(cameras,
               "# Camera list\n"
               "1 PINHOLE 640 480 500 510 320 240\n"
               "2 SIMPLE_PINHOLE 64 64 70 32 32\n");
    const double s = std::sqrt(0.5);
    char buf[256];
    std::snprintf(buf, sizeof(buf), "2 %.17g %.17g 0 0 0.5 -1 2 2 with space.png\n", s, s);
    write_text(images, std::string("# Image list\n"
                                   "1 1 0 0 0 0.25 0 3 1 first.png\n"
                                   "\n") +
                           buf + "\n");

    const auto views = load_colmap_cameras(cameras, images);
    REQUIRE(views.size() == 2);

    CHECK(views[0].image_id == 1);
    CHECK(views[0].name == "first.png");
    CHECK(views[0].cam.fx == 500);
    CHECK(views[0].cam.fy == 510);
    CHECK(views[0].cam.cx == 320);
    CHECK(views[0].cam.cy == 240);
    CHECK(views[0].cam.width == 640);
    CHECK(views[0].cam.height == 480);
    CHECK((views[0].cam.R - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(views[0].cam.T == Eigen::Vector3d(0.25, 0, 3));

    CHECK(views[1].name == "with space.png");
    CHECK(views[1].cam.fx == 70);
    CHECK(views[1].cam.fy == 70);
    const Eigen::Matrix3d expected =
        Eigen::Quaterniond(s, s, 0.0, 0.0).normalized().toRotationMatrix();
    CHECK((views[1].cam.R - expected).norm() < 1e-12);
}

TEST_CASE("colmap loader rejects unsupported or inconsistent inputs") {
    testing::TempDir dir("colmap_bad");
    const auto cameras = dir.path() / "cameras.txt";
    const auto images = dir.path() / "images.txt";

    write_text(cameras, "1 RADIAL 640 480 500 320 240 0.1\n");
    write_text(images, "1 1 0 0 0 0 0 1 1 a.png\n\n");
    CHECK_THROWS_AS(load_colmap_cameras(cameras, images), UnsupportedCameraModel);

    write_text(cameras, "1 PINHOLE 640 480 500 510 320 240\n");
    write_text(images, "1 1 0 0 0 0 0 1 9 a.png\n\n");
    CHECK_THROWS_AS(load_colmap_cameras(cameras, images), ParseError);

    write_text(images, "1 0 0 0 0 0 0 1 1 a.png\n\n");
    CHECK_THROWS_AS(load_colmap_cameras(cameras, images), ParseError);

    write_text(images, "1 1 0 0 0 0 0 bad 1 a.png\n\n");
    CHECK_THROWS_AS(load_colmap_cameras(cameras, images), ParseError);
}

TEST_CASE("png round trip stays within quantization error") {
    testing::TempDir dir("png_rt");
    const auto path = dir.path() / "img.png";
    Rng rng(31);
    Image img(13, 9, 3);
    for (double& x : img.data) x = rng.uniform();
    write_png(path, img);
    const Image back = read_png(path);
    REQUIRE(back.width == 13);
    REQUIRE(back.height == 9);
    REQUIRE(back.channels == 3);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        CHECK(std::abs(back.data[i] - img.data[i]) <= 0.5 / 255.0 + 1e-9);

    Image extremes(2, 1, 3);
    extremes.data = {0, 0, 0, 1, 1, 1};
    write_png(path, extremes);
    const Image eb = read_png(path);
    for (int c = 0; c < 3; ++c) {
        CHECK(eb.at(0, 0, c) == 0.0);
        CHECK(eb.at(1, 0, c) == 1.0);
    }

    Image wild(2, 1, 3);
    wild.data = {-0.5, 2.0, 0.25, 1.0000001, -1e9, 0.5};
    write_png(path, wild);
    const Image wb = read_png(path);
    CHECK(wb.at(0, 0, 0) == 0.0);
    CHECK(wb.at(0, 0, 1) == 1.0);
    CHECK(wb.at(1, 0, 0) == 1.0);
    CHECK(wb.at(1, 0, 1) == 0.0);
}

TEST_CASE("png reader normalizes 16-bit, gray, palette, and alpha inputs") {
    testing::TempDir dir("png_kinds");

    const auto p16 = dir.path() / "rgb16.png";
    std::vector<unsigned char> row16;
    for (unsigned v : {0u, 32768u, 65535u})  // one pixel per channel value
        for (int c = 0; c < 3; ++c) {
            row16.push_back(static_cast<unsigned char>(v >> 8));
            row16.push_back(static_cast<unsigned char>(v & 0xff));
        }
    write_raw_png(p16, 3, 1, 16, PNG_COLOR_TYPE_RGB, {row16});
    const Image i16 = read_png(p16);
    REQUIRE(i16.width == 3);
    CHECK(i16.at(0, 0, 0) == 0.0);
    CHECK(i16.at(1, 0, 1) == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));
    CHECK(i16.at(2, 0, 2) == 1.0);

    const auto pg = dir.path() / "gray.png";
    write_raw_png(pg, 2, 1, 8, PNG_COLOR_TYPE_GRAY, {{0, 200}});
    const Image ig = read_png(pg);
    for (int c = 0; c < 3; ++c) {
        CHECK(ig.at(0, 0, c) == 0.0);
        CHECK(ig.at(1, 0, c) == doctest::Approx(200.0 / 255.0).epsilon(1e-12));
    }

    const auto pa = dir.path() / "rgba.png";
    write_raw_png(pa, 1, 1, 8, PNG_COLOR_TYPE_RGB_ALPHA, {{10, 20, 30, 40}});
    const Image ia = read_png(pa);
    CHECK(ia.at(0, 0, 0) == doctest::Approx(10.0 / 255.0).epsilon(1e-12));
    CHECK(ia.at(0, 0, 2) == doctest::Approx(30.0 / 255.0).epsilon(1e-12));

    const auto pp = dir.path() / "pal.png";
    const std::vector<png_color> palette = {{255, 0, 0}, {0, 128, 255}};
    write_raw_png(pp, 2, 1, 8, PNG_COLOR_TYPE_PALETTE, {{0, 1}}, palette);
    const Image ip = read_png(pp);
    CHECK(ip.at(0, 0, 0) == 1.0);
    CHECK(ip.at(0, 0, 1) == 0.0);
    CHECK(ip.at(1, 0, 1) == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
    CHECK(ip.at(1, 0, 2) == 1.0);
}

TEST_CASE("png reader rejects corrupt files") {
    testing::TempDir dir("png_bad");
    const auto path = dir.path() / "junk.png";
    write_text(path, "definitely not a png");
    CHECK_THROWS_AS(read_png(path), ParseError);

    const auto trunc = dir.path() / "trunc.png";
    Image img(8, 8, 3);
    write_png(trunc, img);
    auto bytes = read_bytes(trunc);
    bytes.resize(bytes.size() / 2);
    write_bytes(trunc, bytes);
    CHECK_THROWS_AS(read_png(trunc), ParseError);

    CHECK_THROWS_AS(read_png(dir.path() / "missing.png"), IoError);

    Image bad_channels(4, 4, 1);
    CHECK_THROWS_AS(write_png(dir.path() / "c1.png", bad_channels), DimensionMismatch);
}

TEST_CASE("checkpoints round trip exactly after one quantization") {
    testing::TempDir dir("ckpt");
    const auto path = dir.path() / "model.ckpt";

    Rng rng(32);
    Checkpoint ckpt;
    ckpt.fg = DescriptorSet(5);
    ckpt.bg = DescriptorSet(3);
    for (double& x : ckpt.fg.data) x = rng.normal();
    for (double& x : ckpt.bg.data) x = rng.normal();
    ckpt.head = RenderHeadParams(4);
    for (double& x : ckpt.head.w_fg) x = rng.normal();
    for (double& x : ckpt.head.w_bg) x = rng.normal();
    for (double& x : ckpt.head.w_out) x = rng.normal();
    for (double& x : ckpt.head.b_out) x = rng.normal();
    ckpt.split = {{0.125, -3.0, 2.5e-3}, 7.25};

    save_checkpoint(path, ckpt);
    const Checkpoint once = load_checkpoint(path);
    REQUIRE(once.fg.vertex_count == 5);
    REQUIRE(once.bg.vertex_count == 3);
    REQUIRE(once.head.hidden == 4);

    // Tensor payloads are 32-bit, so the first load quantizes...
    for (std::size_t i = 0; i < ckpt.fg.data.size(); ++i)
        CHECK(once.fg.data[i] == static_cast<double>(static_cast<float>(ckpt.fg.data[i])));
    // ...while the split is stored at full precision.
    CHECK(once.split.center == ckpt.split.center);
    CHECK(once.split.radius == ckpt.split.radius);

    // A second cycle is bitwise stable.
    save_checkpoint(path, once);
    const Checkpoint twice = load_checkpoint(path);
    CHECK(twice.fg.data == once.fg.data);
    CHECK(twice.bg.data == once.bg.data);
    CHECK(twice.head.w_fg == once.head.w_fg);
    CHECK(twice.head.w_bg == once.head.w_bg);
    CHECK(twice.head.w_out == once.head.w_out);
    CHECK(twice.head.b_out == once.head.b_out);
}

TEST_CASE("checkpoint loader rejects corrupt files with typed errors") {
    testing::TempDir dir("ckpt_bad");
    const auto path = dir.path() / "model.ckpt";
    Checkpoint ckpt;
    ckpt.fg = DescriptorSet(2);
    ckpt.bg = DescriptorSet(2);
    ckpt.head = RenderHeadParams(2);
    ckpt.split = {{0, 0, 0}, 1.0};
    save_checkpoint(path, ckpt);
    const auto good = read_bytes(path);

    auto bad_magic = good;
    bad_magic[0] = 'X';
    write_bytes(path, bad_magic);
    CHECK_THROWS_AS(load_checkpoint(path), ParseError);

    auto future = good;
    future[4] = 2;  // little-endian version field
    write_bytes(path, future);
    CHECK_THROWS_AS(load_checkpoint(path), VersionMismatch);

    auto trunc = good;
    trunc.resize(trunc.size() - 7);
    write_bytes(path, trunc);
    CHECK_THROWS_AS(load_checkpoint(path), ParseError);

    auto trailing = good;
    trailing.push_back(0);
    write_bytes(path, trailing);
    CHECK_THROWS_AS(load_checkpoint(path), ParseError);

    CHECK_THROWS_AS(load_checkpoint(dir.path() / "missing.ckpt"), IoError);
}

TEST_CASE("scene manifests load, resolve paths, and validate") {
    testing::TempDir dir("scene");
    const auto scene_data = testing::cube_scene(3, 16);
    const auto manifest_path = testing::write_scene_dir(dir.path(), scene_data);

    const Scene scene = load_scene(manifest_path);
    REQUIRE(scene.views.size() == 3);
    CHECK(scene.mesh.vertex_count() == scene_data.mesh.vertex_count());
    CHECK(scene.manifest.point_radius == 0.006);
    CHECK_FALSE(scene.manifest.split.has_value());

    // No override: the split comes from the camera positions.
    const SceneSplit computed = scene_split(scene);
    std::vector<Camera> cams;
    for (const auto& v : scene.views) cams.push_back(v.cam);
    const SceneSplit direct = compute_scene_split(cams);
    CHECK(computed.center == direct.center);
    CHECK(computed.radius == direct.radius);

    CHECK(find_view(scene, 2).image_id == 2);
    CHECK_THROWS_AS(find_view(scene, 99), IndexOutOfRange);

    const auto views = load_training_views(scene);
    REQUIRE(views.size() == 3);
    for (const auto& v : views) {
        CHECK(v.target.width == v.cam.width);
        CHECK(v.target.height == v.cam.height);
        CHECK(v.target.channels == 3);
    }

    // With an override the manifest wins.
    testing::TempDir dir2("scene_split");
    const SceneSplit forced{{0.5, 0.0, 0.0}, 9.0};
    const auto manifest2 = testing::write_scene_dir(dir2.path(), scene_data, forced, 0.01);
    const Scene scene2 = load_scene(manifest2);
    REQUIRE(scene2.manifest.split.has_value());
    CHECK(scene_split(scene2).radius == 9.0);
    CHECK(scene2.manifest.point_radius == 0.01);
}

TEST_CASE("manifest errors are typed and name the problem") {
    testing::TempDir dir("manifest_bad");
    const auto path = dir.path() / "manifest.json";

    write_text(path, "{ not json");
    CHECK_THROWS_AS(load_manifest(path), ParseError);

    write_text(path, R"({"mesh": "mesh.ply", "cameras_txt": "c.txt"})");
    CHECK_THROWS_AS(load_manifest(path), ParseError);

    write_text(path, R"({"mesh": "mesh.ply", "cameras_txt": "c.txt", "images_txt": "i.txt",
                         "images_dir": "images", "images": {"1": "a.png"}})");
    CHECK_THROWS_AS(load_manifest(path), IoError);

    CHECK_THROWS_AS(load_manifest(dir.path() / "nope.json"), IoError);
}

TEST_CASE("random byte mutations never escape the typed error hierarchy") {
    testing::TempDir dir("fuzz");

    // Seed corpus: one valid specimen per format.
    const auto scene_data = testing::cube_scene(2, 16);
    const auto manifest_path = testing::write_scene_dir(dir.path(), scene_data);
    const auto ply_path = dir.path() / "mesh.ply";
    const auto cameras_path = dir.path() / "cameras.txt";
    const auto images_path = dir.path() / "images.txt";
    const auto png_path = dir.path() / "images" / "view_1.png";
    const auto ckpt_path = dir.path() / "seed.ckpt";
    Checkpoint ckpt;
    ckpt.fg = DescriptorSet(4);
    ckpt.bg = DescriptorSet(2);
    ckpt.head = RenderHeadParams(3);
    ckpt.split = {{0, 0, 0}, 2.0};
    save_checkpoint(ckpt_path, ckpt);

    struct Specimen {
        std::vector<unsigned char> bytes;
        std::function<void(const std::filesystem::path&)> load;
    };
    const std::vector<unsigned char> cam_bytes = read_bytes(cameras_path);
    const std::vector<unsigned char> img_bytes = read_bytes(images_path);
    std::vector<Specimen> specimens;
    specimens.push_back({read_bytes(ply_path), [](const auto& p) { load_ply(p); }});
    specimens.push_back({cam_bytes, [&](const auto& p) { load_colmap_cameras(p, images_path); }});
    specimens.push_back({img_bytes, [&](const auto& p) { load_colmap_cameras(cameras_path, p); }});
    specimens.push_back({read_bytes(png_path), [](const auto& p) { read_png(p); }});
    specimens.push_back({read_bytes(ckpt_path), [](const auto& p) { load_checkpoint(p); }});
    specimens.push_back({read_bytes(manifest_path), [](const auto& p) { load_manifest(p); }});

    Rng rng(33);
    const auto mutant_path = dir.path() / "mutant.bin";
    int unexpected = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto& spec = specimens[t % specimens.size()];
        auto bytes = spec.bytes;
        if (!bytes.empty() && rng.uniform() < 0.2)
            bytes.resize(rng.uniform_index(bytes.size() + 1));
        const int edits = 1 + static_cast<int>(rng.uniform_index(8));
        for (int e = 0; e < edits && !bytes.empty(); ++e)
            bytes[rng.uniform_index(bytes.size())] =
                static_cast<unsigned char>(rng.uniform_index(256));
        write_bytes(mutant_path, bytes);
        try {
            spec.load(mutant_path);
        } catch (const Error&) {
            // Typed rejection is the expected outcome.
        } catch (...) {
            ++unexpected;
        }
    }
    CHECK(unexpected == 0);
}
