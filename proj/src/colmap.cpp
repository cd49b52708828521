// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/colmap.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <string_view>
#include <vector>

#include "io_util.hpp"

namespace lumi {

namespace {

std::vector<std::string_view> split_lines(const std::string& bytes) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string::npos) eol = bytes.size();
        std::string_view line(bytes.data() + pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (eol == bytes.size()) break;
        pos = eol + 1;
    }
    return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool skippable(std::string_view line) {
    for (char c : line)
        if (c != ' ' && c != '\t') return c == '#';
    return true;  // blank
}

double parse_double(std::string_view tok, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw ParseError(std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
}

std::int64_t parse_int(std::string_view tok, const char* what) {
    std::int64_t v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw ParseError(std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
}

struct Intrinsics {
    double fx = 0.0, fy = 0.0, cx = 0.0, cy = 0.0;
    int width = 0, height = 0;
};

std::map<std::int64_t, Intrinsics> parse_cameras(const std::string& bytes) {
    std::map<std::int64_t, Intrinsics> cams;
    for (std::string_view line : split_lines(bytes)) {
        if (skippable(line)) continue;
        const auto tok = split_ws(line);
        if (tok.size() < 4) throw ParseError("malformed camera line '" + std::string(line) + "'");
        const std::int64_t id = parse_int(tok[0], "camera id");
        const std::string_view model = tok[1];
        Intrinsics in;
        in.width = static_cast<int>(parse_int(tok[2], "camera width"));
        in.height = static_cast<int>(parse_int(tok[3], "camera height"));
        if (in.width <= 0 || in.height <= 0) throw ParseError("non-positive camera dimensions");
        if (model == "PINHOLE") {
            if (tok.size() != 8) throw ParseError("PINHOLE expects 4 parameters");
            in.fx = parse_double(tok[4], "fx");
            in.fy = parse_double(tok[5], "fy");
            in.cx = parse_double(tok[6], "cx");
            in.cy = parse_double(tok[7], "cy");
        } else if (model == "SIMPLE_PINHOLE") {
            if (tok.size() != 7) throw ParseError("SIMPLE_PINHOLE expects 3 parameters");
            in.fx = in.fy = parse_double(tok[4], "f");
            in.cx = parse_double(tok[5], "cx");
            in.cy = parse_double(tok[6], "cy");
        } else {
            throw UnsupportedCameraModel(std::string(model));
        }
        if (!cams.emplace(id, in).second)
            throw ParseError("duplicate camera id " + std::to_string(id));
    }
    return cams;
}

Eigen::Matrix3d quaternion_to_rotation(double w, double x, double y, double z) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (n < 1e-12) throw ParseError("zero-length quaternion");
    w /= n;
    x /= n;
    y /= n;
    z /= n;
    Eigen::Matrix3d r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
         2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
         2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
    return r;
}

}  // namespace

std::vector<PosedImage> load_colmap_cameras(const std::filesystem::path& cameras_txt,
                                            const std::filesystem::path& images_txt) {
    const auto cams = parse_cameras(read_file_bytes(cameras_txt));

    std::vector<PosedImage> images;
    const std::string bytes = read_file_bytes(images_txt);
    const auto lines = split_lines(bytes);
    std::size_t i = 0;
    while (i < lines.size()) {
        const std::string_view line = lines[i];
        ++i;
        if (skippable(line)) continue;
        const auto tok = split_ws(line);
        if (tok.size() < 10)
            throw ParseError("malformed image line '" + std::string(line) + "'");

        PosedImage img;
        img.image_id = static_cast<int>(parse_int(tok[0], "image id"));
        const double qw = parse_double(tok[1], "qw");
        const double qx = parse_double(tok[2], "qx");
        const double qy = parse_double(tok[3], "qy");
        const double qz = parse_double(tok[4], "qz");
        img.cam.T.x() = parse_double(tok[5], "tx");
        img.cam.T.y() = parse_double(tok[6], "ty");
        img.cam.T.z() = parse_double(tok[7], "tz");
        const std::int64_t camera_id = parse_int(tok[8], "camera id");

        // Image names may contain spaces; take everything after the 9th field.
        const char* name_start = tok[9].data();
        const char* line_end = line.data() + line.size();
        img.name.assign(name_start, static_cast<std::size_t>(line_end - name_start));
        while (!img.name.empty() && (img.name.back() == ' ' || img.name.back() == '\t'))
            img.name.pop_back();

        const auto it = cams.find(camera_id);
        if (it == cams.end())
            throw ParseError("image " + std::to_string(img.image_id) +
                             " references unknown camera " + std::to_string(camera_id));
        img.cam.R = quaternion_to_rotation(qw, qx, qy, qz);
        img.cam.fx = it->second.fx;
        img.cam.fy = it->second.fy;
        img.cam.cx = it->second.cx;
        img.cam.cy = it->second.cy;
        img.cam.width = it->second.width;
        img.cam.height = it->second.height;
        img.cam.validate();
        images.push_back(std::move(img));

        // The line after each pose lists 2D keypoints; skip it (may be blank).
        if (i < lines.size()) ++i;
    }
    return images;
}

}  // namespace lumi
