// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/checkpoint.hpp"

#include <string>
#include <vector>

#include "io_util.hpp"

namespace lumi {

namespace {

constexpr char kMagic[4] = {'N', 'M', 'B', 'G'};

void write_f32_block(ByteWriter& w, const std::vector<double>& data) {
    for (double x : data) w.write(static_cast<float>(x));
}

void write_matrix(ByteWriter& w, const std::vector<double>& data, std::uint64_t rows,
                  std::uint64_t cols) {
    w.write(rows);
    w.write(cols);
    write_f32_block(w, data);
}

void read_f32_block(ByteReader& r, std::vector<double>& out, std::uint64_t count) {
    if (count > r.remaining() / sizeof(float))
        throw ParseError("tensor of " + std::to_string(count) + " floats exceeds file size");
    out.resize(static_cast<std::size_t>(count));
    for (auto& x : out) x = static_cast<double>(r.read<float>());
}

DescriptorSet read_descriptors(ByteReader& r, const char* which) {
    const auto n = r.read<std::uint64_t>();
    const auto coeffs = r.read<std::uint64_t>();
    const auto channels = r.read<std::uint64_t>();
    if (coeffs != DescriptorSet::kCoeffs || channels != DescriptorSet::kChannels)
        throw ParseError(std::string(which) + " descriptor dims " + std::to_string(coeffs) + "x" +
                         std::to_string(channels) + ", expected 9x8");
    if (n > (std::uint64_t(1) << 31))
        throw ParseError(std::string(which) + " descriptor count " + std::to_string(n) +
                         " is implausibly large");
    DescriptorSet d;
    d.vertex_count = static_cast<int>(n);
    read_f32_block(r, d.data, n * DescriptorSet::kCoeffs * DescriptorSet::kChannels);
    return d;
}

std::vector<double> read_matrix(ByteReader& r, std::uint64_t expect_rows, std::uint64_t expect_cols,
                                const char* which) {
    const auto rows = r.read<std::uint64_t>();
    const auto cols = r.read<std::uint64_t>();
    if (rows != expect_rows || cols != expect_cols)
        throw ParseError(std::string(which) + " is " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", expected " + std::to_string(expect_rows) + "x" +
                         std::to_string(expect_cols));
    std::vector<double> data;
    read_f32_block(r, data, rows * cols);
    return data;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    ByteWriter w;
    w.write_raw(kMagic, 4);
    w.write(ckpt.version);

    for (const DescriptorSet* d : {&ckpt.fg, &ckpt.bg}) {
        w.write(static_cast<std::uint64_t>(d->vertex_count));
        w.write(static_cast<std::uint64_t>(DescriptorSet::kCoeffs));
        w.write(static_cast<std::uint64_t>(DescriptorSet::kChannels));
        write_f32_block(w, d->data);
    }

    const auto h = static_cast<std::uint64_t>(ckpt.head.hidden);
    write_matrix(w, ckpt.head.w_fg, kHeadInputChannels, h);
    write_matrix(w, ckpt.head.w_bg, kHeadInputChannels, h);
    write_matrix(w, ckpt.head.w_out, 2 * h, 3);
    write_matrix(w, ckpt.head.b_out, 3, 1);

    w.write(ckpt.split.center.x());
    w.write(ckpt.split.center.y());
    w.write(ckpt.split.center.z());
    w.write(ckpt.split.radius);

    write_file_bytes(path, w.bytes());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    const std::string bytes = read_file_bytes(path);
    ByteReader r(bytes);

    char magic[4];
    r.require(4);
    for (char& c : magic) c = r.read<char>();
    if (std::memcmp(magic, kMagic, 4) != 0) throw ParseError("bad checkpoint magic");

    Checkpoint ckpt;
    ckpt.version = r.read<std::uint32_t>();
    if (ckpt.version != kCheckpointVersion)
        throw VersionMismatch("checkpoint version " + std::to_string(ckpt.version) +
                              ", this build reads version " + std::to_string(kCheckpointVersion));

    ckpt.fg = read_descriptors(r, "fg");
    ckpt.bg = read_descriptors(r, "bg");

    // Hidden width comes from the stored w_fg shape.
    const auto rows = r.read<std::uint64_t>();
    const auto cols = r.read<std::uint64_t>();
    if (rows != kHeadInputChannels)
        throw ParseError("w_fg has " + std::to_string(rows) + " rows, expected " +
                         std::to_string(kHeadInputChannels));
    if (cols == 0 || cols > 65536) throw ParseError("implausible hidden width " + std::to_string(cols));
    ckpt.head.hidden = static_cast<int>(cols);
    read_f32_block(r, ckpt.head.w_fg, rows * cols);
    ckpt.head.w_bg = read_matrix(r, kHeadInputChannels, cols, "w_bg");
    ckpt.head.w_out = read_matrix(r, 2 * cols, 3, "w_out");
    ckpt.head.b_out = read_matrix(r, 3, 1, "b_out");

    ckpt.split.center.x() = r.read<double>();
    ckpt.split.center.y() = r.read<double>();
    ckpt.split.center.z() = r.read<double>();
    ckpt.split.radius = r.read<double>();

    if (!r.at_end()) throw ParseError("trailing bytes after checkpoint payload");
    return ckpt;
}

}  // namespace lumi
