// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/ply.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string_view>
#include <vector>

#include "io_util.hpp"

namespace lumi {

namespace {

enum class Scalar { I8, U8, I16, U16, I32, U32, F32, F64 };

Scalar scalar_type(std::string_view name) {
    if (name == "char" || name == "int8") return Scalar::I8;
    if (name == "uchar" || name == "uint8") return Scalar::U8;
    if (name == "short" || name == "int16") return Scalar::I16;
    if (name == "ushort" || name == "uint16") return Scalar::U16;
    if (name == "int" || name == "int32") return Scalar::I32;
    if (name == "uint" || name == "uint32") return Scalar::U32;
    if (name == "float" || name == "float32") return Scalar::F32;
    if (name == "double" || name == "float64") return Scalar::F64;
    throw ParseError("unknown ply scalar type '" + std::string(name) + "'");
}

struct Property {
    std::string name;
    bool is_list = false;
    Scalar count_type = Scalar::U8;  // list only
    Scalar value_type = Scalar::F32;
};

struct Element {
    std::string name;
    std::uint64_t count = 0;
    std::vector<Property> properties;
};

struct Header {
    bool binary = false;
    std::vector<Element> elements;
    std::size_t body_offset = 0;
};

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

Header parse_header(const std::string& bytes) {
    Header h;
    std::size_t pos = 0;
    bool first = true;
    bool saw_format = false;
    while (true) {
        const std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string::npos) throw ParseError("ply header missing end_header");
        std::string_view line(bytes.data() + pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;

        if (first) {
            if (line != "ply") throw ParseError("not a ply file");
            first = false;
            continue;
        }
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok[0] == "comment" || tok[0] == "obj_info") continue;
        if (tok[0] == "format") {
            if (tok.size() < 2) throw ParseError("malformed format line");
            if (tok[1] == "ascii") h.binary = false;
            else if (tok[1] == "binary_little_endian") h.binary = true;
            else if (tok[1] == "binary_big_endian")
                throw UnsupportedFormat("big-endian ply");
            else
                throw ParseError("unknown ply format '" + std::string(tok[1]) + "'");
            saw_format = true;
            continue;
        }
        if (tok[0] == "element") {
            if (tok.size() != 3) throw ParseError("malformed element line");
            Element e;
            e.name = std::string(tok[1]);
            const auto res = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), e.count);
            if (res.ec != std::errc() || res.ptr != tok[2].data() + tok[2].size())
                throw ParseError("bad element count '" + std::string(tok[2]) + "'");
            h.elements.push_back(std::move(e));
            continue;
        }
        if (tok[0] == "property") {
            if (h.elements.empty()) throw ParseError("property before any element");
            Property p;
            if (tok.size() >= 2 && tok[1] == "list") {
                if (tok.size() != 5) throw ParseError("malformed list property line");
                p.is_list = true;
                p.count_type = scalar_type(tok[2]);
                if (p.count_type == Scalar::F32 || p.count_type == Scalar::F64)
                    throw ParseError("list count must be an integer type");
                p.value_type = scalar_type(tok[3]);
                p.name = std::string(tok[4]);
            } else {
                if (tok.size() != 3) throw ParseError("malformed property line");
                p.value_type = scalar_type(tok[1]);
                p.name = std::string(tok[2]);
            }
            h.elements.back().properties.push_back(std::move(p));
            continue;
        }
        if (tok[0] == "end_header") {
            if (!saw_format) throw ParseError("ply header missing format line");
            h.body_offset = pos;
            return h;
        }
        throw ParseError("unknown header keyword '" + std::string(tok[0]) + "'");
    }
}

std::size_t scalar_size(Scalar s) {
    switch (s) {
        case Scalar::I8:
        case Scalar::U8: return 1;
        case Scalar::I16:
        case Scalar::U16: return 2;
        case Scalar::I32:
        case Scalar::U32: return 4;
        case Scalar::F32: return 4;
        case Scalar::F64: return 8;
    }
    return 0;
}

double read_binary_scalar(ByteReader& r, Scalar s) {
    switch (s) {
        case Scalar::I8: return static_cast<double>(r.read<std::int8_t>());
        case Scalar::U8: return static_cast<double>(r.read<std::uint8_t>());
        case Scalar::I16: return static_cast<double>(r.read<std::int16_t>());
        case Scalar::U16: return static_cast<double>(r.read<std::uint16_t>());
        case Scalar::I32: return static_cast<double>(r.read<std::int32_t>());
        case Scalar::U32: return static_cast<double>(r.read<std::uint32_t>());
        case Scalar::F32: return static_cast<double>(r.read<float>());
        case Scalar::F64: return r.read<double>();
    }
    return 0.0;
}

/// Whitespace-token reader for ascii bodies; newline-agnostic on purpose so
/// odd line breaks in otherwise valid files still parse.
class TokenReader {
public:
    TokenReader(const char* data, std::size_t size) : data_(data), size_(size) {}

    std::string_view next() {
        while (pos_ < size_ && std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        if (pos_ >= size_) throw ParseError("truncated ascii ply body");
        const std::size_t start = pos_;
        while (pos_ < size_ && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        return {data_ + start, pos_ - start};
    }

    double next_double() {
        const auto tok = next();
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw ParseError("bad number '" + std::string(tok) + "'");
        return v;
    }

    std::int64_t next_int() {
        const auto tok = next();
        std::int64_t v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw ParseError("bad integer '" + std::string(tok) + "'");
        return v;
    }

private:
    const char* data_ = nullptr;
    std::size_t size_ = 0;
    std::size_t pos_ = 0;
};

constexpr std::uint64_t kReserveCap = 1u << 20;

std::int64_t checked_list_count(double raw) {
    const auto n = static_cast<std::int64_t>(raw);
    if (n < 0 || static_cast<double>(n) != raw) throw ParseError("bad list count");
    return n;
}

}  // namespace

TriangleMesh load_ply(const std::filesystem::path& path) {
    const std::string bytes = read_file_bytes(path);
    const Header header = parse_header(bytes);

    TriangleMesh mesh;
    ByteReader bin(bytes.data() + header.body_offset, bytes.size() - header.body_offset);
    TokenReader ascii(bytes.data() + header.body_offset, bytes.size() - header.body_offset);

    for (const Element& elem : header.elements) {
        const bool is_vertex = elem.name == "vertex";
        const bool is_face = elem.name == "face";

        int ix = -1, iy = -1, iz = -1, iface = -1;
        for (std::size_t p = 0; p < elem.properties.size(); ++p) {
            const Property& prop = elem.properties[p];
            if (is_vertex && !prop.is_list) {
                if (prop.name == "x") ix = static_cast<int>(p);
                if (prop.name == "y") iy = static_cast<int>(p);
                if (prop.name == "z") iz = static_cast<int>(p);
            }
            if (is_face && prop.is_list &&
                (prop.name == "vertex_indices" || prop.name == "vertex_index"))
                iface = static_cast<int>(p);
        }
        if (is_vertex && (ix < 0 || iy < 0 || iz < 0))
            throw ParseError("vertex element lacks x/y/z properties");
        if (is_face && iface >= 0 && elem.count > 0)
            mesh.faces.reserve(static_cast<std::size_t>(std::min(elem.count, kReserveCap)));
        if (is_vertex)
            mesh.vertices.reserve(static_cast<std::size_t>(std::min(elem.count, kReserveCap)));

        for (std::uint64_t row = 0; row < elem.count; ++row) {
            Eigen::Vector3d v = Eigen::Vector3d::Zero();
            std::array<int, 3> face{};
            for (std::size_t p = 0; p < elem.properties.size(); ++p) {
                const Property& prop = elem.properties[p];
                if (prop.is_list) {
                    std::int64_t count;
                    if (header.binary)
                        count = checked_list_count(read_binary_scalar(bin, prop.count_type));
                    else
                        count = ascii.next_int();
                    if (count < 0) throw ParseError("negative list count");
                    if (static_cast<int>(p) == iface) {
                        if (count != 3)
                            throw NonTriangleFace("face " + std::to_string(row) + " has " +
                                                  std::to_string(count) + " vertices");
                        for (int k = 0; k < 3; ++k) {
                            const double raw = header.binary
                                                   ? read_binary_scalar(bin, prop.value_type)
                                                   : static_cast<double>(ascii.next_int());
                            const auto idx = static_cast<std::int64_t>(raw);
                            if (static_cast<double>(idx) != raw || idx < 0 ||
                                idx >= static_cast<std::int64_t>(mesh.vertices.size()))
                                throw ParseError("face " + std::to_string(row) +
                                                 " references missing vertex");
                            face[k] = static_cast<int>(idx);
                        }
                    } else if (header.binary) {
                        bin.skip(static_cast<std::size_t>(count) * scalar_size(prop.value_type));
                    } else {
                        for (std::int64_t k = 0; k < count; ++k) ascii.next();
                    }
                } else {
                    const double value =
                        header.binary ? read_binary_scalar(bin, prop.value_type) : ascii.next_double();
                    if (static_cast<int>(p) == ix) v.x() = value;
                    else if (static_cast<int>(p) == iy) v.y() = value;
                    else if (static_cast<int>(p) == iz) v.z() = value;
                }
            }
            if (is_vertex) mesh.vertices.push_back(v);
            if (is_face && iface >= 0) mesh.faces.push_back(face);
        }
    }
    return mesh;
}

void save_ply(const std::filesystem::path& path, const TriangleMesh& mesh, bool binary) {
    std::string out;
    out += "ply\n";
    out += binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n";
    out += "element vertex " + std::to_string(mesh.vertices.size()) + "\n";
    out += "property double x\nproperty double y\nproperty double z\n";
    out += "element face " + std::to_string(mesh.faces.size()) + "\n";
    out += "property list uchar int vertex_indices\n";
    out += "end_header\n";

    if (binary) {
        ByteWriter w;
        for (const auto& v : mesh.vertices) {
            w.write(v.x());
            w.write(v.y());
            w.write(v.z());
        }
        for (const auto& f : mesh.faces) {
            w.write<std::uint8_t>(3);
            for (int k = 0; k < 3; ++k) w.write(static_cast<std::int32_t>(f[k]));
        }
        out += w.bytes();
    } else {
        char buf[96];
        for (const auto& v : mesh.vertices) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
            out += buf;
        }
        for (const auto& f : mesh.faces) {
            std::snprintf(buf, sizeof buf, "3 %d %d %d\n", f[0], f[1], f[2]);
            out += buf;
        }
    }
    write_file_bytes(path, out);
}

}  // namespace lumi
