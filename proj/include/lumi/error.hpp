// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lumi {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

class UnsupportedFormat : public Error {
public:
    explicit UnsupportedFormat(const std::string& msg) : Error("unsupported format: " + msg) {}
};

class NonTriangleFace : public Error {
public:
    explicit NonTriangleFace(const std::string& msg) : Error("non-triangle face: " + msg) {}
};

class UnsupportedCameraModel : public Error {
public:
    explicit UnsupportedCameraModel(const std::string& msg) : Error("unsupported camera model: " + msg) {}
};

class VersionMismatch : public Error {
public:
    explicit VersionMismatch(const std::string& msg) : Error("version mismatch: " + msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("i/o error: " + msg) {}
};

class DegenerateSplit : public Error {
public:
    explicit DegenerateSplit(const std::string& msg) : Error("degenerate split: " + msg) {}
};

class DegenerateLookAt : public Error {
public:
    explicit DegenerateLookAt(const std::string& msg) : Error("degenerate look-at: " + msg) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& msg) : Error("index out of range: " + msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

class ImageTooSmall : public Error {
public:
    explicit ImageTooSmall(const std::string& msg) : Error("image too small: " + msg) {}
};

class NonFiniteLoss : public Error {
public:
    explicit NonFiniteLoss(const std::string& msg) : Error("non-finite loss: " + msg) {}
};

} // namespace lumi
