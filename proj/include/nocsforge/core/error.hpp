#pragma once

#include <stdexcept>
#include <string>

namespace nf {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid dimensions of paired maps disagree.
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// A point cloud arrived in the wrong coordinate frame.
struct FrameError : Error {
    explicit FrameError(const std::string& msg) : Error(msg) {}
};

// Invalid configuration or argument values.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// File level failures: missing, corrupt, checksum mismatch.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// A view that projects to nothing, a degenerate point configuration, etc.
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

}  // namespace nf
