#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "nocsforge/core/error.hpp"

namespace nf {

/// Dense row-major image grid, origin top-left, u rightward, v downward.
template <typename T>
class Image {
public:
    Image() = default;
    Image(int height, int width) : h_(height), w_(width), data_(size_t(height) * width) {}
    Image(int height, int width, const T& fill)
        : h_(height), w_(width), data_(size_t(height) * width, fill) {}

    int height() const { return h_; }
    int width() const { return w_; }
    bool empty() const { return data_.empty(); }
    size_t size() const { return data_.size(); }

    T& operator()(int v, int u) { return data_[size_t(v) * w_ + u]; }
    const T& operator()(int v, int u) const { return data_[size_t(v) * w_ + u]; }

    bool in_bounds(int v, int u) const { return v >= 0 && v < h_ && u >= 0 && u < w_; }

    void fill(const T& value) { std::fill(data_.begin(), data_.end(), value); }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool same_shape(int height, int width) const { return h_ == height && w_ == width; }

    template <typename U>
    bool same_shape(const Image<U>& other) const {
        return h_ == other.height() && w_ == other.width();
    }

private:
    int h_ = 0;
    int w_ = 0;
    std::vector<T> data_;
};

template <typename T, typename U>
void require_same_shape(const Image<T>& a, const Image<U>& b, const char* what) {
    if (!a.same_shape(b))
        throw ShapeError(std::string(what) + ": grid dimensions disagree");
}

using GrayImage = Image<float>;
using ColorImage = Image<Eigen::Vector3f>;
using BoolImage = Image<uint8_t>;

}  // namespace nf
