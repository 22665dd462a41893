#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nf::png {

/// Minimal PNG support: 8-bit grayscale/RGB and 16-bit grayscale,
/// non-interlaced. Encoding always uses filter type None with a fixed
/// zlib level, so outputs are reproducible byte for byte.
struct PngImage {
    int width = 0;
    int height = 0;
    int channels = 0;      // 1 or 3
    int bit_depth = 0;     // 8 or 16
    // Row-major samples; 16-bit values are stored natively (not byte pairs).
    std::vector<uint16_t> samples;

    size_t index(int v, int u, int c = 0) const {
        return (size_t(v) * width + u) * channels + c;
    }
};

std::vector<uint8_t> encode(const PngImage& img);
PngImage decode(const std::vector<uint8_t>& bytes);

void write_file(const std::string& path, const PngImage& img);
PngImage read_file(const std::string& path);

}  // namespace nf::png
