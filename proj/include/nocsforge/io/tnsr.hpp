#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nf::tnsr {

/// Binary tensor file: magic "TNSR", format version u16, dtype code u8
/// (f32=0, u8=1), ndim u8, dims as u32 little-endian, then the row-major
/// payload little-endian.
enum class DType : uint8_t { F32 = 0, U8 = 1 };

struct Tensor {
    DType dtype = DType::F32;
    std::vector<uint32_t> dims;
    std::vector<float> f32;
    std::vector<uint8_t> u8;

    size_t element_count() const {
        size_t n = 1;
        for (auto d : dims) n *= d;
        return dims.empty() ? 0 : n;
    }
};

constexpr uint16_t kFormatVersion = 1;

void write_file(const std::string& path, const Tensor& t);
Tensor read_file(const std::string& path);

}  // namespace nf::tnsr
