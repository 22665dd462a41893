#include "nocsforge/io/tnsr.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "nocsforge/core/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "TNSR I/O assumes a little-endian host");

namespace nf::tnsr {

void write_file(const std::string& path, const Tensor& t) {
    const size_t n = t.element_count();
    if (t.dtype == DType::F32 && t.f32.size() != n)
        throw ValidationError("tnsr: f32 payload size disagrees with dims");
    if (t.dtype == DType::U8 && t.u8.size() != n)
        throw ValidationError("tnsr: u8 payload size disagrees with dims");
    if (t.dims.empty() || t.dims.size() > 255)
        throw ValidationError("tnsr: bad rank");

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("tnsr: cannot open for writing: " + path);
    f.write("TNSR", 4);
    const uint16_t version = kFormatVersion;
    f.write(reinterpret_cast<const char*>(&version), 2);
    const uint8_t dtype = uint8_t(t.dtype);
    const uint8_t ndim = uint8_t(t.dims.size());
    f.write(reinterpret_cast<const char*>(&dtype), 1);
    f.write(reinterpret_cast<const char*>(&ndim), 1);
    for (uint32_t d : t.dims) f.write(reinterpret_cast<const char*>(&d), 4);
    if (t.dtype == DType::F32)
        f.write(reinterpret_cast<const char*>(t.f32.data()), std::streamsize(n * 4));
    else
        f.write(reinterpret_cast<const char*>(t.u8.data()), std::streamsize(n));
    if (!f) throw IoError("tnsr: write failed: " + path);
}

Tensor read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("tnsr: cannot open: " + path);

    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "TNSR", 4) != 0)
        throw IoError("tnsr: bad magic in " + path);

    uint16_t version = 0;
    f.read(reinterpret_cast<char*>(&version), 2);
    if (version != kFormatVersion)
        throw IoError("tnsr: unsupported format version in " + path);

    uint8_t dtype = 0, ndim = 0;
    f.read(reinterpret_cast<char*>(&dtype), 1);
    f.read(reinterpret_cast<char*>(&ndim), 1);
    if (dtype > 1 || ndim == 0) throw IoError("tnsr: bad header in " + path);

    Tensor t;
    t.dtype = DType(dtype);
    t.dims.resize(ndim);
    for (auto& d : t.dims) f.read(reinterpret_cast<char*>(&d), 4);
    if (!f) throw IoError("tnsr: truncated header in " + path);

    const size_t n = t.element_count();
    if (t.dtype == DType::F32) {
        t.f32.resize(n);
        f.read(reinterpret_cast<char*>(t.f32.data()), std::streamsize(n * 4));
    } else {
        t.u8.resize(n);
        f.read(reinterpret_cast<char*>(t.u8.data()), std::streamsize(n));
    }
    if (!f) throw IoError("tnsr: truncated payload in " + path);
    return t;
}

}  // namespace nf::tnsr
