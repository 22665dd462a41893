#include "nocsforge/io/png.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

#include "nocsforge/core/error.hpp"

namespace nf::png {

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(uint8_t(v >> 24));
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

uint32_t get_u32(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

void put_chunk(std::vector<uint8_t>& out, const char type[4], const std::vector<uint8_t>& data) {
    put_u32(out, uint32_t(data.size()));
    const size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const uint32_t crc =
        uint32_t(crc32(0, out.data() + start, uInt(out.size() - start)));
    put_u32(out, crc);
}

const uint8_t kSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

}  // namespace

std::vector<uint8_t> encode(const PngImage& img) {
    if (img.width <= 0 || img.height <= 0)
        throw ValidationError("png: empty image");
    if (img.channels != 1 && img.channels != 3)
        throw ValidationError("png: only 1 or 3 channels supported");
    if (img.bit_depth != 8 && img.bit_depth != 16)
        throw ValidationError("png: only bit depths 8 and 16 supported");
    if (img.bit_depth == 16 && img.channels != 1)
        throw ValidationError("png: 16-bit supported for grayscale only");

    const int bytes_per_sample = img.bit_depth / 8;
    const size_t row_bytes = size_t(img.width) * img.channels * bytes_per_sample;

    // Raw scanlines, each prefixed with filter type 0 (None).
    std::vector<uint8_t> raw;
    raw.reserve((row_bytes + 1) * img.height);
    for (int v = 0; v < img.height; ++v) {
        raw.push_back(0);
        for (int u = 0; u < img.width; ++u) {
            for (int c = 0; c < img.channels; ++c) {
                const uint16_t s = img.samples[img.index(v, u, c)];
                if (bytes_per_sample == 2) raw.push_back(uint8_t(s >> 8));
                raw.push_back(uint8_t(s & 0xff));
            }
        }
    }

    uLongf comp_size = compressBound(uLong(raw.size()));
    std::vector<uint8_t> comp(comp_size);
    if (compress2(comp.data(), &comp_size, raw.data(), uLong(raw.size()), 6) != Z_OK)
        throw IoError("png: zlib compression failed");
    comp.resize(comp_size);

    std::vector<uint8_t> out(kSignature, kSignature + 8);

    std::vector<uint8_t> ihdr;
    put_u32(ihdr, uint32_t(img.width));
    put_u32(ihdr, uint32_t(img.height));
    ihdr.push_back(uint8_t(img.bit_depth));
    ihdr.push_back(img.channels == 3 ? 2 : 0);  // color type
    ihdr.push_back(0);                          // compression
    ihdr.push_back(0);                          // filter
    ihdr.push_back(0);                          // interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", comp);
    put_chunk(out, "IEND", {});
    return out;
}

PngImage decode(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0)
        throw IoError("png: bad signature");

    PngImage img;
    std::vector<uint8_t> idat;
    size_t pos = 8;
    int color_type = -1;
    bool saw_ihdr = false, saw_iend = false;

    while (pos + 12 <= bytes.size() && !saw_iend) {
        const uint32_t len = get_u32(&bytes[pos]);
        if (pos + 12 + len > bytes.size()) throw IoError("png: truncated chunk");
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const uint8_t* data = &bytes[pos + 8];
        const uint32_t crc_expect = get_u32(&bytes[pos + 8 + len]);
        const uint32_t crc_actual =
            uint32_t(crc32(0, &bytes[pos + 4], uInt(4 + len)));
        if (crc_expect != crc_actual) throw IoError("png: chunk checksum mismatch");

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw IoError("png: bad IHDR");
            img.width = int(get_u32(data));
            img.height = int(get_u32(data + 4));
            img.bit_depth = data[8];
            color_type = data[9];
            if (data[12] != 0) throw IoError("png: interlaced images not supported");
            if (color_type == 0) img.channels = 1;
            else if (color_type == 2) img.channels = 3;
            else throw IoError("png: unsupported color type");
            if (img.bit_depth != 8 && img.bit_depth != 16)
                throw IoError("png: unsupported bit depth");
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || idat.empty()) throw IoError("png: missing IHDR or IDAT");

    const int bytes_per_sample = img.bit_depth / 8;
    const int bpp = img.channels * bytes_per_sample;  // filter unit
    const size_t row_bytes = size_t(img.width) * bpp;
    std::vector<uint8_t> raw((row_bytes + 1) * img.height);
    uLongf raw_size = uLongf(raw.size());
    if (uncompress(raw.data(), &raw_size, idat.data(), uLong(idat.size())) != Z_OK ||
        raw_size != raw.size())
        throw IoError("png: zlib decompression failed");

    // Undo per-row filters in place.
    std::vector<uint8_t> prev(row_bytes, 0);
    std::vector<uint8_t> cur(row_bytes);
    img.samples.resize(size_t(img.width) * img.height * img.channels);
    for (int v = 0; v < img.height; ++v) {
        const uint8_t* line = &raw[size_t(v) * (row_bytes + 1)];
        const int filter = line[0];
        const uint8_t* src = line + 1;
        for (size_t i = 0; i < row_bytes; ++i) {
            const int a = i >= size_t(bpp) ? cur[i - bpp] : 0;
            const int b = prev[i];
            const int c = i >= size_t(bpp) ? prev[i - bpp] : 0;
            int x = src[i];
            switch (filter) {
                case 0: break;
                case 1: x += a; break;
                case 2: x += b; break;
                case 3: x += (a + b) / 2; break;
                case 4: x += paeth(a, b, c); break;
                default: throw IoError("png: unknown filter type");
            }
            cur[i] = uint8_t(x);
        }
        for (int u = 0; u < img.width; ++u) {
            for (int ch = 0; ch < img.channels; ++ch) {
                const size_t off = (size_t(u) * img.channels + ch) * bytes_per_sample;
                uint16_t s = cur[off];
                if (bytes_per_sample == 2) s = uint16_t((s << 8) | cur[off + 1]);
                img.samples[img.index(v, u, ch)] = s;
            }
        }
        std::swap(prev, cur);
    }
    return img;
}

void write_file(const std::string& path, const PngImage& img) {
    const auto bytes = encode(img);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("png: cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw IoError("png: write failed: " + path);
}

PngImage read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("png: cannot open: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                               std::istreambuf_iterator<char>());
    return decode(bytes);
}

}  // namespace nf::png
