// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace altp {

namespace {

bool has_png_signature(const std::vector<std::uint8_t>& bytes) {
    static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), signature, 8) == 0;
}

struct PngReadCursor {
    const std::vector<std::uint8_t>* bytes = nullptr;
    std::size_t offset = 0;
    bool truncated = false;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* cursor = static_cast<PngReadCursor*>(png_get_io_ptr(png));
    if (cursor->offset + count > cursor->bytes->size()) {
        cursor->truncated = true;
        png_error(png, "unexpected end of data");
    }
    std::memcpy(out, cursor->bytes->data() + cursor->offset, count);
    cursor->offset += count;
}

ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr) {
        throw Error(ErrorCode::internal_error, "failed to initialize PNG reader");
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error(ErrorCode::internal_error, "failed to initialize PNG reader");
    }

    PngReadCursor cursor;
    cursor.bytes = &bytes;
    std::vector<png_bytep> row_pointers;
    std::vector<std::uint8_t> raster;

    if (setjmp(png_jmpbuf(png))) {
        const bool truncated = cursor.truncated;
        png_destroy_read_struct(&png, &info, nullptr);
        if (truncated) {
            throw Error(ErrorCode::truncated_data, "truncated image data");
        }
        throw Error(ErrorCode::unsupported_format, "malformed PNG data");
    }

    png_set_read_fn(png, &cursor, png_read_from_memory);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    if (width == 0 || height == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::zero_dimensions, "image has zero dimensions");
    }
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    // Normalize to 8- or 16-bit gray/RGB without alpha. 16-bit samples stay
    // big-endian in the raster and are assembled by hand below.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    const int out_depth = png_get_bit_depth(png, info);
    if ((channels != 1 && channels != 3) || (out_depth != 8 && out_depth != 16)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::unsupported_format, "unsupported PNG channel layout");
    }

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    raster.resize(row_bytes * height);
    row_pointers.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        row_pointers[y] = raster.data() + static_cast<std::size_t>(y) * row_bytes;
    }
    png_read_image(png, row_pointers.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ImageBuffer image;
    image.width = static_cast<int>(width);
    image.height = static_cast<int>(height);
    image.channels = channels;
    image.data.resize(static_cast<std::size_t>(width) * height * channels);
    const std::size_t samples = image.data.size();
    if (out_depth == 8) {
        for (std::size_t i = 0; i < samples; ++i) {
            image.data[i] = raster[i] / 255.0;
        }
    } else {
        for (std::size_t i = 0; i < samples; ++i) {
            const unsigned v = (static_cast<unsigned>(raster[i * 2]) << 8) | raster[i * 2 + 1];
            image.data[i] = v / 65535.0;
        }
    }
    return image;
}

struct NetpbmHeader {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::size_t data_offset = 0;
};

// Parses "P6"/"P5" headers: whitespace-separated fields with '#' comments,
// one whitespace byte after maxval, then binary samples.
NetpbmHeader parse_netpbm_header(const std::vector<std::uint8_t>& bytes) {
    NetpbmHeader header;
    std::size_t pos = 2;
    int fields[3] = {0, 0, 0};
    for (int field = 0; field < 3; ++field) {
        while (pos < bytes.size()) {
            const char c = static_cast<char>(bytes[pos]);
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
        if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
            throw Error(ErrorCode::truncated_data, "truncated image header");
        }
        long value = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1 << 30) {
                throw Error(ErrorCode::unsupported_format, "image header field out of range");
            }
            ++pos;
        }
        fields[field] = static_cast<int>(value);
    }
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        throw Error(ErrorCode::truncated_data, "truncated image header");
    }
    ++pos;
    header.width = fields[0];
    header.height = fields[1];
    header.maxval = fields[2];
    header.data_offset = pos;
    if (header.width == 0 || header.height == 0) {
        throw Error(ErrorCode::zero_dimensions, "image has zero dimensions");
    }
    if (header.maxval < 1 || header.maxval > 65535) {
        throw Error(ErrorCode::unsupported_format, "unsupported maxval");
    }
    return header;
}

ImageBuffer decode_netpbm(const std::vector<std::uint8_t>& bytes, int channels) {
    const NetpbmHeader header = parse_netpbm_header(bytes);
    const int bytes_per_sample = header.maxval > 255 ? 2 : 1;
    const std::size_t samples =
        static_cast<std::size_t>(header.width) * header.height * channels;
    const std::size_t need = header.data_offset + samples * bytes_per_sample;
    if (bytes.size() < need) {
        throw Error(ErrorCode::truncated_data, "truncated image data");
    }

    ImageBuffer image;
    image.width = header.width;
    image.height = header.height;
    image.channels = channels;
    image.data.resize(samples);
    const std::uint8_t* src = bytes.data() + header.data_offset;
    const double maxval = header.maxval;
    if (bytes_per_sample == 1) {
        for (std::size_t i = 0; i < samples; ++i) {
            image.data[i] = std::min<unsigned>(src[i], header.maxval) / maxval;
        }
    } else {
        for (std::size_t i = 0; i < samples; ++i) {
            const unsigned v = (static_cast<unsigned>(src[i * 2]) << 8) | src[i * 2 + 1];
            image.data[i] = std::min<unsigned>(v, header.maxval) / maxval;
        }
    }
    return image;
}

}  // namespace

ImageBuffer decode_image(const std::vector<std::uint8_t>& bytes) {
    if (has_png_signature(bytes)) {
        return decode_png(bytes);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
        return decode_netpbm(bytes, bytes[1] == '6' ? 3 : 1);
    }
    throw Error(ErrorCode::unsupported_format,
                "unsupported image format (expected PNG, P6 PPM or P5 PGM)");
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::file_not_found, "cannot open file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error(ErrorCode::io_failure, "failed reading file: " + path);
    }
    return bytes;
}

ImageBuffer load_image(const std::string& path) {
    return decode_image(read_file_bytes(path));
}

std::vector<std::uint8_t> encode_ppm(const ImageBuffer& image) {
    validate(image);
    std::string header = "P6\n" + std::to_string(image.width) + " " +
                         std::to_string(image.height) + "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + image.pixel_count() * 3);
    const std::size_t pixels = image.pixel_count();
    for (std::size_t p = 0; p < pixels; ++p) {
        for (int c = 0; c < 3; ++c) {
            const int src_channel = image.channels == 3 ? c : 0;
            const double v = image.data[p * image.channels + static_cast<std::size_t>(src_channel)];
            const long q = std::lround(v * 255.0);
            bytes.push_back(static_cast<std::uint8_t>(std::clamp(q, 0L, 255L)));
        }
    }
    return bytes;
}

void write_ppm(const ImageBuffer& image, const std::string& path) {
    const std::vector<std::uint8_t> bytes = encode_ppm(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_failure, "cannot open file for writing: " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::io_failure, "failed writing file: " + path);
    }
}

ImageBuffer resize_bilinear(const ImageBuffer& image, int new_width, int new_height) {
    validate(image);
    if (new_width < 1 || new_height < 1) {
        throw Error(ErrorCode::invalid_argument, "target dimensions must be at least 1x1");
    }
    ImageBuffer out;
    out.width = new_width;
    out.height = new_height;
    out.channels = image.channels;
    out.data.resize(static_cast<std::size_t>(new_width) * new_height * image.channels);

    const double sx = static_cast<double>(image.width) / new_width;
    const double sy = static_cast<double>(image.height) / new_height;
    for (int y = 0; y < new_height; ++y) {
        const double src_y = std::clamp((y + 0.5) * sy - 0.5, 0.0, image.height - 1.0);
        const int y0 = static_cast<int>(src_y);
        const int y1 = std::min(y0 + 1, image.height - 1);
        const double fy = src_y - y0;
        for (int x = 0; x < new_width; ++x) {
            const double src_x = std::clamp((x + 0.5) * sx - 0.5, 0.0, image.width - 1.0);
            const int x0 = static_cast<int>(src_x);
            const int x1 = std::min(x0 + 1, image.width - 1);
            const double fx = src_x - x0;
            for (int c = 0; c < image.channels; ++c) {
                const double top =
                    image.at(x0, y0, c) * (1.0 - fx) + image.at(x1, y0, c) * fx;
                const double bottom =
                    image.at(x0, y1, c) * (1.0 - fx) + image.at(x1, y1, c) * fx;
                out.at(x, y, c) = std::clamp(top * (1.0 - fy) + bottom * fy, 0.0, 1.0);
            }
        }
    }
    return out;
}

std::uint64_t fnv1a64(const std::vector<std::uint8_t>& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string content_hash(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(bytes);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) {
        out.push_back(digits[(hash >> shift) & 0xF]);
    }
    return out;
}

}  // namespace altp
