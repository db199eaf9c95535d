// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "altp/types.hpp"

namespace altp {

/// Decode PNG, binary PPM (P6) or PGM (P5) from raw bytes. 8-bit samples map
/// to [0,1] by v/255, 16-bit by v/65535. PNG palette images expand to RGB,
/// alpha channels are stripped.
ImageBuffer decode_image(const std::vector<std::uint8_t>& bytes);

/// decode_image over the file contents.
ImageBuffer load_image(const std::string& path);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);

/// Encode as binary P6 PPM, 8 bits per sample; grayscale input is
/// replicated across the three channels.
std::vector<std::uint8_t> encode_ppm(const ImageBuffer& image);
void write_ppm(const ImageBuffer& image, const std::string& path);

/// Bilinear resize with half-pixel-centered sampling; resizing to the source
/// dimensions reproduces the input exactly.
ImageBuffer resize_bilinear(const ImageBuffer& image, int new_width, int new_height);

/// FNV-1a 64-bit over raw bytes; used to stamp inputs in run manifests.
std::uint64_t fnv1a64(const std::vector<std::uint8_t>& bytes);
std::string content_hash(const std::vector<std::uint8_t>& bytes);

}  // namespace altp
