// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "altp/types.hpp"

namespace altp {

enum class OverlayKind { segments, density, weights, kept_tokens };

const char* to_string(OverlayKind kind);
OverlayKind overlay_kind_from_string(const std::string& name);

/// Render one diagnostic view:
///   segments    - region boundaries painted red over the image
///   density     - per-region gray fill, normalized to the max density
///   weights     - same for allocation weights
///   kept_tokens - kept patches at full brightness, dropped ones scaled x0.3
/// All-zero density/weight vectors fill with mid-gray.
ImageBuffer render_overlay_image(const ImageBuffer& image, const SuperpixelMap& spmap,
                                 const TokenGrid& grid, const PruneResult& result,
                                 OverlayKind kind);

/// render_overlay_image written as a P6 PPM.
void render_overlay(const ImageBuffer& image, const SuperpixelMap& spmap, const TokenGrid& grid,
                    const PruneResult& result, OverlayKind kind, const std::string& path);

}  // namespace altp
