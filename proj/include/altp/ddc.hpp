// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "altp/types.hpp"

namespace altp {

/// Patch grid for an image: patch_height = ceil(image_height / grid_rows),
/// patch_width likewise. Errors if the grid is larger than the image.
TokenGrid build_token_grid(int image_width, int image_height, int grid_rows, int grid_cols);

/// True when ceil(height / patch_height) == grid_rows and the same holds for
/// columns, i.e. every token patch holds at least one pixel of the image.
bool grid_covers(const TokenGrid& grid, int image_width, int image_height);

/// Each token joins the region owning the majority of its patch pixels;
/// ties break toward the smaller region id. Regions with no majority token
/// still appear with an empty omega list.
RegionTokenAssignment assign_tokens_to_regions(const SuperpixelMap& spmap, const TokenGrid& grid);

/// Uniform-retention rule: keep ceil(r_k * |omega_k|) tokens per region.
/// Empty regions keep 0; r_k outside [0,1] is an error.
std::vector<std::int32_t> ddc_keep_counts(const RegionTokenAssignment& assignment,
                                          const std::vector<double>& region_keep_ratios);

}  // namespace altp
