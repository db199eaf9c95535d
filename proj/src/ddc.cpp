// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/ddc.hpp"

#include <algorithm>
#include <cmath>

namespace altp {

TokenGrid build_token_grid(int image_width, int image_height, int grid_rows, int grid_cols) {
    if (image_width < 1 || image_height < 1) {
        throw Error(ErrorCode::zero_dimensions, "image dimensions must be at least 1x1");
    }
    if (grid_rows < 1 || grid_cols < 1) {
        throw Error(ErrorCode::invalid_argument, "grid dimensions must be at least 1x1");
    }
    if (grid_rows > image_height || grid_cols > image_width) {
        throw Error(ErrorCode::invalid_argument, "token grid larger than image");
    }
    TokenGrid grid;
    grid.grid_rows = grid_rows;
    grid.grid_cols = grid_cols;
    grid.patch_height = (image_height + grid_rows - 1) / grid_rows;
    grid.patch_width = (image_width + grid_cols - 1) / grid_cols;
    grid.total_tokens = grid_rows * grid_cols;
    return grid;
}

bool grid_covers(const TokenGrid& grid, int image_width, int image_height) {
    if (grid.patch_height < 1 || grid.patch_width < 1) return false;
    const int rows = (image_height + grid.patch_height - 1) / grid.patch_height;
    const int cols = (image_width + grid.patch_width - 1) / grid.patch_width;
    return rows == grid.grid_rows && cols == grid.grid_cols;
}

RegionTokenAssignment assign_tokens_to_regions(const SuperpixelMap& spmap, const TokenGrid& grid) {
    validate(spmap);
    if (!grid_covers(grid, spmap.width, spmap.height)) {
        throw Error(ErrorCode::dimension_mismatch,
                    "superpixel map dimensions do not match the token grid");
    }

    RegionTokenAssignment assignment;
    assignment.omega.resize(static_cast<std::size_t>(spmap.region_count));
    assignment.token_to_region.resize(static_cast<std::size_t>(grid.total_tokens));

    std::vector<std::int64_t> counts(static_cast<std::size_t>(spmap.region_count));
    for (int row = 0; row < grid.grid_rows; ++row) {
        const int y_lo = row * grid.patch_height;
        const int y_hi = std::min(y_lo + grid.patch_height, spmap.height);
        for (int col = 0; col < grid.grid_cols; ++col) {
            const int x_lo = col * grid.patch_width;
            const int x_hi = std::min(x_lo + grid.patch_width, spmap.width);
            std::fill(counts.begin(), counts.end(), 0);
            for (int y = y_lo; y < y_hi; ++y) {
                for (int x = x_lo; x < x_hi; ++x) {
                    ++counts[static_cast<std::size_t>(spmap.label_at(x, y))];
                }
            }
            std::int32_t winner = 0;
            for (std::int32_t k = 1; k < spmap.region_count; ++k) {
                if (counts[static_cast<std::size_t>(k)] > counts[static_cast<std::size_t>(winner)]) {
                    winner = k;
                }
            }
            const int token = grid.token_index(row, col);
            assignment.token_to_region[static_cast<std::size_t>(token)] = winner;
            assignment.omega[static_cast<std::size_t>(winner)].push_back(
                static_cast<std::int32_t>(token));
        }
    }
    return assignment;
}

std::vector<std::int32_t> ddc_keep_counts(const RegionTokenAssignment& assignment,
                                          const std::vector<double>& region_keep_ratios) {
    if (region_keep_ratios.size() != assignment.omega.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "one keep ratio per region required");
    }
    std::vector<std::int32_t> keep(assignment.omega.size(), 0);
    for (std::size_t k = 0; k < assignment.omega.size(); ++k) {
        const double r = region_keep_ratios[k];
        if (!(r >= 0.0 && r <= 1.0)) {
            throw Error(ErrorCode::invalid_argument, "region keep ratio outside [0,1]");
        }
        const auto omega_size = static_cast<std::int64_t>(assignment.omega[k].size());
        if (omega_size == 0 || r == 0.0) continue;
        std::int64_t count = ceil_with_guard(r * static_cast<double>(omega_size));
        count = std::clamp<std::int64_t>(count, 1, omega_size);
        keep[k] = static_cast<std::int32_t>(count);
    }
    return keep;
}

}  // namespace altp
