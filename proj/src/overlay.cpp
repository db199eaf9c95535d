// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/overlay.hpp"

#include <algorithm>
#include <cmath>

#include "altp/ddc.hpp"
#include "altp/image_io.hpp"

namespace altp {

namespace {

ImageBuffer to_rgb(const ImageBuffer& image) {
    if (image.channels == 3) return image;
    ImageBuffer out;
    out.width = image.width;
    out.height = image.height;
    out.channels = 3;
    out.data.resize(image.pixel_count() * 3);
    for (std::size_t p = 0; p < image.pixel_count(); ++p) {
        out.data[p * 3 + 0] = out.data[p * 3 + 1] = out.data[p * 3 + 2] = image.data[p];
    }
    return out;
}

bool is_boundary(const SuperpixelMap& spmap, int x, int y) {
    const std::int32_t label = spmap.label_at(x, y);
    if (x > 0 && spmap.label_at(x - 1, y) != label) return true;
    if (x + 1 < spmap.width && spmap.label_at(x + 1, y) != label) return true;
    if (y > 0 && spmap.label_at(x, y - 1) != label) return true;
    if (y + 1 < spmap.height && spmap.label_at(x, y + 1) != label) return true;
    return false;
}

ImageBuffer region_fill(const SuperpixelMap& spmap, const std::vector<double>& values) {
    if (values.size() != static_cast<std::size_t>(spmap.region_count)) {
        throw Error(ErrorCode::dimension_mismatch, "one value per region required");
    }
    const double max_value = values.empty()
                                 ? 0.0
                                 : *std::max_element(values.begin(), values.end());
    ImageBuffer out;
    out.width = spmap.width;
    out.height = spmap.height;
    out.channels = 3;
    out.data.resize(static_cast<std::size_t>(spmap.width) * spmap.height * 3);
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
        // Mid-gray when everything is zero, mirroring the uniform fallback.
        const double shade =
            max_value > 0.0 ? values[static_cast<std::size_t>(spmap.labels[p])] / max_value : 0.5;
        out.data[p * 3 + 0] = out.data[p * 3 + 1] = out.data[p * 3 + 2] = shade;
    }
    return out;
}

}  // namespace

const char* to_string(OverlayKind kind) {
    switch (kind) {
        case OverlayKind::segments: return "segments";
        case OverlayKind::density: return "density";
        case OverlayKind::weights: return "weights";
        case OverlayKind::kept_tokens: return "kept_tokens";
    }
    return "unknown";
}

OverlayKind overlay_kind_from_string(const std::string& name) {
    if (name == "segments") return OverlayKind::segments;
    if (name == "density") return OverlayKind::density;
    if (name == "weights") return OverlayKind::weights;
    if (name == "kept_tokens") return OverlayKind::kept_tokens;
    throw Error(ErrorCode::invalid_argument, "unknown overlay kind: " + name);
}

ImageBuffer render_overlay_image(const ImageBuffer& image, const SuperpixelMap& spmap,
                                 const TokenGrid& grid, const PruneResult& result,
                                 OverlayKind kind) {
    validate(image);

    if (kind == OverlayKind::kept_tokens) {
        if (!grid_covers(grid, image.width, image.height)) {
            throw Error(ErrorCode::dimension_mismatch, "token grid does not cover the image");
        }
        std::vector<bool> kept(static_cast<std::size_t>(grid.total_tokens), false);
        for (std::int32_t token : result.kept_indices) {
            if (token < 0 || token >= grid.total_tokens) {
                throw Error(ErrorCode::invalid_argument, "kept token index outside the grid");
            }
            kept[static_cast<std::size_t>(token)] = true;
        }
        ImageBuffer out = to_rgb(image);
        for (int y = 0; y < image.height; ++y) {
            const int row = y / grid.patch_height;
            for (int x = 0; x < image.width; ++x) {
                const int col = x / grid.patch_width;
                if (kept[static_cast<std::size_t>(grid.token_index(row, col))]) continue;
                for (int c = 0; c < 3; ++c) {
                    out.at(x, y, c) *= 0.3;
                }
            }
        }
        return out;
    }

    validate(spmap);
    if (spmap.width != image.width || spmap.height != image.height) {
        throw Error(ErrorCode::dimension_mismatch,
                    "image and superpixel map dimensions differ");
    }
    switch (kind) {
        case OverlayKind::segments: {
            ImageBuffer out = to_rgb(image);
            for (int y = 0; y < image.height; ++y) {
                for (int x = 0; x < image.width; ++x) {
                    if (!is_boundary(spmap, x, y)) continue;
                    out.at(x, y, 0) = 1.0;
                    out.at(x, y, 1) = 0.0;
                    out.at(x, y, 2) = 0.0;
                }
            }
            return out;
        }
        case OverlayKind::density:
            return region_fill(spmap, result.densities);
        case OverlayKind::weights:
            return region_fill(spmap, result.weights);
        default:
            throw Error(ErrorCode::internal_error, "unhandled overlay kind");
    }
}

void render_overlay(const ImageBuffer& image, const SuperpixelMap& spmap, const TokenGrid& grid,
                    const PruneResult& result, OverlayKind kind, const std::string& path) {
    write_ppm(render_overlay_image(image, spmap, grid, result, kind), path);
}

}  // namespace altp
