// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "altp/types.hpp"

namespace altp {

/// SLIC superpixel segmentation. Smooths with params.sigma, converts to
/// CIELAB (3-channel) or scales intensity to [0,100] (1-channel), clusters
/// with the joint color/space distance D = sqrt(dc^2 + (ds/S)^2 * C^2), and
/// enforces 4-connectivity by merging orphan components into the largest
/// adjacent region. region_count of the result may differ from the requested
/// num_superpixels.
SuperpixelMap slic_segment(const ImageBuffer& image, const SuperpixelParams& params);

namespace detail {

struct SlicCenter {
    std::array<double, 3> color{0.0, 0.0, 0.0};
    double x = 0.0;
    double y = 0.0;
};

struct SlicState {
    std::vector<SlicCenter> assignment_centers;  // centers the final labels were computed from
    std::vector<SlicCenter> centers;             // centers after the last update
    std::vector<std::int32_t> assignment;        // raw cluster labels, pre-connectivity
    double step = 0.0;                           // S = sqrt(W*H / N)
    int iterations_run = 0;
};

/// Smoothed feature image in the clustering color space: CIELAB for
/// 3-channel input, intensity scaled to [0,100] for 1-channel.
ImageBuffer slic_feature_image(const ImageBuffer& image, double sigma);

/// Seed + iterate without connectivity enforcement. Exposed for the
/// locality and convergence tests.
SlicState slic_iterate(const ImageBuffer& feature, const SuperpixelParams& params);

/// Relabel into 4-connected regions; components smaller than
/// (W*H/N)/4 pixels are merged into the largest adjacent region.
SuperpixelMap enforce_connectivity(const std::vector<std::int32_t>& assignment, int width,
                                   int height, int num_superpixels);

}  // namespace detail

}  // namespace altp
