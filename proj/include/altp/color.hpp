// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "altp/types.hpp"

namespace altp {

/// Separable Gaussian blur per channel, kernel radius ceil(3*sigma), borders
/// clamped to the edge pixel. sigma == 0 returns the input unchanged.
ImageBuffer gaussian_smooth(const ImageBuffer& image, double sigma);

/// sRGB (D65) -> CIELAB. L in [0,100], a/b roughly [-128,127]. Rejects
/// 1-channel input; grayscale images take the intensity path instead.
ImageBuffer rgb_to_lab(const ImageBuffer& image);

}  // namespace altp
