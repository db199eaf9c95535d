// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/color.hpp"

#include <algorithm>
#include <cmath>

namespace altp {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(i + radius)] = w;
        sum += w;
    }
    for (double& w : kernel) w /= sum;
    return kernel;
}

inline int clamp_coord(int v, int hi) {
    return std::clamp(v, 0, hi - 1);
}

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// CIE f(t) with the 6/29 cube-root threshold.
double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    constexpr double delta3 = delta * delta * delta;
    if (t > delta3) return std::cbrt(t);
    return t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

ImageBuffer gaussian_smooth(const ImageBuffer& image, double sigma) {
    validate(image);
    if (sigma < 0.0) {
        throw Error(ErrorCode::invalid_argument, "sigma must be >= 0");
    }
    if (sigma == 0.0) return image;

    const std::vector<double> kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size() / 2);
    const int w = image.width;
    const int h = image.height;
    const int ch = image.channels;

    // Horizontal pass, then vertical.
    ImageBuffer tmp = image;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    acc += kernel[static_cast<std::size_t>(i + radius)] *
                           image.at(clamp_coord(x + i, w), y, c);
                }
                tmp.at(x, y, c) = acc;
            }
        }
    }
    ImageBuffer out = tmp;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    acc += kernel[static_cast<std::size_t>(i + radius)] *
                           tmp.at(x, clamp_coord(y + i, h), c);
                }
                // Kernel normalization can overshoot [0,1] by an ulp.
                out.at(x, y, c) = std::clamp(acc, 0.0, 1.0);
            }
        }
    }
    return out;
}

ImageBuffer rgb_to_lab(const ImageBuffer& image) {
    validate(image);
    if (image.channels != 3) {
        throw Error(ErrorCode::invalid_argument,
                    "rgb_to_lab requires a 3-channel image; use the grayscale path for 1-channel input");
    }

    // D65 reference white.
    constexpr double xn = 0.95047;
    constexpr double yn = 1.0;
    constexpr double zn = 1.08883;

    ImageBuffer out;
    out.width = image.width;
    out.height = image.height;
    out.channels = 3;
    out.data.resize(image.data.size());

    const std::size_t n = image.pixel_count();
    for (std::size_t p = 0; p < n; ++p) {
        const double r = srgb_to_linear(image.data[p * 3 + 0]);
        const double g = srgb_to_linear(image.data[p * 3 + 1]);
        const double b = srgb_to_linear(image.data[p * 3 + 2]);

        const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
        const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
        const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

        const double fx = lab_f(x / xn);
        const double fy = lab_f(y / yn);
        const double fz = lab_f(z / zn);

        out.data[p * 3 + 0] = 116.0 * fy - 16.0;
        out.data[p * 3 + 1] = 500.0 * (fx - fy);
        out.data[p * 3 + 2] = 200.0 * (fy - fz);
    }
    return out;
}

}  // namespace altp
