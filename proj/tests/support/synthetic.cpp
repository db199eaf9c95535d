// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace altp::test {

ImageBuffer constant_image(int width, int height, int channels, double value) {
    ImageBuffer image;
    image.width = width;
    image.height = height;
    image.channels = channels;
    image.data.assign(static_cast<std::size_t>(width) * height * channels, value);
    return image;
}

ImageBuffer vertical_split_image(int width, int height) {
    ImageBuffer image = constant_image(width, height, 3, 0.0);
    for (int y = 0; y < height; ++y) {
        for (int x = width / 2; x < width; ++x) {
            for (int c = 0; c < 3; ++c) image.at(x, y, c) = 1.0;
        }
    }
    return image;
}

ImageBuffer noise_image(int width, int height, int channels, std::uint32_t seed,
                        double amplitude) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.5 - amplitude / 2.0, 0.5 + amplitude / 2.0);
    ImageBuffer image = constant_image(width, height, channels, 0.0);
    for (double& v : image.data) v = dist(rng);
    return image;
}

ImageBuffer flat_with_noisy_square(int width, int height, int square_x, int square_y,
                                   int square_size, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    ImageBuffer image = constant_image(width, height, 3, 0.5);
    for (int y = square_y; y < std::min(square_y + square_size, height); ++y) {
        for (int x = square_x; x < std::min(square_x + square_size, width); ++x) {
            for (int c = 0; c < 3; ++c) image.at(x, y, c) = dist(rng);
        }
    }
    return image;
}

ImageBuffer checkerboard_image(int width, int height, int cell) {
    ImageBuffer image = constant_image(width, height, 3, 0.0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (((x / cell) + (y / cell)) % 2 == 0) {
                for (int c = 0; c < 3; ++c) image.at(x, y, c) = 1.0;
            }
        }
    }
    return image;
}

ImageBuffer gradient_image(int width, int height) {
    ImageBuffer image = constant_image(width, height, 1, 0.0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            image.at(x, y, 0) = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0;
        }
    }
    return image;
}

SuperpixelMap voronoi_map(int width, int height, int k, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dx(0, width - 1);
    std::uniform_int_distribution<int> dy(0, height - 1);
    std::vector<std::pair<int, int>> sites;
    while (static_cast<int>(sites.size()) < k) {
        const std::pair<int, int> site{dx(rng), dy(rng)};
        if (std::find(sites.begin(), sites.end(), site) == sites.end()) {
            sites.push_back(site);
        }
    }
    SuperpixelMap spmap;
    spmap.width = width;
    spmap.height = height;
    spmap.labels.resize(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::int32_t best = 0;
            std::int64_t best_dist = std::numeric_limits<std::int64_t>::max();
            for (std::size_t s = 0; s < sites.size(); ++s) {
                const std::int64_t ddx = x - sites[s].first;
                const std::int64_t ddy = y - sites[s].second;
                const std::int64_t dist = ddx * ddx + ddy * ddy;
                if (dist < best_dist) {
                    best_dist = dist;
                    best = static_cast<std::int32_t>(s);
                }
            }
            spmap.labels[static_cast<std::size_t>(y) * width + x] = best;
        }
    }
    // Renumber so no label is empty (a site's cell can be stolen entirely).
    std::vector<std::int32_t> remap(static_cast<std::size_t>(k), -1);
    std::int32_t next = 0;
    for (std::int32_t& label : spmap.labels) {
        if (remap[static_cast<std::size_t>(label)] == -1) {
            remap[static_cast<std::size_t>(label)] = next++;
        }
        label = remap[static_cast<std::size_t>(label)];
    }
    spmap.region_count = next;
    return spmap;
}

std::vector<double> random_simplex(int k, std::mt19937& rng) {
    std::exponential_distribution<double> dist(1.0);
    std::vector<double> weights(static_cast<std::size_t>(k));
    double total = 0.0;
    for (double& w : weights) {
        w = dist(rng) + 1e-6;
        total += w;
    }
    for (double& w : weights) w /= total;
    return weights;
}

std::vector<std::int32_t> random_partition(int total, int parts, std::mt19937& rng) {
    std::vector<std::int32_t> sizes(static_cast<std::size_t>(parts), 0);
    std::uniform_int_distribution<int> pick(0, parts - 1);
    for (int i = 0; i < total; ++i) {
        ++sizes[static_cast<std::size_t>(pick(rng))];
    }
    return sizes;
}

}  // namespace altp::test
