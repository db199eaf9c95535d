// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "altp/slic.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace altp;

using test::regions_are_connected;

namespace {

std::vector<std::int64_t> region_areas(const SuperpixelMap& spmap) {
    std::vector<std::int64_t> areas(static_cast<std::size_t>(spmap.region_count), 0);
    for (std::int32_t label : spmap.labels) ++areas[static_cast<std::size_t>(label)];
    return areas;
}

}  // namespace

TEST_CASE("a single superpixel absorbs the whole image") {
    const ImageBuffer image = test::noise_image(32, 24, 3, 5);
    SuperpixelParams params;
    params.num_superpixels = 1;
    const SuperpixelMap spmap = slic_segment(image, params);
    CHECK(spmap.region_count == 1);
    CHECK(std::all_of(spmap.labels.begin(), spmap.labels.end(),
                      [](std::int32_t label) { return label == 0; }));
}

TEST_CASE("constant image with N=4 tiles into near-equal quadrants") {
    const ImageBuffer image = test::constant_image(100, 100, 3, 0.42);
    SuperpixelParams params;
    params.num_superpixels = 4;
    params.compactness = 5.0;
    const SuperpixelMap spmap = slic_segment(image, params);
    REQUIRE(spmap.region_count == 4);
    const auto areas = region_areas(spmap);
    const auto [min_it, max_it] = std::minmax_element(areas.begin(), areas.end());
    CHECK(static_cast<double>(*max_it) / static_cast<double>(*min_it) <= 1.5);
    // Near-regular 2x2 tiling: each region close to 2500 px.
    for (std::int64_t area : areas) {
        CHECK(area >= static_cast<std::int64_t>(2500 * 0.66));
        CHECK(area <= static_cast<std::int64_t>(2500 * 1.5));
    }
    CHECK(regions_are_connected(spmap));
}

TEST_CASE("black/white halves with N=2 split at the contrast edge") {
    const ImageBuffer image = test::vertical_split_image(100, 100);
    SuperpixelParams params;
    params.num_superpixels = 2;
    const SuperpixelMap spmap = slic_segment(image, params);
    REQUIRE(spmap.region_count == 2);
    const std::int32_t left = spmap.label_at(0, 0);
    const std::int32_t right = spmap.label_at(99, 0);
    CHECK(left != right);
    // Boundary within 2 px of column 50.
    for (int y = 0; y < 100; ++y) {
        for (int x = 0; x <= 47; ++x) CHECK(spmap.label_at(x, y) == left);
        for (int x = 52; x < 100; ++x) CHECK(spmap.label_at(x, y) == right);
    }
}

TEST_CASE("images below 2x2 are rejected") {
    const ImageBuffer thin = test::constant_image(1, 10, 1, 0.5);
    SuperpixelParams params;
    params.num_superpixels = 2;
    CHECK_THROWS_WITH_AS(slic_segment(thin, params), "image too small to segment", Error);
}

TEST_CASE("partition and connectivity hold on varied images") {
    std::vector<ImageBuffer> images;
    images.push_back(test::noise_image(64, 48, 3, 101));
    images.push_back(test::noise_image(50, 50, 1, 102));
    images.push_back(test::checkerboard_image(64, 64, 8));
    images.push_back(test::gradient_image(80, 40));
    images.push_back(test::vertical_split_image(60, 60));

    for (std::size_t i = 0; i < images.size(); ++i) {
        CAPTURE(i);
        SuperpixelParams params;
        params.num_superpixels = 9;
        const SuperpixelMap spmap = slic_segment(images[i], params);
        CHECK_NOTHROW(validate(spmap));  // full partition, no empty labels
        CHECK(regions_are_connected(spmap));
        CHECK(spmap.region_count >= 1);
    }
}

TEST_CASE("segmentation is deterministic") {
    const ImageBuffer image = test::noise_image(48, 48, 3, 77);
    SuperpixelParams params;
    params.num_superpixels = 6;
    const SuperpixelMap first = slic_segment(image, params);
    const SuperpixelMap second = slic_segment(image, params);
    CHECK(first == second);
}

TEST_CASE("no pixel lands farther than 2S from its assignment center") {
    const ImageBuffer image = test::noise_image(60, 45, 3, 913);
    SuperpixelParams params;
    params.num_superpixels = 8;
    const ImageBuffer feature = detail::slic_feature_image(image, params.sigma);
    const detail::SlicState state = detail::slic_iterate(feature, params);
    REQUIRE(!state.assignment_centers.empty());
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const std::int32_t k =
                state.assignment[static_cast<std::size_t>(y) * image.width + x];
            REQUIRE(k >= 0);
            const detail::SlicCenter& center =
                state.assignment_centers[static_cast<std::size_t>(k)];
            CHECK(std::abs(x - center.x) <= 2.0 * state.step);
            CHECK(std::abs(y - center.y) <= 2.0 * state.step);
        }
    }
}

TEST_CASE("higher compactness yields more regular regions") {
    // Low-amplitude noise: with full-range noise the color term drowns the
    // spatial term at both C values and the comparison is pure chance.
    double ratio_low_c = 0.0;
    double ratio_high_c = 0.0;
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        const ImageBuffer image = test::noise_image(64, 64, 3, 3000 + seed, 0.1);
        SuperpixelParams params;
        params.num_superpixels = 16;
        params.compactness = 3.0;
        ratio_low_c += test::mean_isoperimetric_ratio(slic_segment(image, params));
        params.compactness = 10.0;
        ratio_high_c += test::mean_isoperimetric_ratio(slic_segment(image, params));
    }
    CHECK(ratio_high_c / 20.0 <= ratio_low_c / 20.0);
}

TEST_CASE("orphan fragments merge into the largest adjacent region") {
    // Hand-built assignment: a lone pixel of cluster 1 stranded inside
    // cluster 0, plus a legitimate cluster-1 block elsewhere.
    const int w = 12;
    const int h = 6;
    std::vector<std::int32_t> assignment(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 8; x < 12; ++x) assignment[static_cast<std::size_t>(y) * w + x] = 1;
    }
    assignment[2 * w + 2] = 1;  // stranded fragment, area 1
    const SuperpixelMap spmap = detail::enforce_connectivity(assignment, w, h, 2);
    CHECK(spmap.region_count == 2);
    CHECK(regions_are_connected(spmap));
    // The stranded pixel joined the surrounding region.
    CHECK(spmap.label_at(2, 2) == spmap.label_at(0, 0));
}

TEST_CASE("grayscale images segment through the intensity path") {
    const ImageBuffer image = test::gradient_image(40, 40);
    SuperpixelParams params;
    params.num_superpixels = 4;
    const SuperpixelMap spmap = slic_segment(image, params);
    CHECK_NOTHROW(validate(spmap));
    CHECK(regions_are_connected(spmap));
}
