// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/selector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "altp/color.hpp"
#include "altp/ddc.hpp"
#include "altp/ddf.hpp"
#include "altp/slic.hpp"

namespace altp {

namespace {

// Sort token indices by importance descending, index ascending on ties.
std::vector<std::int32_t> rank_tokens(const std::vector<std::int32_t>& tokens,
                                      const std::vector<double>& importance) {
    std::vector<std::int32_t> ranked = tokens;
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::int32_t a, std::int32_t b) {
        const double ia = importance[static_cast<std::size_t>(a)];
        const double ib = importance[static_cast<std::size_t>(b)];
        if (ia != ib) return ia > ib;
        return a < b;
    });
    return ranked;
}

}  // namespace

ImportanceMap importance_from_variance(const ImageBuffer& image, const TokenGrid& grid) {
    validate(image);
    if (!grid_covers(grid, image.width, image.height)) {
        throw Error(ErrorCode::dimension_mismatch, "token grid does not cover the image");
    }
    ImportanceMap map;
    map.source = ImportanceSource::variance_proxy;
    map.values.resize(static_cast<std::size_t>(grid.total_tokens), 0.0);

    const int ch = image.channels;
    for (int row = 0; row < grid.grid_rows; ++row) {
        const int y_lo = row * grid.patch_height;
        const int y_hi = std::min(y_lo + grid.patch_height, image.height);
        for (int col = 0; col < grid.grid_cols; ++col) {
            const int x_lo = col * grid.patch_width;
            const int x_hi = std::min(x_lo + grid.patch_width, image.width);
            // Welford per channel; a flat patch scores exactly zero.
            double var = 0.0;
            for (int c = 0; c < ch; ++c) {
                double mean = 0.0;
                double m2 = 0.0;
                std::int64_t count = 0;
                for (int y = y_lo; y < y_hi; ++y) {
                    for (int x = x_lo; x < x_hi; ++x) {
                        const double v = image.at(x, y, c);
                        const double delta = v - mean;
                        mean += delta / static_cast<double>(++count);
                        m2 += delta * (v - mean);
                    }
                }
                var += m2 / static_cast<double>(count);
            }
            map.values[static_cast<std::size_t>(grid.token_index(row, col))] = var / ch;
        }
    }
    return map;
}

ImportanceMap uniform_importance(int v_total) {
    ImportanceMap map;
    map.source = ImportanceSource::uniform;
    map.values.assign(static_cast<std::size_t>(v_total), 0.0);
    return map;
}

std::vector<std::int32_t> select_in_region(const std::vector<std::int32_t>& omega_k,
                                           const ImportanceMap& importance, int keep_k) {
    if (keep_k < 0 || static_cast<std::size_t>(keep_k) > omega_k.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "keep count " + std::to_string(keep_k) + " exceeds region size " +
                        std::to_string(omega_k.size()));
    }
    for (std::int32_t token : omega_k) {
        if (token < 0 || static_cast<std::size_t>(token) >= importance.values.size()) {
            throw Error(ErrorCode::invalid_argument, "token index outside importance map");
        }
    }
    std::vector<std::int32_t> ranked = rank_tokens(omega_k, importance.values);
    ranked.resize(static_cast<std::size_t>(keep_k));
    std::sort(ranked.begin(), ranked.end());
    return ranked;
}

PruneResult prune(const ImageBuffer& image, const TokenGrid& grid, const ImportanceMap& importance,
                  const PruneConfig& config, SuperpixelMap* segmentation_out) {
    validate(image);
    validate(config);
    if (!grid_covers(grid, image.width, image.height)) {
        throw Error(ErrorCode::dimension_mismatch, "token grid does not cover the image");
    }
    validate(importance, grid.total_tokens);

    const int v_total = grid.total_tokens;
    const int budget = token_budget(config.keep_ratio, v_total);

    PruneResult result;
    if (config.mode == PruneMode::global_topk) {
        std::vector<std::int32_t> all(static_cast<std::size_t>(v_total));
        std::iota(all.begin(), all.end(), 0);
        result.kept_indices = select_in_region(all, importance, budget);
        return result;
    }

    SuperpixelMap spmap = slic_segment(image, config.superpixel);
    const RegionTokenAssignment assignment = assign_tokens_to_regions(spmap, grid);
    const std::vector<std::int32_t> omega_sizes = assignment.omega_sizes();

    ImageBuffer lab_image;
    const ImageBuffer* variance_image = &image;
    if (config.variance_space == VarianceSpace::lab) {
        lab_image = rgb_to_lab(image);
        variance_image = &lab_image;
    }
    const std::vector<RegionStats> stats = collect_region_stats(*variance_image, spmap);
    result.densities = information_density(stats, static_cast<std::int64_t>(image.pixel_count()));

    const double token_target = config.keep_ratio * static_cast<double>(v_total);
    std::vector<std::int32_t> keep_counts;
    if (config.mode == PruneMode::altp) {
        result.weights = allocation_weights(result.densities, config.alpha);
        result.allocations.resize(result.weights.size());
        for (std::size_t k = 0; k < result.weights.size(); ++k) {
            result.allocations[k] = result.weights[k] * token_target;
        }
        keep_counts = apply_budget_policy(result.allocations, omega_sizes, budget,
                                          config.budget_policy);
    } else {
        // ddc_uniform: the same keep rate r for every region.
        result.weights.resize(omega_sizes.size());
        result.allocations.resize(omega_sizes.size());
        for (std::size_t k = 0; k < omega_sizes.size(); ++k) {
            result.weights[k] = static_cast<double>(omega_sizes[k]) / v_total;
            result.allocations[k] = config.keep_ratio * static_cast<double>(omega_sizes[k]);
        }
        if (config.budget_policy == BudgetPolicy::paper_ceiling) {
            const std::vector<double> rates(omega_sizes.size(), config.keep_ratio);
            keep_counts = ddc_keep_counts(assignment, rates);
        } else {
            keep_counts = apply_budget_policy(result.allocations, omega_sizes, budget,
                                              config.budget_policy);
        }
    }

    result.kept_per_region = keep_counts;
    for (std::size_t k = 0; k < assignment.omega.size(); ++k) {
        const std::vector<std::int32_t> chosen =
            select_in_region(assignment.omega[k], importance, keep_counts[k]);
        result.kept_indices.insert(result.kept_indices.end(), chosen.begin(), chosen.end());
    }
    std::sort(result.kept_indices.begin(), result.kept_indices.end());

    if (segmentation_out != nullptr) {
        *segmentation_out = std::move(spmap);
    }
    return result;
}

PruneResult prune(const ImageBuffer& image, const TokenGrid& grid, const ImportanceMap& importance,
                  const PruneConfig& config) {
    return prune(image, grid, importance, config, nullptr);
}

}  // namespace altp
