// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/ddf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace altp {

namespace {

void check_image_against_map(const ImageBuffer& image, const SuperpixelMap& spmap) {
    if (image.width != spmap.width || image.height != spmap.height) {
        throw Error(ErrorCode::dimension_mismatch,
                    "image and superpixel map dimensions differ");
    }
}

}  // namespace

std::vector<RegionStats> collect_region_stats(const ImageBuffer& image,
                                              const SuperpixelMap& spmap) {
    check_image_against_map(image, spmap);
    const auto k_regions = static_cast<std::size_t>(spmap.region_count);
    const int ch = image.channels;

    // Single-pass Welford per region and channel. Constant regions come out
    // at exactly zero variance, which the uniform-weight fallback relies on.
    std::vector<RegionStats> stats(k_regions);
    std::vector<double> mean(k_regions * static_cast<std::size_t>(ch), 0.0);
    std::vector<double> m2(k_regions * static_cast<std::size_t>(ch), 0.0);

    const std::size_t pixels = image.pixel_count();
    for (std::size_t p = 0; p < pixels; ++p) {
        const auto k = static_cast<std::size_t>(spmap.labels[p]);
        const auto count = static_cast<double>(++stats[k].pixel_count);
        for (int c = 0; c < ch; ++c) {
            const std::size_t slot = k * ch + static_cast<std::size_t>(c);
            const double v = image.data[p * ch + static_cast<std::size_t>(c)];
            const double delta = v - mean[slot];
            mean[slot] += delta / count;
            m2[slot] += delta * (v - mean[slot]);
        }
    }
    for (std::size_t k = 0; k < k_regions; ++k) {
        double var = 0.0;
        for (int c = 0; c < ch; ++c) {
            var += m2[k * ch + static_cast<std::size_t>(c)] /
                   static_cast<double>(stats[k].pixel_count);
        }
        stats[k].variance = var / ch;
    }
    return stats;
}

double region_variance(const ImageBuffer& image, const SuperpixelMap& spmap,
                       std::int32_t region_id) {
    check_image_against_map(image, spmap);
    if (region_id < 0 || region_id >= spmap.region_count) {
        throw Error(ErrorCode::invalid_argument,
                    "unknown region id " + std::to_string(region_id));
    }
    const int ch = image.channels;
    std::vector<double> mean(static_cast<std::size_t>(ch), 0.0);
    std::vector<double> m2(static_cast<std::size_t>(ch), 0.0);
    std::int64_t count = 0;
    const std::size_t pixels = image.pixel_count();
    for (std::size_t p = 0; p < pixels; ++p) {
        if (spmap.labels[p] != region_id) continue;
        const auto n = static_cast<double>(++count);
        for (int c = 0; c < ch; ++c) {
            const double v = image.data[p * ch + static_cast<std::size_t>(c)];
            const double delta = v - mean[static_cast<std::size_t>(c)];
            mean[static_cast<std::size_t>(c)] += delta / n;
            m2[static_cast<std::size_t>(c)] += delta * (v - mean[static_cast<std::size_t>(c)]);
        }
    }
    if (count == 0) {
        throw Error(ErrorCode::invalid_argument,
                    "region " + std::to_string(region_id) + " has no pixels");
    }
    double var = 0.0;
    for (int c = 0; c < ch; ++c) {
        var += m2[static_cast<std::size_t>(c)] / static_cast<double>(count);
    }
    return var / ch;
}

std::vector<double> information_density(const std::vector<RegionStats>& stats,
                                        std::int64_t total_pixels) {
    if (total_pixels <= 0) {
        throw Error(ErrorCode::invalid_argument, "total_pixels must be > 0");
    }
    std::vector<double> densities(stats.size());
    for (std::size_t k = 0; k < stats.size(); ++k) {
        const double area_ratio =
            static_cast<double>(stats[k].pixel_count) / static_cast<double>(total_pixels);
        densities[k] = stats[k].variance * std::sqrt(area_ratio);
    }
    return densities;
}

std::vector<double> allocation_weights(const std::vector<double>& densities, double alpha) {
    if (densities.empty()) {
        throw Error(ErrorCode::invalid_argument, "at least one region required");
    }
    if (!(alpha > 1.0)) {
        throw Error(ErrorCode::invalid_argument, "alpha must be > 1");
    }
    const std::size_t k_regions = densities.size();
    const double max_d = *std::max_element(densities.begin(), densities.end());
    std::vector<double> weights(k_regions);
    if (max_d <= 0.0) {
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(k_regions));
        return weights;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < k_regions; ++k) {
        // Divide by max(d) first; the ratio is scale-free.
        weights[k] = std::exp((densities[k] / max_d) / alpha);
        sum += weights[k];
    }
    for (double& w : weights) w /= sum;
    return weights;
}

std::vector<std::int32_t> apply_budget_policy(const std::vector<double>& quotas,
                                              const std::vector<std::int32_t>& caps, int budget,
                                              BudgetPolicy policy) {
    if (quotas.size() != caps.size()) {
        throw Error(ErrorCode::dimension_mismatch, "one cap per quota required");
    }
    const std::size_t k_regions = quotas.size();
    std::vector<std::int32_t> keep(k_regions, 0);

    if (policy == BudgetPolicy::paper_ceiling) {
        for (std::size_t k = 0; k < k_regions; ++k) {
            if (caps[k] <= 0 || quotas[k] <= 0.0) continue;
            std::int64_t count = ceil_with_guard(quotas[k]);
            count = std::clamp<std::int64_t>(count, 1, caps[k]);
            keep[k] = static_cast<std::int32_t>(count);
        }
        return keep;
    }

    // exact_budget: capped largest remainder.
    std::int64_t cap_total = 0;
    for (std::int32_t c : caps) cap_total += std::max(c, 0);
    const std::int64_t target = std::min<std::int64_t>(budget, cap_total);
    if (target <= 0) return keep;

    std::vector<double> fracs(k_regions, 0.0);
    std::int64_t assigned = 0;
    for (std::size_t k = 0; k < k_regions; ++k) {
        if (caps[k] <= 0) continue;
        const double quota = std::max(quotas[k], 0.0);
        const auto base = static_cast<std::int64_t>(std::floor(quota));
        keep[k] = static_cast<std::int32_t>(std::min<std::int64_t>(base, caps[k]));
        fracs[k] = quota - static_cast<double>(base);
        assigned += keep[k];
    }

    // Region order for remainder seats: largest fraction first, smaller id
    // on ties.
    std::vector<std::size_t> order(k_regions);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fracs[a] != fracs[b]) return fracs[a] > fracs[b];
        return a < b;
    });

    if (assigned > target) {
        // Only reachable when float rounding pushed several quotas past an
        // integer boundary at once; strip seats from the smallest fractions.
        for (auto it = order.rbegin(); it != order.rend() && assigned > target; ++it) {
            while (keep[*it] > 0 && assigned > target) {
                --keep[*it];
                --assigned;
            }
        }
    }
    while (assigned < target) {
        bool progressed = false;
        for (std::size_t idx : order) {
            if (assigned == target) break;
            if (keep[idx] < caps[idx]) {
                ++keep[idx];
                ++assigned;
                progressed = true;
            }
        }
        if (!progressed) break;  // all caps saturated
    }

    // Floor guarantee: when the budget covers every region with capacity,
    // none of them goes home empty. Donors are the largest allocations.
    std::int64_t fillable = 0;
    for (std::size_t k = 0; k < k_regions; ++k) {
        if (caps[k] > 0) ++fillable;
    }
    if (target >= fillable) {
        for (std::size_t k = 0; k < k_regions; ++k) {
            if (caps[k] <= 0 || keep[k] > 0) continue;
            std::size_t donor = k_regions;
            for (std::size_t j = 0; j < k_regions; ++j) {
                if (keep[j] >= 2 && (donor == k_regions || keep[j] > keep[donor])) {
                    donor = j;
                }
            }
            if (donor == k_regions) break;  // nothing to take from
            --keep[donor];
            ++keep[k];
        }
    }
    return keep;
}

std::vector<std::int32_t> allocate_budget(const std::vector<double>& weights, double keep_ratio,
                                          int v_total, const std::vector<std::int32_t>& omega_sizes,
                                          BudgetPolicy policy) {
    if (!(keep_ratio > 0.0 && keep_ratio <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "keep_ratio must be in (0, 1]");
    }
    if (weights.size() != omega_sizes.size()) {
        throw Error(ErrorCode::dimension_mismatch, "one omega size per weight required");
    }
    const double token_target = keep_ratio * static_cast<double>(v_total);
    std::vector<double> quotas(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        quotas[k] = weights[k] * token_target;
    }
    return apply_budget_policy(quotas, omega_sizes, token_budget(keep_ratio, v_total), policy);
}

}  // namespace altp
