// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "altp/types.hpp"

namespace altp {

/// Per-region statistics feeding the information density.
struct RegionStats {
    std::int64_t pixel_count = 0;
    double variance = 0.0;  // channel-averaged population variance
    double density = 0.0;   // variance * sqrt(pixel_count / total_pixels)

    bool operator==(const RegionStats&) const = default;
};

/// Channel-averaged population variance of the pixels in one region,
/// computed on the normalized image (two-pass). Unknown region id is an
/// error.
double region_variance(const ImageBuffer& image, const SuperpixelMap& spmap,
                       std::int32_t region_id);

/// Single pass over the image collecting pixel counts and variances for all
/// regions; density is left at 0.
std::vector<RegionStats> collect_region_stats(const ImageBuffer& image,
                                              const SuperpixelMap& spmap);

/// d_k = Var(S_k) * sqrt(|P_k| / |P_total|).
std::vector<double> information_density(const std::vector<RegionStats>& stats,
                                        std::int64_t total_pixels);

/// Softmax-like weights w_k = exp(d_k / (alpha * max(d))) / sum_j(...).
/// All-zero densities fall back to uniform 1/K. The max(d) division is
/// applied to each d_k before anything else, which makes the weights exactly
/// invariant under power-of-two scaling of d.
std::vector<double> allocation_weights(const std::vector<double>& densities, double alpha);

/// Turn fractional per-region quotas into integer keep counts.
///   paper_ceiling: keep_k = min(ceil(quota_k), cap_k).
///   exact_budget:  capped largest-remainder allocation summing to
///                  min(budget, sum of caps); when that total covers every
///                  region with a nonzero cap, each such region gets >= 1.
std::vector<std::int32_t> apply_budget_policy(const std::vector<double>& quotas,
                                              const std::vector<std::int32_t>& caps, int budget,
                                              BudgetPolicy policy);

/// Ratio-based entry point: quotas T_k = w_k * (r * v_total) and budget
/// floor(r * v_total), then apply_budget_policy.
std::vector<std::int32_t> allocate_budget(const std::vector<double>& weights, double keep_ratio,
                                          int v_total, const std::vector<std::int32_t>& omega_sizes,
                                          BudgetPolicy policy);

}  // namespace altp
