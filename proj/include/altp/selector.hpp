// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "altp/types.hpp"

namespace altp {

/// Model-free importance stand-in: per-token population variance of the
/// patch pixels, channel-averaged.
ImportanceMap importance_from_variance(const ImageBuffer& image, const TokenGrid& grid);

/// All-equal importance; selection falls back to original raster order.
ImportanceMap uniform_importance(int v_total);

/// The keep_k highest-importance tokens of omega_k, ties broken toward the
/// smaller token index; result sorted ascending.
std::vector<std::int32_t> select_in_region(const std::vector<std::int32_t>& omega_k,
                                           const ImportanceMap& importance, int keep_k);

/// Full pruning pipeline. altp mode:
///   segment -> bind tokens to regions -> density -> weights -> per-region
///   budget -> per-region top-k by importance.
/// ddc_uniform replaces the weights with the uniform keep rate; global_topk
/// skips segmentation entirely and keeps the budget-many globally
/// highest-importance tokens. segmentation_out, when non-null, receives the
/// superpixel map (left untouched in global_topk mode).
PruneResult prune(const ImageBuffer& image, const TokenGrid& grid, const ImportanceMap& importance,
                  const PruneConfig& config, SuperpixelMap* segmentation_out);

PruneResult prune(const ImageBuffer& image, const TokenGrid& grid, const ImportanceMap& importance,
                  const PruneConfig& config);

}  // namespace altp
