// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "altp/types.hpp"

namespace altp {

/// Transformer cost model parameters. Image tokens are dropped after layer
/// prune_layer out of num_layers; text tokens are excluded from the count.
struct FlopsConfig {
    std::int64_t hidden_size = 4096;      // d
    std::int64_t ffn_intermediate = 11008;  // m
    std::int64_t num_layers = 32;         // T
    std::int64_t prune_layer = 2;         // K: tokens pruned after this layer
    std::int64_t tokens_before = 576;     // n
    double drop_ratio = 0.0;              // R in [0, 1]

    bool operator==(const FlopsConfig&) const = default;
};

void validate(const FlopsConfig& config);

/// Per-layer FLOPs for one transformer block with multi-head attention and
/// FFN: 4*n*d^2 + 2*n^2*d + 2*n*d*m. Computed in 128-bit integer arithmetic
/// and returned as the correctly rounded double.
double layer_flops(std::int64_t n, std::int64_t d, std::int64_t m);

struct FlopsEstimate {
    std::int64_t tokens_after = 0;  // floor((1 - R) * n)
    double remaining_ratio = 1.0;   // [K*f(n) + (T-K)*f(n_hat)] / (T*f(n))
    double reduction_ratio = 0.0;   // 1 - remaining_ratio

    bool operator==(const FlopsEstimate&) const = default;
};

/// Remaining/reduced fraction of image-token FLOPs when pruning n down to
/// floor((1-R)*n) tokens after layer K of T.
FlopsEstimate remaining_ratio(const FlopsConfig& config);

}  // namespace altp
