// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/flops.hpp"

#include <cmath>

namespace altp {

namespace {

unsigned __int128 layer_flops_exact(std::int64_t n, std::int64_t d, std::int64_t m) {
    const auto un = static_cast<unsigned __int128>(n);
    const auto ud = static_cast<unsigned __int128>(d);
    const auto um = static_cast<unsigned __int128>(m);
    return 4 * un * ud * ud + 2 * un * un * ud + 2 * un * ud * um;
}

}  // namespace

void validate(const FlopsConfig& config) {
    if (config.hidden_size < 1 || config.ffn_intermediate < 1 || config.num_layers < 1 ||
        config.tokens_before < 1) {
        throw Error(ErrorCode::invalid_argument,
                    "hidden_size, ffn_intermediate, num_layers, tokens_before must be >= 1");
    }
    if (config.prune_layer < 0 || config.prune_layer > config.num_layers) {
        throw Error(ErrorCode::invalid_argument, "prune_layer must be in [0, num_layers]");
    }
    if (!(config.drop_ratio >= 0.0 && config.drop_ratio <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "drop_ratio must be in [0, 1]");
    }
}

double layer_flops(std::int64_t n, std::int64_t d, std::int64_t m) {
    if (n < 0 || d < 1 || m < 1) {
        throw Error(ErrorCode::invalid_argument, "layer_flops requires n >= 0, d >= 1, m >= 1");
    }
    return static_cast<double>(layer_flops_exact(n, d, m));
}

FlopsEstimate remaining_ratio(const FlopsConfig& config) {
    validate(config);
    const std::int64_t n = config.tokens_before;
    const std::int64_t n_hat =
        floor_with_guard((1.0 - config.drop_ratio) * static_cast<double>(n));

    const double full = layer_flops(n, config.hidden_size, config.ffn_intermediate);
    const double pruned = layer_flops(n_hat, config.hidden_size, config.ffn_intermediate);
    const double layers = static_cast<double>(config.num_layers);
    const double before = static_cast<double>(config.prune_layer);

    FlopsEstimate estimate;
    estimate.tokens_after = n_hat;
    estimate.remaining_ratio = (before * full + (layers - before) * pruned) / (layers * full);
    estimate.reduction_ratio = 1.0 - estimate.remaining_ratio;
    return estimate;
}

}  // namespace altp
