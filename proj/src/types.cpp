// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/types.hpp"

#include <cmath>

namespace altp {

namespace {

// Guard for products like 0.1 * 576 (= 57.6) vs 0.07 * 100 whose float value
// lands one ulp past the integer they mathematically equal.
constexpr double k_round_guard = 1e-9;

}  // namespace

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::file_not_found: return "file_not_found";
        case ErrorCode::io_failure: return "io_failure";
        case ErrorCode::unsupported_format: return "unsupported_format";
        case ErrorCode::truncated_data: return "truncated_data";
        case ErrorCode::zero_dimensions: return "zero_dimensions";
        case ErrorCode::malformed_document: return "malformed_document";
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::dimension_mismatch: return "dimension_mismatch";
        case ErrorCode::internal_error: return "internal_error";
    }
    return "unknown";
}

bool is_input_error(ErrorCode code) {
    return code != ErrorCode::internal_error;
}

void validate(const ImageBuffer& image) {
    if (image.width < 1 || image.height < 1) {
        throw Error(ErrorCode::zero_dimensions, "image dimensions must be at least 1x1");
    }
    if (image.channels != 1 && image.channels != 3) {
        throw Error(ErrorCode::invalid_argument, "image must have 1 or 3 channels");
    }
    const std::size_t expected = image.pixel_count() * image.channels;
    if (image.data.size() != expected) {
        throw Error(ErrorCode::invalid_argument, "image data length does not match dimensions");
    }
    for (double v : image.data) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error(ErrorCode::invalid_argument, "image intensity outside [0,1]");
        }
    }
}

void validate(const SuperpixelParams& params, int image_width, int image_height) {
    if (params.num_superpixels < 1) {
        throw Error(ErrorCode::invalid_argument, "num_superpixels must be >= 1");
    }
    const long long pixels = static_cast<long long>(image_width) * image_height;
    if (params.num_superpixels > pixels) {
        throw Error(ErrorCode::invalid_argument, "num_superpixels exceeds pixel count");
    }
    if (!(params.compactness > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "compactness must be > 0");
    }
    if (!(params.sigma >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "sigma must be >= 0");
    }
    if (params.max_iterations < 1) {
        throw Error(ErrorCode::invalid_argument, "max_iterations must be >= 1");
    }
}

void validate(const SuperpixelMap& spmap) {
    if (spmap.width < 1 || spmap.height < 1) {
        throw Error(ErrorCode::zero_dimensions, "superpixel map dimensions must be at least 1x1");
    }
    if (spmap.labels.size() != static_cast<std::size_t>(spmap.width) * spmap.height) {
        throw Error(ErrorCode::invalid_argument, "label field length does not match dimensions");
    }
    if (spmap.region_count < 1) {
        throw Error(ErrorCode::invalid_argument, "region_count must be >= 1");
    }
    std::vector<bool> seen(static_cast<std::size_t>(spmap.region_count), false);
    for (std::int32_t label : spmap.labels) {
        if (label < 0 || label >= spmap.region_count) {
            throw Error(ErrorCode::invalid_argument, "pixel label outside [0, region_count)");
        }
        seen[static_cast<std::size_t>(label)] = true;
    }
    for (std::int32_t k = 0; k < spmap.region_count; ++k) {
        if (!seen[static_cast<std::size_t>(k)]) {
            throw Error(ErrorCode::invalid_argument,
                        "region " + std::to_string(k) + " has no pixels");
        }
    }
}

void validate(const ImportanceMap& map, int v_total) {
    if (map.values.size() != static_cast<std::size_t>(v_total)) {
        throw Error(ErrorCode::dimension_mismatch,
                    "importance length " + std::to_string(map.values.size()) +
                        " does not match v_total " + std::to_string(v_total));
    }
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const double v = map.values[i];
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorCode::invalid_argument,
                        "importance value at index " + std::to_string(i) +
                            " is negative or non-finite");
        }
    }
}

void validate(const PruneConfig& config) {
    if (!(config.keep_ratio > 0.0 && config.keep_ratio <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "keep_ratio must be in (0, 1]");
    }
    if (!(config.alpha > 1.0)) {
        throw Error(ErrorCode::invalid_argument, "alpha must be > 1");
    }
}

long long floor_with_guard(double x) {
    return static_cast<long long>(std::floor(x + k_round_guard));
}

long long ceil_with_guard(double x) {
    return static_cast<long long>(std::ceil(x - k_round_guard));
}

int token_budget(double keep_ratio, int v_total) {
    const long long budget = floor_with_guard(keep_ratio * v_total);
    if (budget < 0) return 0;
    if (budget > v_total) return v_total;
    return static_cast<int>(budget);
}

const char* to_string(PruneMode mode) {
    switch (mode) {
        case PruneMode::ddc_uniform: return "ddc_uniform";
        case PruneMode::altp: return "altp";
        case PruneMode::global_topk: return "global_topk";
    }
    return "unknown";
}

const char* to_string(BudgetPolicy policy) {
    switch (policy) {
        case BudgetPolicy::paper_ceiling: return "paper_ceiling";
        case BudgetPolicy::exact_budget: return "exact_budget";
    }
    return "unknown";
}

const char* to_string(VarianceSpace space) {
    switch (space) {
        case VarianceSpace::rgb: return "rgb";
        case VarianceSpace::lab: return "lab";
    }
    return "unknown";
}

const char* to_string(ImportanceSource source) {
    switch (source) {
        case ImportanceSource::external: return "external";
        case ImportanceSource::variance_proxy: return "variance_proxy";
        case ImportanceSource::uniform: return "uniform";
    }
    return "unknown";
}

PruneMode prune_mode_from_string(const std::string& name) {
    if (name == "ddc_uniform" || name == "ddc") return PruneMode::ddc_uniform;
    if (name == "altp") return PruneMode::altp;
    if (name == "global_topk" || name == "global") return PruneMode::global_topk;
    throw Error(ErrorCode::invalid_argument, "unknown prune mode: " + name);
}

BudgetPolicy budget_policy_from_string(const std::string& name) {
    if (name == "paper_ceiling" || name == "ceiling") return BudgetPolicy::paper_ceiling;
    if (name == "exact_budget" || name == "exact") return BudgetPolicy::exact_budget;
    throw Error(ErrorCode::invalid_argument, "unknown budget policy: " + name);
}

VarianceSpace variance_space_from_string(const std::string& name) {
    if (name == "rgb") return VarianceSpace::rgb;
    if (name == "lab") return VarianceSpace::lab;
    throw Error(ErrorCode::invalid_argument, "unknown variance space: " + name);
}

ImportanceSource importance_source_from_string(const std::string& name) {
    if (name == "external") return ImportanceSource::external;
    if (name == "variance_proxy") return ImportanceSource::variance_proxy;
    if (name == "uniform") return ImportanceSource::uniform;
    throw Error(ErrorCode::invalid_argument, "unknown importance source: " + name);
}

}  // namespace altp
