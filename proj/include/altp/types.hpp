// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace altp {

enum class ErrorCode {
    file_not_found,
    io_failure,
    unsupported_format,
    truncated_data,
    zero_dimensions,
    malformed_document,
    invalid_argument,
    dimension_mismatch,
    internal_error,
};

const char* to_string(ErrorCode code);

/// All library failures are reported as Error; the code distinguishes bad
/// input (CLI exit 1) from internal faults (CLI exit 2).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), m_code(code) {}

    ErrorCode code() const noexcept { return m_code; }

private:
    ErrorCode m_code;
};

bool is_input_error(ErrorCode code);

/// Decoded raster image. Row-major, channel-interleaved, intensities
/// normalized to [0,1] regardless of the source bit depth.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 (grayscale) or 3 (RGB)
    std::vector<double> data;

    double at(int x, int y, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double& at(int x, int y, int c) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

    bool operator==(const ImageBuffer&) const = default;
};

void validate(const ImageBuffer& image);

/// SLIC parameters: target region count N, compactness C (color/space
/// trade-off), Gaussian pre-smoothing sigma, and the iteration cap.
struct SuperpixelParams {
    int num_superpixels = 10;
    double compactness = 5.0;
    double sigma = 1.0;
    int max_iterations = 10;

    bool operator==(const SuperpixelParams&) const = default;
};

void validate(const SuperpixelParams& params, int image_width, int image_height);

/// Pixel -> region label field. Every label in [0, region_count) is held by
/// at least one pixel, and each region is one 4-connected component.
struct SuperpixelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;  // row-major
    std::int32_t region_count = 0;

    std::int32_t label_at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const SuperpixelMap&) const = default;
};

void validate(const SuperpixelMap& spmap);

/// Patch-grid geometry binding pixels to visual-token indices. Token indices
/// are row-major over the grid; the last row/column of patches may be clipped
/// at the image boundary.
struct TokenGrid {
    int grid_rows = 0;
    int grid_cols = 0;
    int patch_height = 0;
    int patch_width = 0;
    int total_tokens = 0;  // grid_rows * grid_cols

    int token_index(int row, int col) const { return row * grid_cols + col; }
    int token_row(int token) const { return token / grid_cols; }
    int token_col(int token) const { return token % grid_cols; }

    bool operator==(const TokenGrid&) const = default;
};

/// Region -> token-set map. The omega sets partition [0, total_tokens):
/// disjoint, exhaustive, each sorted ascending.
struct RegionTokenAssignment {
    std::vector<std::vector<std::int32_t>> omega;
    std::vector<std::int32_t> token_to_region;

    std::vector<std::int32_t> omega_sizes() const {
        std::vector<std::int32_t> sizes;
        sizes.reserve(omega.size());
        for (const auto& set : omega) sizes.push_back(static_cast<std::int32_t>(set.size()));
        return sizes;
    }

    bool operator==(const RegionTokenAssignment&) const = default;
};

enum class ImportanceSource { external, variance_proxy, uniform };

/// Per-token scalar importance. Stands in for the attention magnitude a host
/// model would provide; all values finite and >= 0.
struct ImportanceMap {
    std::vector<double> values;
    ImportanceSource source = ImportanceSource::uniform;

    bool operator==(const ImportanceMap&) const = default;
};

void validate(const ImportanceMap& map, int v_total);

enum class PruneMode { ddc_uniform, altp, global_topk };
enum class BudgetPolicy { paper_ceiling, exact_budget };
enum class VarianceSpace { rgb, lab };

struct PruneConfig {
    double keep_ratio = 1.0;  // r in (0, 1]
    double alpha = 1.5;       // weight flattening factor, > 1
    PruneMode mode = PruneMode::altp;
    BudgetPolicy budget_policy = BudgetPolicy::exact_budget;
    VarianceSpace variance_space = VarianceSpace::rgb;
    SuperpixelParams superpixel;

    bool operator==(const PruneConfig&) const = default;
};

void validate(const PruneConfig& config);

/// Output of the pruning pipeline: the kept token indices (strictly
/// ascending, original patch order) plus per-region diagnostics.
struct PruneResult {
    std::vector<std::int32_t> kept_indices;
    std::vector<double> densities;
    std::vector<double> weights;
    std::vector<double> allocations;
    std::vector<std::int32_t> kept_per_region;
    std::optional<double> flops_remaining_ratio;

    bool operator==(const PruneResult&) const = default;
};

/// Number of tokens retained at keep-ratio r out of v_total. Floor with an
/// epsilon guard: 576 tokens at r=0.10 retain 57, at r=0.25 retain 144, and
/// products that are exact integers are immune to float rounding.
int token_budget(double keep_ratio, int v_total);

/// floor(x) robust against values sitting one rounding error below an
/// integer they mathematically equal.
long long floor_with_guard(double x);

/// ceil(x) robust against values sitting one rounding error above an
/// integer they mathematically equal.
long long ceil_with_guard(double x);

const char* to_string(PruneMode mode);
const char* to_string(BudgetPolicy policy);
const char* to_string(VarianceSpace space);
const char* to_string(ImportanceSource source);
PruneMode prune_mode_from_string(const std::string& name);
BudgetPolicy budget_policy_from_string(const std::string& name);
VarianceSpace variance_space_from_string(const std::string& name);
ImportanceSource importance_source_from_string(const std::string& name);

}  // namespace altp
