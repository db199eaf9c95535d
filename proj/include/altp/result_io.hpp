// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "altp/types.hpp"

namespace altp {

inline constexpr const char* k_tool_version = "0.1.0";
inline constexpr const char* k_result_format = "altp-result/1";
inline constexpr const char* k_segmentation_format = "altp-segmentation/1";

/// Provenance stamp embedded in every emitted result.
struct RunManifest {
    std::string image_path;
    std::string image_hash;
    std::string importance_path;  // empty when no external map was used
    std::string importance_hash;
    ImportanceSource importance_source = ImportanceSource::variance_proxy;
    PruneConfig config;
    TokenGrid grid;
    int resized_width = 0;
    int resized_height = 0;
    std::string tool_version = k_tool_version;

    bool operator==(const RunManifest&) const = default;
};

/// Everything a `prune` run produces. Carries the superpixel label field so
/// overlays can be re-rendered without re-running the pipeline; labels stay
/// empty in global_topk mode.
struct ResultDocument {
    RunManifest manifest;
    PruneResult result;
    std::int32_t region_count = 0;
    int budget = 0;
    std::vector<std::int32_t> omega_sizes;
    std::vector<std::int32_t> labels;

    SuperpixelMap segmentation() const;

    bool operator==(const ResultDocument&) const = default;
};

/// Parse {"v_total": N, "values": [...]} and validate length, finiteness and
/// non-negativity. Errors name the offending index.
ImportanceMap load_importance(const std::string& path, int v_total);
ImportanceMap parse_importance(const std::string& text, int v_total);

/// Serialization is key-ordered and byte-reproducible: equal documents
/// produce equal bytes.
std::string serialize_result(const ResultDocument& document);
void emit_result(const ResultDocument& document, const std::string& path);
ResultDocument parse_result_text(const std::string& text);
ResultDocument parse_result(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace altp
