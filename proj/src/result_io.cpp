// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/result_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace altp {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const PruneConfig& config) {
    ordered_json j;
    j["mode"] = to_string(config.mode);
    j["budget_policy"] = to_string(config.budget_policy);
    j["keep_ratio"] = config.keep_ratio;
    j["alpha"] = config.alpha;
    j["variance_space"] = to_string(config.variance_space);
    j["superpixel"] = {
        {"num_superpixels", config.superpixel.num_superpixels},
        {"compactness", config.superpixel.compactness},
        {"sigma", config.superpixel.sigma},
        {"max_iterations", config.superpixel.max_iterations},
    };
    return j;
}

PruneConfig config_from_json(const ordered_json& j) {
    PruneConfig config;
    config.mode = prune_mode_from_string(j.at("mode").get<std::string>());
    config.budget_policy = budget_policy_from_string(j.at("budget_policy").get<std::string>());
    config.keep_ratio = j.at("keep_ratio").get<double>();
    config.alpha = j.at("alpha").get<double>();
    config.variance_space = variance_space_from_string(j.at("variance_space").get<std::string>());
    const auto& sp = j.at("superpixel");
    config.superpixel.num_superpixels = sp.at("num_superpixels").get<int>();
    config.superpixel.compactness = sp.at("compactness").get<double>();
    config.superpixel.sigma = sp.at("sigma").get<double>();
    config.superpixel.max_iterations = sp.at("max_iterations").get<int>();
    return config;
}

ordered_json grid_to_json(const TokenGrid& grid) {
    ordered_json j;
    j["rows"] = grid.grid_rows;
    j["cols"] = grid.grid_cols;
    j["patch_height"] = grid.patch_height;
    j["patch_width"] = grid.patch_width;
    j["total_tokens"] = grid.total_tokens;
    return j;
}

TokenGrid grid_from_json(const ordered_json& j) {
    TokenGrid grid;
    grid.grid_rows = j.at("rows").get<int>();
    grid.grid_cols = j.at("cols").get<int>();
    grid.patch_height = j.at("patch_height").get<int>();
    grid.patch_width = j.at("patch_width").get<int>();
    grid.total_tokens = j.at("total_tokens").get<int>();
    return grid;
}

}  // namespace

SuperpixelMap ResultDocument::segmentation() const {
    SuperpixelMap spmap;
    spmap.width = manifest.resized_width;
    spmap.height = manifest.resized_height;
    spmap.labels = labels;
    spmap.region_count = region_count;
    return spmap;
}

ImportanceMap parse_importance(const std::string& text, int v_total) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::malformed_document,
                    std::string("importance document is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("v_total") || !j.contains("values")) {
        throw Error(ErrorCode::malformed_document,
                    "importance document must contain v_total and values");
    }
    const int declared = j.at("v_total").get<int>();
    if (declared != v_total) {
        throw Error(ErrorCode::dimension_mismatch,
                    "importance v_total " + std::to_string(declared) +
                        " does not match the token grid (" + std::to_string(v_total) + ")");
    }
    const auto& values = j.at("values");
    if (!values.is_array() || values.size() != static_cast<std::size_t>(v_total)) {
        throw Error(ErrorCode::dimension_mismatch,
                    "importance values length does not match v_total");
    }
    ImportanceMap map;
    map.source = ImportanceSource::external;
    map.values.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i].is_number()) {
            throw Error(ErrorCode::invalid_argument,
                        "importance value at index " + std::to_string(i) + " is not a number");
        }
        const double v = values[i].get<double>();
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorCode::invalid_argument,
                        "importance value at index " + std::to_string(i) +
                            " is negative or non-finite");
        }
        map.values.push_back(v);
    }
    return map;
}

ImportanceMap load_importance(const std::string& path, int v_total) {
    return parse_importance(read_text_file(path), v_total);
}

std::string serialize_result(const ResultDocument& document) {
    ordered_json j;
    j["format"] = k_result_format;
    j["tool_version"] = document.manifest.tool_version;

    ordered_json manifest;
    manifest["image_path"] = document.manifest.image_path;
    manifest["image_hash"] = document.manifest.image_hash;
    manifest["importance_path"] = document.manifest.importance_path;
    manifest["importance_hash"] = document.manifest.importance_hash;
    manifest["importance_source"] = to_string(document.manifest.importance_source);
    manifest["config"] = config_to_json(document.manifest.config);
    manifest["grid"] = grid_to_json(document.manifest.grid);
    manifest["resized_width"] = document.manifest.resized_width;
    manifest["resized_height"] = document.manifest.resized_height;
    j["manifest"] = manifest;

    j["region_count"] = document.region_count;
    j["budget"] = document.budget;
    j["omega_sizes"] = document.omega_sizes;
    j["densities"] = document.result.densities;
    j["weights"] = document.result.weights;
    j["allocations"] = document.result.allocations;
    j["kept_per_region"] = document.result.kept_per_region;
    j["kept_indices"] = document.result.kept_indices;
    if (document.result.flops_remaining_ratio.has_value()) {
        j["flops_remaining_ratio"] = *document.result.flops_remaining_ratio;
    } else {
        j["flops_remaining_ratio"] = nullptr;
    }
    j["labels"] = document.labels;
    return j.dump(2) + "\n";
}

void emit_result(const ResultDocument& document, const std::string& path) {
    write_text_file(path, serialize_result(document));
}

ResultDocument parse_result_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::malformed_document,
                    std::string("result document is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != k_result_format) {
            throw Error(ErrorCode::malformed_document, "unknown result document format");
        }
        ResultDocument document;
        const auto& manifest = j.at("manifest");
        document.manifest.tool_version = j.at("tool_version").get<std::string>();
        document.manifest.image_path = manifest.at("image_path").get<std::string>();
        document.manifest.image_hash = manifest.at("image_hash").get<std::string>();
        document.manifest.importance_path = manifest.at("importance_path").get<std::string>();
        document.manifest.importance_hash = manifest.at("importance_hash").get<std::string>();
        document.manifest.importance_source =
            importance_source_from_string(manifest.at("importance_source").get<std::string>());
        document.manifest.config = config_from_json(manifest.at("config"));
        document.manifest.grid = grid_from_json(manifest.at("grid"));
        document.manifest.resized_width = manifest.at("resized_width").get<int>();
        document.manifest.resized_height = manifest.at("resized_height").get<int>();

        document.region_count = j.at("region_count").get<std::int32_t>();
        document.budget = j.at("budget").get<int>();
        document.omega_sizes = j.at("omega_sizes").get<std::vector<std::int32_t>>();
        document.result.densities = j.at("densities").get<std::vector<double>>();
        document.result.weights = j.at("weights").get<std::vector<double>>();
        document.result.allocations = j.at("allocations").get<std::vector<double>>();
        document.result.kept_per_region = j.at("kept_per_region").get<std::vector<std::int32_t>>();
        document.result.kept_indices = j.at("kept_indices").get<std::vector<std::int32_t>>();
        if (!j.at("flops_remaining_ratio").is_null()) {
            document.result.flops_remaining_ratio = j.at("flops_remaining_ratio").get<double>();
        }
        document.labels = j.at("labels").get<std::vector<std::int32_t>>();
        return document;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::malformed_document,
                    std::string("result document missing or mistyped field: ") + e.what());
    }
}

ResultDocument parse_result(const std::string& path) {
    return parse_result_text(read_text_file(path));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_failure, "cannot open file for writing: " + path);
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error(ErrorCode::io_failure, "failed writing file: " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::file_not_found, "cannot open file: " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error(ErrorCode::io_failure, "failed reading file: " + path);
    }
    return text;
}

}  // namespace altp
