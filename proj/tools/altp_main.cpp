// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "altp/color.hpp"
#include "altp/ddc.hpp"
#include "altp/flops.hpp"
#include "altp/image_io.hpp"
#include "altp/overlay.hpp"
#include "altp/result_io.hpp"
#include "altp/selector.hpp"
#include "altp/slic.hpp"
#include "altp/types.hpp"

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct GridSpec {
    int rows = 24;
    int cols = 24;
};

GridSpec parse_grid_spec(const std::string& text) {
    GridSpec spec;
    char sep = 0;
    char trailing = 0;
    const int matched =
        std::sscanf(text.c_str(), "%d%c%d%c", &spec.rows, &sep, &spec.cols, &trailing);
    if (matched != 3 || (sep != 'x' && sep != 'X') || spec.rows < 1 || spec.cols < 1) {
        throw altp::Error(altp::ErrorCode::invalid_argument,
                          "grid must be ROWSxCOLS, e.g. 24x24");
    }
    return spec;
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw altp::Error(altp::ErrorCode::io_failure,
                          "cannot create output directory: " + dir.string());
    }
    return dir;
}

struct SegmentArgs {
    std::string image_path;
    std::string out = ".";
    altp::SuperpixelParams params;
};

void run_segment(const SegmentArgs& args) {
    const std::vector<std::uint8_t> bytes = altp::read_file_bytes(args.image_path);
    const altp::ImageBuffer image = altp::decode_image(bytes);
    const altp::SuperpixelMap spmap = altp::slic_segment(image, args.params);

    const fs::path dir = ensure_out_dir(args.out);

    ordered_json j;
    j["format"] = altp::k_segmentation_format;
    j["tool_version"] = altp::k_tool_version;
    j["manifest"] = {
        {"image_path", args.image_path},
        {"image_hash", altp::content_hash(bytes)},
        {"superpixel",
         {{"num_superpixels", args.params.num_superpixels},
          {"compactness", args.params.compactness},
          {"sigma", args.params.sigma},
          {"max_iterations", args.params.max_iterations}}},
    };
    j["width"] = spmap.width;
    j["height"] = spmap.height;
    j["region_count"] = spmap.region_count;
    j["labels"] = spmap.labels;
    altp::write_text_file((dir / "segmentation.json").string(), j.dump(2) + "\n");

    altp::PruneResult empty;
    altp::TokenGrid grid;  // unused by the segments overlay
    altp::render_overlay(image, spmap, grid, empty, altp::OverlayKind::segments,
                         (dir / "segments.ppm").string());
}

struct PruneArgs {
    std::string image_path;
    std::string grid = "24x24";
    std::string importance_path;
    bool uniform_importance = false;
    std::string out = ".";
    altp::PruneConfig config;
    std::optional<std::int64_t> flops_d;
    std::optional<std::int64_t> flops_m;
    std::optional<std::int64_t> flops_layers;
    std::optional<std::int64_t> flops_prune_layer;
};

void run_prune(const PruneArgs& args) {
    altp::validate(args.config);
    const GridSpec grid_spec = parse_grid_spec(args.grid);

    const std::vector<std::uint8_t> bytes = altp::read_file_bytes(args.image_path);
    const altp::ImageBuffer original = altp::decode_image(bytes);
    const altp::TokenGrid grid = altp::build_token_grid(original.width, original.height,
                                                        grid_spec.rows, grid_spec.cols);

    // Segment at the encoder resolution: every patch exactly
    // patch_width x patch_height pixels.
    const int enc_width = grid.grid_cols * grid.patch_width;
    const int enc_height = grid.grid_rows * grid.patch_height;
    const altp::ImageBuffer image = altp::resize_bilinear(original, enc_width, enc_height);

    altp::RunManifest manifest;
    manifest.image_path = args.image_path;
    manifest.image_hash = altp::content_hash(bytes);
    manifest.config = args.config;
    manifest.grid = grid;
    manifest.resized_width = enc_width;
    manifest.resized_height = enc_height;

    altp::ImportanceMap importance;
    if (!args.importance_path.empty()) {
        const std::vector<std::uint8_t> imp_bytes = altp::read_file_bytes(args.importance_path);
        importance = altp::parse_importance(std::string(imp_bytes.begin(), imp_bytes.end()),
                                            grid.total_tokens);
        manifest.importance_path = args.importance_path;
        manifest.importance_hash = altp::content_hash(imp_bytes);
    } else if (args.uniform_importance) {
        importance = altp::uniform_importance(grid.total_tokens);
    } else {
        importance = altp::importance_from_variance(image, grid);
    }
    manifest.importance_source = importance.source;

    altp::SuperpixelMap spmap;
    altp::PruneResult result = altp::prune(image, grid, importance, args.config, &spmap);

    const bool want_flops = args.flops_d || args.flops_m || args.flops_layers ||
                            args.flops_prune_layer;
    if (want_flops) {
        altp::FlopsConfig flops;
        if (args.flops_d) flops.hidden_size = *args.flops_d;
        if (args.flops_m) flops.ffn_intermediate = *args.flops_m;
        if (args.flops_layers) flops.num_layers = *args.flops_layers;
        if (args.flops_prune_layer) flops.prune_layer = *args.flops_prune_layer;
        flops.tokens_before = grid.total_tokens;
        flops.drop_ratio =
            1.0 - static_cast<double>(result.kept_indices.size()) / grid.total_tokens;
        result.flops_remaining_ratio = altp::remaining_ratio(flops).remaining_ratio;
    }

    altp::ResultDocument document;
    document.manifest = manifest;
    document.budget = altp::token_budget(args.config.keep_ratio, grid.total_tokens);
    const bool has_regions = args.config.mode != altp::PruneMode::global_topk;
    if (has_regions) {
        document.region_count = spmap.region_count;
        document.omega_sizes = altp::assign_tokens_to_regions(spmap, grid).omega_sizes();
        document.labels = spmap.labels;
    }
    document.result = std::move(result);

    const fs::path dir = ensure_out_dir(args.out);
    altp::emit_result(document, (dir / "result.json").string());
    altp::render_overlay(image, spmap, grid, document.result, altp::OverlayKind::kept_tokens,
                         (dir / "kept_tokens.ppm").string());
    if (has_regions) {
        altp::render_overlay(image, spmap, grid, document.result, altp::OverlayKind::segments,
                             (dir / "segments.ppm").string());
        altp::render_overlay(image, spmap, grid, document.result, altp::OverlayKind::density,
                             (dir / "density.ppm").string());
        altp::render_overlay(image, spmap, grid, document.result, altp::OverlayKind::weights,
                             (dir / "weights.ppm").string());
    }
}

struct FlopsArgs {
    altp::FlopsConfig config;
};

void run_flops(const FlopsArgs& args) {
    const altp::FlopsEstimate estimate = altp::remaining_ratio(args.config);
    ordered_json j;
    j["tokens_before"] = args.config.tokens_before;
    j["tokens_after"] = estimate.tokens_after;
    j["remaining_ratio"] = estimate.remaining_ratio;
    j["reduction_ratio"] = estimate.reduction_ratio;
    std::cout << j.dump(2) << "\n";
}

struct VisualizeArgs {
    std::string result_path;
    std::string image_path;  // optional override of the manifest path
    std::string kinds = "segments,density,weights,kept_tokens";
    std::string out = ".";
};

void run_visualize(const VisualizeArgs& args) {
    const altp::ResultDocument document = altp::parse_result(args.result_path);
    const std::string image_path =
        args.image_path.empty() ? document.manifest.image_path : args.image_path;
    const altp::ImageBuffer original = altp::load_image(image_path);
    const altp::ImageBuffer image = altp::resize_bilinear(
        original, document.manifest.resized_width, document.manifest.resized_height);

    const bool has_regions = !document.labels.empty();
    const altp::SuperpixelMap spmap = document.segmentation();

    const fs::path dir = ensure_out_dir(args.out);
    std::string kinds = args.kinds;
    for (char& c : kinds) {
        if (c == ',') c = ' ';
    }
    std::istringstream stream(kinds);
    std::string name;
    while (stream >> name) {
        const altp::OverlayKind kind = altp::overlay_kind_from_string(name);
        if (kind != altp::OverlayKind::kept_tokens && !has_regions) {
            std::cerr << "skipping " << name << " overlay: result has no segmentation\n";
            continue;
        }
        altp::render_overlay(image, spmap, document.manifest.grid, document.result, kind,
                             (dir / (name + ".ppm")).string());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Adaptive local-aware token pruning: superpixel-driven visual token "
        "selection, baseline pruning modes and a transformer FLOPs estimator."};
    app.require_subcommand(1);
    app.footer("ALTP_SEED is reserved and ignored: every run is deterministic.");

    SegmentArgs segment_args;
    CLI::App* segment = app.add_subcommand("segment", "Run SLIC superpixel segmentation");
    segment->add_option("--image", segment_args.image_path, "Input image (PNG, PPM or PGM)")
        ->required();
    segment->add_option("--superpixels", segment_args.params.num_superpixels,
                        "Target superpixel count N");
    segment->add_option("--compactness", segment_args.params.compactness, "Compactness C");
    segment->add_option("--sigma", segment_args.params.sigma, "Gaussian smoothing sigma");
    segment->add_option("--max-iterations", segment_args.params.max_iterations,
                        "Iteration cap");
    segment->add_option("--out", segment_args.out, "Output directory");

    PruneArgs prune_args;
    CLI::App* prune = app.add_subcommand("prune", "Prune visual tokens for one image");
    prune->add_option("--image", prune_args.image_path, "Input image (PNG, PPM or PGM)")
        ->required();
    prune->add_option("--grid", prune_args.grid, "Token grid ROWSxCOLS (default 24x24)");
    prune->add_option("--keep-ratio", prune_args.config.keep_ratio,
                      "Fraction of tokens to keep, in (0,1]")
        ->required();
    prune->add_option("--alpha", prune_args.config.alpha, "Weight flattening factor, > 1");
    std::string mode_name = "altp";
    prune->add_option("--mode", mode_name, "altp | ddc | global");
    std::string budget_name = "exact";
    prune->add_option("--budget", budget_name, "exact | ceiling");
    std::string variance_space_name = "rgb";
    prune->add_option("--variance-space", variance_space_name,
                      "Color space for region variance: rgb | lab");
    prune->add_option("--superpixels", prune_args.config.superpixel.num_superpixels,
                      "Target superpixel count N");
    prune->add_option("--compactness", prune_args.config.superpixel.compactness,
                      "Compactness C");
    prune->add_option("--sigma", prune_args.config.superpixel.sigma, "Gaussian smoothing sigma");
    prune->add_option("--max-iterations", prune_args.config.superpixel.max_iterations,
                      "Iteration cap");
    prune->add_option("--importance", prune_args.importance_path,
                      "External importance document (JSON)");
    prune->add_flag("--uniform-importance", prune_args.uniform_importance,
                    "Use uniform importance instead of the variance proxy");
    std::int64_t flops_d = 0, flops_m = 0, flops_layers = 0, flops_prune_layer = 0;
    CLI::Option* opt_d = prune->add_option("--flops-d", flops_d, "Hidden size for the FLOPs stamp");
    CLI::Option* opt_m = prune->add_option("--flops-m", flops_m, "FFN intermediate size");
    CLI::Option* opt_layers = prune->add_option("--flops-layers", flops_layers, "Layer count");
    CLI::Option* opt_prune_layer =
        prune->add_option("--flops-prune-layer", flops_prune_layer, "Layer tokens are dropped after");
    prune->add_option("--out", prune_args.out, "Output directory");

    FlopsArgs flops_args;
    CLI::App* flops = app.add_subcommand("flops", "Estimate the FLOPs reduction of pruning");
    flops->add_option("--d", flops_args.config.hidden_size, "Hidden size d");
    flops->add_option("--m", flops_args.config.ffn_intermediate, "FFN intermediate size m");
    flops->add_option("--layers", flops_args.config.num_layers, "Layer count T");
    flops->add_option("--prune-layer", flops_args.config.prune_layer,
                      "Layer K tokens are dropped after");
    flops->add_option("--tokens", flops_args.config.tokens_before, "Visual token count n");
    flops->add_option("--drop-ratio", flops_args.config.drop_ratio, "Drop ratio R in [0,1]")
        ->required();

    VisualizeArgs visualize_args;
    CLI::App* visualize = app.add_subcommand("visualize", "Re-render overlays from a saved result");
    visualize->add_option("--result", visualize_args.result_path, "result.json from a prune run")
        ->required();
    visualize->add_option("--image", visualize_args.image_path,
                          "Image path override (defaults to the manifest path)");
    visualize->add_option("--kinds", visualize_args.kinds,
                          "Comma-separated overlay kinds to render");
    visualize->add_option("--out", visualize_args.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*segment) {
            run_segment(segment_args);
        } else if (*prune) {
            prune_args.config.mode = altp::prune_mode_from_string(mode_name);
            prune_args.config.budget_policy = altp::budget_policy_from_string(budget_name);
            prune_args.config.variance_space =
                altp::variance_space_from_string(variance_space_name);
            if (*opt_d) prune_args.flops_d = flops_d;
            if (*opt_m) prune_args.flops_m = flops_m;
            if (*opt_layers) prune_args.flops_layers = flops_layers;
            if (*opt_prune_layer) prune_args.flops_prune_layer = flops_prune_layer;
            run_prune(prune_args);
        } else if (*flops) {
            run_flops(flops_args);
        } else if (*visualize) {
            run_visualize(visualize_args);
        }
    } catch (const altp::Error& e) {
        std::cerr << "error (" << altp::to_string(e.code()) << "): " << e.what() << "\n";
        if (altp::is_input_error(e.code())) {
            std::cerr << "run '" << (argc > 0 ? argv[0] : "altp") << " --help' for usage\n";
            return 1;
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
