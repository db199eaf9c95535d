// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <limits>

#include <doctest.h>

#include "altp/ddc.hpp"
#include "altp/image_io.hpp"
#include "altp/result_io.hpp"
#include "altp/selector.hpp"
#include "support/synthetic.hpp"

using namespace altp;

namespace {

ResultDocument sample_document() {
    const ImageBuffer image = test::noise_image(48, 48, 3, 321);
    const TokenGrid grid = build_token_grid(48, 48, 6, 6);
    const ImportanceMap importance = importance_from_variance(image, grid);
    PruneConfig config;
    config.keep_ratio = 0.25;
    config.mode = PruneMode::altp;

    SuperpixelMap spmap;
    ResultDocument document;
    document.result = prune(image, grid, importance, config, &spmap);
    document.result.flops_remaining_ratio = 0.375;
    document.manifest.image_path = "input.ppm";
    document.manifest.image_hash = "fnv1a64:0123456789abcdef";
    document.manifest.importance_source = ImportanceSource::variance_proxy;
    document.manifest.config = config;
    document.manifest.grid = grid;
    document.manifest.resized_width = 48;
    document.manifest.resized_height = 48;
    document.region_count = spmap.region_count;
    document.budget = token_budget(config.keep_ratio, grid.total_tokens);
    document.omega_sizes = assign_tokens_to_regions(spmap, grid).omega_sizes();
    document.labels = spmap.labels;
    return document;
}

}  // namespace

TEST_CASE("importance documents parse and validate") {
    const ImportanceMap map = parse_importance(R"({"v_total":4,"values":[0,0,0,0]})", 4);
    CHECK(map.source == ImportanceSource::external);
    CHECK(map.values == std::vector<double>{0, 0, 0, 0});

    SUBCASE("length mismatch") {
        try {
            parse_importance(R"({"v_total":4,"values":[0,0,0]})", 4);
            FAIL("expected dimension_mismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::dimension_mismatch);
        }
    }
    SUBCASE("v_total mismatch with the grid") {
        CHECK_THROWS_AS(parse_importance(R"({"v_total":3,"values":[0,0,0]})", 4), Error);
    }
    SUBCASE("out-of-range numbers fail at parse") {
        // JSON cannot express non-finite values; 1e999 dies in the parser.
        try {
            parse_importance(R"({"v_total":3,"values":[0,1e999,0]})", 3);
            FAIL("expected malformed_document");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::malformed_document);
        }
    }
    SUBCASE("non-finite entry names the index at validation") {
        ImportanceMap broken;
        broken.values = {0.0, std::numeric_limits<double>::quiet_NaN(), 0.0};
        try {
            validate(broken, 3);
            FAIL("expected invalid_argument");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::invalid_argument);
            CHECK(std::string(e.what()).find("index 1") != std::string::npos);
        }
    }
    SUBCASE("negative entry names the index") {
        try {
            parse_importance(R"({"v_total":3,"values":[0,0,-0.5]})", 3);
            FAIL("expected invalid_argument");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("index 2") != std::string::npos);
        }
    }
    SUBCASE("garbage is a malformed document") {
        try {
            parse_importance("{nope", 3);
            FAIL("expected malformed_document");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::malformed_document);
        }
    }
}

TEST_CASE("result documents round-trip exactly") {
    const ResultDocument document = sample_document();
    const std::string text = serialize_result(document);
    const ResultDocument parsed = parse_result_text(text);
    CHECK(parsed == document);
    // Serialization is byte-stable.
    CHECK(serialize_result(parsed) == text);
}

TEST_CASE("emitted files are byte-identical across runs") {
    const ResultDocument document = sample_document();
    const auto dir = std::filesystem::temp_directory_path() / "altp_result_io_tests";
    std::filesystem::create_directories(dir);
    const std::string path_a = (dir / "result_a.json").string();
    const std::string path_b = (dir / "result_b.json").string();
    emit_result(document, path_a);
    emit_result(document, path_b);
    CHECK(read_text_file(path_a) == read_text_file(path_b));
    CHECK(parse_result(path_a) == document);
}

TEST_CASE("keep-ratio 1 emits every token index") {
    const ImageBuffer image = test::noise_image(24, 24, 3, 1234);
    const TokenGrid grid = build_token_grid(24, 24, 4, 4);
    PruneConfig config;
    config.keep_ratio = 1.0;

    SuperpixelMap spmap;
    ResultDocument document;
    document.result = prune(image, grid, importance_from_variance(image, grid), config, &spmap);
    document.manifest.config = config;
    document.manifest.grid = grid;
    document.manifest.resized_width = 24;
    document.manifest.resized_height = 24;
    document.region_count = spmap.region_count;
    document.labels = spmap.labels;

    const ResultDocument parsed = parse_result_text(serialize_result(document));
    CHECK(parsed.result.kept_indices.size() == static_cast<std::size_t>(grid.total_tokens));
}

TEST_CASE("malformed result documents are rejected") {
    CHECK_THROWS_AS(parse_result_text("not json"), Error);
    CHECK_THROWS_AS(parse_result_text(R"({"format":"altp-result/1"})"), Error);
    CHECK_THROWS_AS(parse_result_text(R"({"format":"something-else/9"})"), Error);
}

TEST_CASE("missing files surface as file_not_found") {
    CHECK_THROWS_AS(parse_result("/nonexistent/result.json"), Error);
    CHECK_THROWS_AS(load_importance("/nonexistent/importance.json", 4), Error);
}
