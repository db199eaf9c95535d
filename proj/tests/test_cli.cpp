// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <string>

#include <doctest.h>

#include "altp/image_io.hpp"
#include "altp/result_io.hpp"
#include "support/synthetic.hpp"

using namespace altp;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string command = std::string(ALTP_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

struct Workspace {
    fs::path dir;

    Workspace() {
        dir = fs::temp_directory_path() / "altp_cli_tests";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("cli prune retains the expected count and is byte-reproducible") {
    Workspace ws;
    write_ppm(test::flat_with_noisy_square(336, 336, 112, 112, 60, 31), ws.path("input.ppm"));

    const std::string base = "prune --image " + ws.path("input.ppm") +
                             " --grid 24x24 --keep-ratio 0.1 --budget exact";
    REQUIRE(run_cli(base + " --out " + ws.path("run_a")) == 0);
    REQUIRE(run_cli(base + " --out " + ws.path("run_b")) == 0);

    const ResultDocument document = parse_result(ws.path("run_a/result.json"));
    CHECK(document.result.kept_indices.size() == 57);
    CHECK(document.budget == 57);
    CHECK(document.manifest.grid.total_tokens == 576);

    for (const char* name :
         {"result.json", "segments.ppm", "density.ppm", "weights.ppm", "kept_tokens.ppm"}) {
        CAPTURE(name);
        CHECK(read_file_bytes(ws.path("run_a/") + name) ==
              read_file_bytes(ws.path("run_b/") + name));
    }
}

TEST_CASE("cli rejects an out-of-range keep ratio") {
    Workspace ws;
    write_ppm(test::constant_image(32, 32, 3, 0.5), ws.path("input.ppm"));
    CHECK(run_cli("prune --image " + ws.path("input.ppm") +
                  " --keep-ratio 1.5 --out " + ws.path("bad")) == 1);
}

TEST_CASE("cli maps missing inputs and bad flags to exit 1") {
    CHECK(run_cli("prune --image /nonexistent.ppm --keep-ratio 0.5 --out /tmp") == 1);
    CHECK(run_cli("prune") == 1);                 // missing required flags
    CHECK(run_cli("definitely-not-a-command") == 1);
    CHECK(run_cli("") == 1);                      // a subcommand is required
    CHECK(run_cli("prune --image x.ppm --keep-ratio 0.5 --grid 24by24 --out /tmp") == 1);
}

TEST_CASE("cli flops reports zero reduction for zero drop") {
    Workspace ws;
    const std::string out = ws.path("flops.json");
    const std::string command = std::string(ALTP_CLI_PATH) +
                                " flops --drop-ratio 0 > " + out + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(command.c_str())) == 0);
    const std::string text = read_text_file(out);
    CHECK(text.find("\"reduction_ratio\": 0.0") != std::string::npos);
    CHECK(text.find("\"tokens_after\": 576") != std::string::npos);
}

TEST_CASE("cli visualize re-renders overlays byte-identically") {
    Workspace ws;
    write_ppm(test::noise_image(96, 96, 3, 77), ws.path("input.ppm"));
    REQUIRE(run_cli("prune --image " + ws.path("input.ppm") +
                    " --grid 8x8 --keep-ratio 0.25 --out " + ws.path("run")) == 0);
    REQUIRE(run_cli("visualize --result " + ws.path("run/result.json") + " --out " +
                    ws.path("viz")) == 0);
    for (const char* name : {"segments.ppm", "density.ppm", "weights.ppm", "kept_tokens.ppm"}) {
        CAPTURE(name);
        CHECK(read_file_bytes(ws.path("run/") + name) == read_file_bytes(ws.path("viz/") + name));
    }
}

TEST_CASE("cli segment writes a label document and overlay, reproducibly") {
    Workspace ws;
    write_ppm(test::vertical_split_image(64, 64), ws.path("halves.ppm"));
    const std::string base =
        "segment --image " + ws.path("halves.ppm") + " --superpixels 2 --out ";
    REQUIRE(run_cli(base + ws.path("seg")) == 0);
    CHECK(fs::exists(ws.path("seg/segmentation.json")));
    CHECK(fs::exists(ws.path("seg/segments.ppm")));

    REQUIRE(run_cli(base + ws.path("seg2")) == 0);
    CHECK(read_file_bytes(ws.path("seg/segmentation.json")) ==
          read_file_bytes(ws.path("seg2/segmentation.json")));
    CHECK(read_file_bytes(ws.path("seg/segments.ppm")) ==
          read_file_bytes(ws.path("seg2/segments.ppm")));
}

TEST_CASE("ALTP_SEED is a documented no-op") {
    Workspace ws;
    write_ppm(test::noise_image(48, 48, 3, 12), ws.path("input.ppm"));
    const std::string base = "prune --image " + ws.path("input.ppm") +
                             " --grid 6x6 --keep-ratio 0.5 --out ";
    REQUIRE(run_cli(base + ws.path("plain")) == 0);
    const std::string seeded = "ALTP_SEED=12345 " + std::string(ALTP_CLI_PATH) + " " + base +
                               ws.path("seeded") + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(seeded.c_str())) == 0);
    CHECK(read_file_bytes(ws.path("plain/result.json")) ==
          read_file_bytes(ws.path("seeded/result.json")));
}

TEST_CASE("cli global mode skips the segmentation overlays") {
    Workspace ws;
    write_ppm(test::noise_image(64, 64, 3, 3), ws.path("input.ppm"));
    REQUIRE(run_cli("prune --image " + ws.path("input.ppm") +
                    " --grid 8x8 --keep-ratio 0.5 --mode global --out " + ws.path("run")) == 0);
    CHECK(fs::exists(ws.path("run/kept_tokens.ppm")));
    CHECK_FALSE(fs::exists(ws.path("run/density.ppm")));
    const ResultDocument document = parse_result(ws.path("run/result.json"));
    CHECK(document.region_count == 0);
    CHECK(document.labels.empty());
    CHECK(document.result.kept_indices.size() == 32);
}

TEST_CASE("cli external importance steers global selection") {
    Workspace ws;
    write_ppm(test::constant_image(32, 32, 3, 0.5), ws.path("input.ppm"));
    // Favor the last four tokens of a 4x4 grid.
    std::string importance = R"({"v_total":16,"values":[0,0,0,0,0,0,0,0,0,0,0,0,9,9,9,9]})";
    write_text_file(ws.path("importance.json"), importance);
    REQUIRE(run_cli("prune --image " + ws.path("input.ppm") +
                    " --grid 4x4 --keep-ratio 0.25 --mode global --importance " +
                    ws.path("importance.json") + " --out " + ws.path("run")) == 0);
    const ResultDocument document = parse_result(ws.path("run/result.json"));
    CHECK(document.result.kept_indices == std::vector<std::int32_t>{12, 13, 14, 15});
    CHECK(document.manifest.importance_source == ImportanceSource::external);

    // A malformed importance file is an input error.
    write_text_file(ws.path("broken.json"), R"({"v_total":16,"values":[1,2]})");
    CHECK(run_cli("prune --image " + ws.path("input.ppm") +
                  " --grid 4x4 --keep-ratio 0.25 --importance " + ws.path("broken.json") +
                  " --out " + ws.path("run2")) == 1);
}

TEST_CASE("cli flops stamp lands in the result document") {
    Workspace ws;
    write_ppm(test::noise_image(48, 48, 3, 9), ws.path("input.ppm"));
    REQUIRE(run_cli("prune --image " + ws.path("input.ppm") +
                    " --grid 6x6 --keep-ratio 0.5 --flops-layers 32 --flops-prune-layer 2 --out " +
                    ws.path("run")) == 0);
    const ResultDocument document = parse_result(ws.path("run/result.json"));
    REQUIRE(document.result.flops_remaining_ratio.has_value());
    CHECK(*document.result.flops_remaining_ratio > 0.0);
    CHECK(*document.result.flops_remaining_ratio < 1.0);
}
