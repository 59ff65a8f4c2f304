#include <doctest.h>

#include <json.hpp>

#include "equistrata/pipeline.hpp"
#include "fixtures.hpp"

using namespace equistrata;
using json = nlohmann::ordered_json;

namespace {

const char* kCubeConfig = R"toml(
[group]
factors = ["SU(2)", "SU(2)", "SU(2)"]

[[component]]
highest_weight = [1, 1, 1]
eigenvalue = "1"

[options]
max_kernel_size = 2
)toml";

int count_key_value(const json& j, const std::string& key, const json& value) {
    int n = 0;
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (k == key && v == value) ++n;
            n += count_key_value(v, key, value);
        }
    } else if (j.is_array()) {
        for (const auto& v : j) n += count_key_value(v, key, value);
    }
    return n;
}

}  // namespace

TEST_CASE("cube strata report carries the expected locus rows") {
    RunConfig cfg = parse_config(kCubeConfig);
    Report report = run_pipeline(cfg, Stage::Strata);
    CHECK_FALSE(report.internal_check_failed);

    std::string text = emit_report(report, cfg, "json");
    json j = json::parse(text);

    // within the row of the distinguished pair class, stratum_dim 7 appears exactly
    // once (the equal-magnitude su(2) locus) and 10 exactly once (generic)
    bool found_row = false;
    for (const auto& kernel : j["kernels"]) {
        const auto& parts = kernel["S"];
        if (parts.size() != 1 || parts[0]["weights"].size() != 2) continue;
        json want = json::array({json::array({"1", "1", "-1"}), json::array({"1", "-1", "1"})});
        if (parts[0]["weights"] != want) continue;
        found_row = true;
        CHECK(count_key_value(kernel, "stratum_dim", json(7)) == 1);
        CHECK(count_key_value(kernel, "stratum_dim", json(10)) == 1);
        CHECK(count_key_value(kernel, "name", json("su(2)")) == 1);
    }
    CHECK(found_row);

    // textual round trip of the JSON document
    CHECK(json::parse(j.dump()) == j);

    // deterministic output
    Report again = run_pipeline(cfg, Stage::Strata);
    CHECK(emit_report(again, cfg, "json") == text);

    // table and json carry the same numeric facts
    std::string table = emit_report(report, cfg, "table");
    CHECK(table.find("stratum dim 7") != std::string::npos);
    CHECK(table.find("stratum dim 10") != std::string::npos);
    CHECK(table.find("su(2)") != std::string::npos);
}

TEST_CASE("weights and kernels stages") {
    RunConfig cfg = parse_config(kCubeConfig);
    Report w = run_pipeline(cfg, Stage::Weights);
    CHECK(w.components.size() == 1);
    CHECK(w.components[0].dim == 8);
    CHECK(w.kernels.empty());

    Report k = run_pipeline(cfg, Stage::Kernels);
    CHECK(k.kernels.size() == 5);  // 1 singleton class + 4 pair classes
    std::string text = emit_report(k, cfg, "json");
    json j = json::parse(text);
    CHECK(j["kernels"].size() == 5);
    for (const auto& kernel : j["kernels"]) CHECK(kernel.contains("x_dim"));
}

TEST_CASE("empty report emits a bare skeleton") {
    RunConfig cfg = parse_config(kCubeConfig);
    Report empty;
    empty.stage = Stage::Kernels;
    empty.group = "SU(2)xSU(2)xSU(2)";
    std::string text = emit_report(empty, cfg, "json");
    json j = json::parse(text);
    CHECK(j["components"].is_array());
    CHECK(j["components"].empty());
    CHECK(j["kernels"].empty());
}

TEST_CASE("pyramid fixture magnitudes serialize exactly as rationals") {
    std::string text = R"toml(
[group]
factors = ["SU(4)"]
coweight_basis = [[1, -1, 0, 0], [0, 1, -1, 0], [1, 1, 1, -3]]

[[component]]
highest_weight = [2, 0, 2]
eigenvalue = "1"

[options]
max_kernel_size = 2
)toml";
    RunConfig cfg = parse_config(text);
    Report report = run_pipeline(cfg, Stage::Strata);
    json j = json::parse(emit_report(report, cfg, "json"));
    bool found = false;
    for (const auto& kernel : j["kernels"]) {
        for (const auto& locus : kernel.value("loci", json::array())) {
            const auto& mags = locus["magnitudes"];
            if (mags.contains("(-1,0,2)") && mags["(-1,0,2)"] == "2/3" &&
                mags.contains("(2,0,2)") && mags["(2,0,2)"] == "1/3")
                found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("a representation with a reflection pair leaves only singletons") {
    std::string text = R"toml(
[group]
factors = ["SU(2)"]

[[component]]
highest_weight = [1]
eigenvalue = "1"
)toml";
    RunConfig cfg = parse_config(text);
    Report k = run_pipeline(cfg, Stage::Kernels);
    REQUIRE(k.kernels.size() == 1);
    CHECK(k.kernels[0].candidate.size() == 1);
}

TEST_CASE("float check can be disabled") {
    RunConfig cfg = parse_config(kCubeConfig);
    cfg.options.float_check = false;
    Report report = run_pipeline(cfg, Stage::Strata);
    for (const auto& row : report.kernels)
        for (const auto& lr : row.loci) CHECK(lr.float_kernel_dim == -1);
}
