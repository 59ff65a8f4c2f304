#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "equistrata/pipeline.hpp"

using namespace equistrata;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(Stage stage, const std::string& config_path, const std::string& format_override,
        long long max_kernel_size, bool no_float_check, const std::string& out_path) {
    RunConfig cfg = parse_config(read_file(config_path));
    if (max_kernel_size > 0) cfg.options.max_kernel_size = (size_t)max_kernel_size;
    if (no_float_check) cfg.options.float_check = false;
    if (const char* cap = std::getenv("EQUISTRATA_DIM_CAP"))
        cfg.options.module_dim_cap = (size_t)std::stoll(cap);
    std::string format = format_override.empty() ? cfg.options.output_format : format_override;

    Report report = run_pipeline(cfg, stage);
    std::string text = emit_report(report, cfg, format);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot write to '" + out_path + "'");
        out << text;
    }
    return report.internal_check_failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equistrata: isotropy strata of bifurcating relative equilibria"};
    app.require_subcommand(1);

    std::string config_path, format, out_path;
    long long max_kernel_size = 0;
    bool no_float_check = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "TOML run configuration")->required();
        cmd->add_option("--format", format, "table or json");
        cmd->add_option("--max-kernel-size", max_kernel_size, "bound on |S|");
        cmd->add_flag("--no-float-check", no_float_check, "skip the floating-point oracle");
        cmd->add_option("--out", out_path, "write the report to a file");
    };
    CLI::App* weights = app.add_subcommand("weights", "weight systems and dimensions");
    CLI::App* kernels = app.add_subcommand("kernels", "admissible kernel candidates");
    CLI::App* strata = app.add_subcommand("strata", "momentum loci, isotropy and stratum dims");
    add_common(weights);
    add_common(kernels);
    add_common(strata);

    CLI11_PARSE(app, argc, argv);

    Stage stage = Stage::Weights;
    if (kernels->parsed()) stage = Stage::Kernels;
    if (strata->parsed()) stage = Stage::Strata;

    try {
        return run(stage, config_path, format, max_kernel_size, no_float_check, out_path);
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const InternalCheckError& e) {
        std::cerr << "internal verification failure: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
