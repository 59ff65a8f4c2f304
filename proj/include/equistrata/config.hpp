#ifndef EQUISTRATA_CONFIG_HPP
#define EQUISTRATA_CONFIG_HPP

#include "equistrata/kernel_enum.hpp"
#include "equistrata/toml_lite.hpp"

namespace equistrata {

struct RunOptions {
    size_t max_kernel_size = 4;
    size_t module_dim_cap = 512;
    std::string weight_basis = "dual";  // "dual" | "ambient"
    bool float_check = true;
    std::string output_format = "table";  // "table" | "json"
};

struct RunConfig {
    GroupSpec group_spec;
    std::vector<QVec> coweight_basis;          // optional custom dual frame (ambient rows)
    std::vector<RepComponentSpec> components;  // weights converted to ambient
    RunOptions options;

    CoordFrame frame(const RootDatum& datum) const {
        return CoordFrame(datum, options.weight_basis == "ambient", coweight_basis);
    }
};

RunConfig parse_config(const std::string& toml_text);

}  // namespace equistrata

#endif
