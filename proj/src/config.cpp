#include "equistrata/config.hpp"

namespace equistrata {

namespace {

QVec value_to_qvec(const TomlValue& v) {
    QVec out;
    for (const auto& e : v.as_array()) {
        if (e.kind == TomlValue::Kind::Integer)
            out.push_back(Rational(e.integer));
        else if (e.kind == TomlValue::Kind::String)
            out.push_back(rat_from_string(e.str));
        else
            throw ConfigError("config line " + std::to_string(v.line) +
                              ": vector entries must be integers or rational strings");
    }
    return out;
}

Rational value_to_rational(const TomlValue& v) {
    if (v.kind == TomlValue::Kind::Integer) return Rational(v.integer);
    if (v.kind == TomlValue::Kind::String) {
        try {
            return rat_from_string(v.str);
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("config line " + std::to_string(v.line) +
                      ": expected a rational (integer or \"p/q\" string)");
}

}  // namespace

RunConfig parse_config(const std::string& toml_text) {
    TomlValue root = toml_parse(toml_text);
    RunConfig cfg;

    const TomlValue& group = root.at("group");
    std::vector<std::string> factor_names;
    for (const auto& f : group.at("factors").as_array()) factor_names.push_back(f.as_string());
    cfg.group_spec = parse_group_factors(factor_names);
    RootDatum datum(cfg.group_spec);

    if (const TomlValue* cw = group.find("coweight_basis")) {
        for (const auto& row : cw->as_array()) cfg.coweight_basis.push_back(value_to_qvec(row));
    }

    if (const TomlValue* opts = root.find("options")) {
        if (const TomlValue* v = opts->find("max_kernel_size")) {
            if (v->as_integer() < 1)
                throw ConfigError("config line " + std::to_string(v->line) +
                                  ": max_kernel_size must be at least 1");
            cfg.options.max_kernel_size = (size_t)v->as_integer();
        }
        if (const TomlValue* v = opts->find("module_dim_cap"))
            cfg.options.module_dim_cap = (size_t)v->as_integer();
        if (const TomlValue* v = opts->find("weight_basis")) {
            cfg.options.weight_basis = v->as_string();
            if (cfg.options.weight_basis != "dual" && cfg.options.weight_basis != "ambient")
                throw ConfigError("config line " + std::to_string(v->line) +
                                  ": weight_basis must be \"dual\" or \"ambient\"");
        }
        if (const TomlValue* v = opts->find("float_check"))
            cfg.options.float_check = v->as_boolean();
        if (const TomlValue* v = opts->find("output_format")) {
            cfg.options.output_format = v->as_string();
            if (cfg.options.output_format != "table" && cfg.options.output_format != "json")
                throw ConfigError("config line " + std::to_string(v->line) +
                                  ": output_format must be \"table\" or \"json\"");
        }
    }
    if (!cfg.coweight_basis.empty() && cfg.options.weight_basis == "ambient")
        throw ConfigError("coweight_basis has no effect with weight_basis = \"ambient\"");

    CoordFrame frame = cfg.frame(datum);

    const TomlValue* comps = root.find("component");
    if (!comps || comps->as_array().empty())
        throw ConfigError("config needs at least one [[component]]");
    for (const auto& comp : comps->as_array()) {
        RepComponentSpec rc;
        const TomlValue& hw = comp.at("highest_weight");
        rc.highest_weight = frame.weight_from_coords(value_to_qvec(hw));
        if (!datum.is_integral(rc.highest_weight))
            throw ConfigError("config line " + std::to_string(hw.line) +
                              ": highest_weight is not integral");
        if (!datum.is_dominant(rc.highest_weight))
            throw ConfigError("config line " + std::to_string(hw.line) +
                              ": highest_weight is not dominant");
        rc.eigenvalue = value_to_rational(comp.at("eigenvalue"));
        cfg.components.push_back(std::move(rc));
    }
    for (size_t i = 0; i < cfg.components.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (cfg.components[i].eigenvalue == cfg.components[j].eigenvalue)
                throw ConfigError("components " + std::to_string(j) + " and " + std::to_string(i) +
                                  " share an eigenvalue; (GC) requires the eigenspaces of d^2h(0) "
                                  "to be distinct");
    return cfg;
}

}  // namespace equistrata
