#ifndef EQUISTRATA_TOML_LITE_HPP
#define EQUISTRATA_TOML_LITE_HPP

#include <map>
#include <string>
#include <vector>

namespace equistrata {

/*
 * Reader for the TOML subset the run configs use: comments, [table] and
 * [[array-of-table]] headers, bare or dotted keys, and string / integer /
 * boolean / array values. Aimed at precise line-tagged error messages rather
 * than full TOML coverage.
 */
struct TomlValue {
    enum class Kind { String, Integer, Boolean, Array, Table };
    Kind kind = Kind::Table;
    std::string str;
    long long integer = 0;
    bool boolean = false;
    std::vector<TomlValue> array;
    std::map<std::string, TomlValue> table;
    int line = 0;

    bool has(const std::string& key) const { return table.count(key) > 0; }
    const TomlValue& at(const std::string& key) const;
    const TomlValue* find(const std::string& key) const;

    std::string as_string() const;
    long long as_integer() const;
    bool as_boolean() const;
    const std::vector<TomlValue>& as_array() const;
};

TomlValue toml_parse(const std::string& text);

}  // namespace equistrata

#endif
