#include "equistrata/toml_lite.hpp"

#include <stdexcept>

#include "equistrata/lie_core.hpp"

namespace equistrata {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line;

    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    void skip_ws() {
        while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
};

std::string parse_bare_or_string_key(Cursor& c);

TomlValue parse_value(Cursor& c) {
    c.skip_ws();
    if (c.done()) fail(c.line, "missing value");
    TomlValue v;
    v.line = c.line;
    char ch = c.peek();
    if (ch == '"') {
        ++c.pos;
        v.kind = TomlValue::Kind::String;
        while (!c.done() && c.peek() != '"') {
            if (c.peek() == '\\') {
                ++c.pos;
                if (c.done()) fail(c.line, "dangling escape");
                char e = c.peek();
                if (e == 'n')
                    v.str += '\n';
                else if (e == 't')
                    v.str += '\t';
                else
                    v.str += e;
            } else {
                v.str += c.peek();
            }
            ++c.pos;
        }
        if (c.done()) fail(c.line, "unterminated string");
        ++c.pos;
        return v;
    }
    if (ch == '[') {
        ++c.pos;
        v.kind = TomlValue::Kind::Array;
        c.skip_ws();
        if (!c.done() && c.peek() == ']') {
            ++c.pos;
            return v;
        }
        while (true) {
            v.array.push_back(parse_value(c));
            c.skip_ws();
            if (c.done()) fail(c.line, "unterminated array");
            if (c.peek() == ',') {
                ++c.pos;
                c.skip_ws();
                continue;
            }
            if (c.peek() == ']') {
                ++c.pos;
                return v;
            }
            fail(c.line, "expected ',' or ']' in array");
        }
    }
    // bare token: integer, boolean, or signed rational-looking string
    std::string tok;
    while (!c.done() && std::string(" \t,]#").find(c.peek()) == std::string::npos) {
        tok += c.peek();
        ++c.pos;
    }
    if (tok == "true" || tok == "false") {
        v.kind = TomlValue::Kind::Boolean;
        v.boolean = tok == "true";
        return v;
    }
    try {
        size_t used = 0;
        long long n = std::stoll(tok, &used);
        if (used == tok.size()) {
            v.kind = TomlValue::Kind::Integer;
            v.integer = n;
            return v;
        }
    } catch (const std::exception&) {
    }
    fail(c.line, "cannot parse value '" + tok + "' (quote rationals as strings)");
}

std::string parse_bare_or_string_key(Cursor& c) {
    c.skip_ws();
    std::string key;
    while (!c.done()) {
        char ch = c.peek();
        if (isalnum((unsigned char)ch) || ch == '_' || ch == '-') {
            key += ch;
            ++c.pos;
        } else {
            break;
        }
    }
    if (key.empty()) fail(c.line, "expected a key");
    return key;
}

TomlValue* descend(TomlValue* node, const std::vector<std::string>& path, int line) {
    for (const auto& k : path) {
        TomlValue& child = node->table[k];
        if (child.kind == TomlValue::Kind::Table && child.table.empty() && child.line == 0)
            child.line = line;
        if (child.kind == TomlValue::Kind::Array) {
            if (child.array.empty()) fail(line, "empty table array '" + k + "'");
            node = &child.array.back();
        } else if (child.kind == TomlValue::Kind::Table) {
            node = &child;
        } else {
            fail(line, "key '" + k + "' already holds a value");
        }
    }
    return node;
}

}  // namespace

const TomlValue& TomlValue::at(const std::string& key) const {
    auto it = table.find(key);
    if (it == table.end())
        throw ConfigError("config line " + std::to_string(line) + ": missing key '" + key + "'");
    return it->second;
}

const TomlValue* TomlValue::find(const std::string& key) const {
    auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
}

std::string TomlValue::as_string() const {
    if (kind == Kind::String) return str;
    if (kind == Kind::Integer) return std::to_string(integer);
    throw ConfigError("config line " + std::to_string(line) + ": expected a string");
}

long long TomlValue::as_integer() const {
    if (kind != Kind::Integer)
        throw ConfigError("config line " + std::to_string(line) + ": expected an integer");
    return integer;
}

bool TomlValue::as_boolean() const {
    if (kind != Kind::Boolean)
        throw ConfigError("config line " + std::to_string(line) + ": expected a boolean");
    return boolean;
}

const std::vector<TomlValue>& TomlValue::as_array() const {
    if (kind != Kind::Array)
        throw ConfigError("config line " + std::to_string(line) + ": expected an array");
    return array;
}

TomlValue toml_parse(const std::string& text) {
    TomlValue root;
    root.kind = TomlValue::Kind::Table;
    TomlValue* current = &root;

    size_t start = 0;
    int line_no = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;

        Cursor c{line, 0, line_no};
        c.skip_ws();
        if (c.done() || c.peek() == '#') continue;

        if (c.peek() == '[') {
            bool array_of_tables = c.pos + 1 < line.size() && line[c.pos + 1] == '[';
            c.pos += array_of_tables ? 2 : 1;
            std::vector<std::string> path;
            while (true) {
                path.push_back(parse_bare_or_string_key(c));
                c.skip_ws();
                if (!c.done() && c.peek() == '.') {
                    ++c.pos;
                    continue;
                }
                break;
            }
            if (array_of_tables) {
                if (c.done() || c.peek() != ']' || c.pos + 1 >= line.size() ||
                    line[c.pos + 1] != ']')
                    fail(line_no, "expected ']]'");
                TomlValue* parent =
                    descend(&root, {path.begin(), path.end() - 1}, line_no);
                TomlValue& arr = parent->table[path.back()];
                if (arr.kind == TomlValue::Kind::Table && arr.table.empty()) {
                    arr.kind = TomlValue::Kind::Array;
                    arr.line = line_no;
                }
                if (arr.kind != TomlValue::Kind::Array)
                    fail(line_no, "'" + path.back() + "' is not a table array");
                TomlValue t;
                t.kind = TomlValue::Kind::Table;
                t.line = line_no;
                arr.array.push_back(std::move(t));
                current = &arr.array.back();
            } else {
                if (c.done() || c.peek() != ']') fail(line_no, "expected ']'");
                current = descend(&root, path, line_no);
            }
            continue;
        }

        std::vector<std::string> path{parse_bare_or_string_key(c)};
        c.skip_ws();
        while (!c.done() && c.peek() == '.') {
            ++c.pos;
            path.push_back(parse_bare_or_string_key(c));
            c.skip_ws();
        }
        if (c.done() || c.peek() != '=') fail(line_no, "expected '='");
        ++c.pos;
        TomlValue v = parse_value(c);
        v.line = line_no;
        c.skip_ws();
        if (!c.done() && c.peek() != '#') fail(line_no, "trailing characters after value");

        TomlValue* parent = descend(current, {path.begin(), path.end() - 1}, line_no);
        if (parent->table.count(path.back())) fail(line_no, "duplicate key '" + path.back() + "'");
        parent->table[path.back()] = std::move(v);
    }
    return root;
}

}  // namespace equistrata
