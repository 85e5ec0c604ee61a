#pragma once

// Schema helpers shared by the TOML/JSON readers. Private to src/.

#include "skelmeas/exact.hpp"
#include "skelmeas/model.hpp"

#include <json.hpp>
#include <toml.hpp>

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace skelmeas {

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline toml::table json_to_toml(const nlohmann::json& j);

inline void json_value_into(toml::array& arr, const nlohmann::json& v)
{
    if (v.is_object()) arr.push_back(json_to_toml(v));
    else if (v.is_array()) {
        toml::array inner;
        for (const auto& x : v) json_value_into(inner, x);
        arr.push_back(std::move(inner));
    } else if (v.is_boolean()) arr.push_back(v.get<bool>());
    else if (v.is_number_integer()) arr.push_back(v.get<std::int64_t>());
    else if (v.is_number_float()) arr.push_back(v.get<double>());
    else if (v.is_string()) arr.push_back(v.get<std::string>());
    else throw ParseError("unsupported JSON value", 0);
}

inline toml::table json_to_toml(const nlohmann::json& j)
{
    if (!j.is_object()) throw ParseError("expected a JSON object", 0);
    toml::table t;
    for (const auto& [key, v] : j.items()) {
        if (v.is_object()) t.insert(key, json_to_toml(v));
        else if (v.is_array()) {
            toml::array arr;
            for (const auto& x : v) json_value_into(arr, x);
            t.insert(key, std::move(arr));
        } else if (v.is_boolean()) t.insert(key, v.get<bool>());
        else if (v.is_number_integer()) t.insert(key, v.get<std::int64_t>());
        else if (v.is_number_float()) t.insert(key, v.get<double>());
        else if (v.is_string()) t.insert(key, v.get<std::string>());
        else throw ParseError("unsupported JSON value for key '" + key + "'", 0);
    }
    return t;
}

/// TOML, or JSON when the first non-blank character is '{'.
inline toml::table parse_document(const std::string& text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return json_to_toml(nlohmann::json::parse(text));
        } catch (const nlohmann::json::parse_error& e) {
            long line = 1;
            for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
                if (text[i] == '\n') ++line;
            throw ParseError("JSON syntax error at line " + std::to_string(line) + ": " + e.what(), line);
        }
    }
    try {
        return toml::parse(text);
    } catch (const toml::parse_error& e) {
        long line = static_cast<long>(e.source().begin.line);
        throw ParseError("TOML syntax error at line " + std::to_string(line) + ": " + std::string(e.description()), line);
    }
}

class TableReader {
public:
    TableReader(const toml::table& t, std::string context) : t_(t), ctx_(std::move(context)) {}

    long line(const std::string& key) const
    {
        if (const toml::node* n = t_.get(key)) return static_cast<long>(n->source().begin.line);
        return static_cast<long>(t_.source().begin.line);
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const
    {
        long ln = line(key);
        std::string where = ln > 0 ? " (line " + std::to_string(ln) + ")" : "";
        throw ParseError(ctx_ + ": " + msg + where, ln);
    }

    void allow(std::initializer_list<const char*> keys) const
    {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [k, v] : t_)
            if (!ok.count(std::string(k.str()))) fail(std::string(k.str()), "unknown key '" + std::string(k.str()) + "'");
    }

    bool has(const std::string& key) const { return t_.contains(key); }

    const toml::node& require(const std::string& key) const
    {
        const toml::node* n = t_.get(key);
        if (!n) fail(key, "missing key '" + key + "'");
        return *n;
    }

    std::string required_string(const std::string& key) const
    {
        auto v = require(key).value<std::string>();
        if (!require(key).is_string() || !v) fail(key, "'" + key + "' must be a string");
        return *v;
    }

    std::optional<std::string> optional_string(const std::string& key) const
    {
        if (!has(key)) return std::nullopt;
        return required_string(key);
    }

    long required_int(const std::string& key) const
    {
        const toml::node& n = require(key);
        if (!n.is_integer()) fail(key, "'" + key + "' must be an integer");
        return static_cast<long>(*n.value<std::int64_t>());
    }

    long optional_int(const std::string& key, long fallback) const { return has(key) ? required_int(key) : fallback; }

    bool optional_bool(const std::string& key, bool fallback) const
    {
        if (!has(key)) return fallback;
        const toml::node& n = require(key);
        if (!n.is_boolean()) fail(key, "'" + key + "' must be a boolean");
        return *n.value<bool>();
    }

    Rat rational_of(const toml::node& n, const std::string& key) const
    {
        if (n.is_integer()) return Rat(static_cast<long>(*n.value<std::int64_t>()));
        if (n.is_string()) {
            try {
                return parse_rat(*n.value<std::string>());
            } catch (const std::exception& e) {
                fail(key, e.what());
            }
        }
        fail(key, "'" + key + "' entries must be integers or rational strings like \"3/4\"");
    }

    Rat required_rational(const std::string& key) const { return rational_of(require(key), key); }

    const toml::array& required_array(const std::string& key) const
    {
        const toml::node& n = require(key);
        if (!n.is_array()) fail(key, "'" + key + "' must be an array");
        return *n.as_array();
    }

    std::vector<std::string> required_string_array(const std::string& key) const
    {
        std::vector<std::string> out;
        for (const auto& n : required_array(key)) {
            if (!n.is_string()) fail(key, "'" + key + "' must contain strings");
            out.push_back(*n.value<std::string>());
        }
        return out;
    }

    std::vector<Rat> required_rational_array(const std::string& key) const
    {
        std::vector<Rat> out;
        for (const auto& n : required_array(key)) out.push_back(rational_of(n, key));
        return out;
    }

    const toml::table& required_table(const std::string& key) const
    {
        const toml::node& n = require(key);
        if (!n.is_table()) fail(key, "'" + key + "' must be a table");
        return *n.as_table();
    }

    std::vector<const toml::table*> table_array(const std::string& key) const
    {
        std::vector<const toml::table*> out;
        if (!has(key)) return out;
        const toml::node& n = require(key);
        if (!n.is_array()) fail(key, "'" + key + "' must be an array of tables");
        for (const auto& x : *n.as_array()) {
            if (!x.is_table()) fail(key, "'" + key + "' must be an array of tables");
            out.push_back(x.as_table());
        }
        return out;
    }

    const toml::table& table() const { return t_; }

private:
    const toml::table& t_;
    std::string ctx_;
};

}  // namespace skelmeas
