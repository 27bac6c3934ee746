// Flat key-value experiment configuration.
//
//   # comment
//   seed = 7
//   [smallball]
//   r = 0.8
//
// Keys inside a section are addressed as "section.key"; keys before the first
// section live at the top level. Later assignments overwrite earlier ones.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace stabledev {

class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<config>");
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    /// Typed getters throw ConfigError naming the key when it is missing or malformed.
    const std::string& get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_long(const std::string& key) const;
    std::uint64_t get_uint64(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    /// Comma-separated list of numbers.
    std::vector<double> get_doubles(const std::string& key) const;

    /// Throws ConfigError for the first key not in `known`.
    void require_known(const std::set<std::string>& known) const;

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace stabledev
