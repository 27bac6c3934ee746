#include "stabledev/config.hpp"

#include "stabledev/process_model.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace stabledev {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* what) {
    throw ConfigError("config key '" + key + "': expected " + what + ", got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& s) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) bad(key, s, "a number");
    return v;
}

} // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(where + ": empty key");
        cfg.set(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)));
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path);
}

const std::string& Config::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const { return parse_double(key, get_string(key)); }

long Config::get_long(const std::string& key) const {
    const std::string& s = get_string(key);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) bad(key, s, "an integer");
    return v;
}

std::uint64_t Config::get_uint64(const std::string& key) const {
    const std::string& s = get_string(key);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s.front() == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
        bad(key, s, "a nonnegative integer");
    }
    return static_cast<std::uint64_t>(v);
}

bool Config::get_bool(const std::string& key) const {
    const std::string& s = get_string(key);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    bad(key, s, "a boolean");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    const std::string& s = get_string(key);
    std::vector<double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) bad(key, s, "a comma-separated list of numbers");
    return out;
}

void Config::require_known(const std::set<std::string>& known) const {
    for (const auto& [k, v] : values_) {
        if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }
}

} // namespace stabledev
