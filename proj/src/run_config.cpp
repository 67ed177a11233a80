#include "run_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace digmol {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

const std::vector<std::string>& RunConfig::known_keys() {
    static const std::vector<std::string> keys = {
        "alpha",       "batch_size", "beta",      "dropout",  "emb_dim",
        "encoder_mode", "epochs",    "epsilon",   "gamma",    "k_steps",
        "lr",          "mask_ratio", "momentum",  "num_layer", "proj_dim",
        "seed",        "temperature", "unidir_ratio",
    };
    return keys;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const auto& keys = known_keys();
    bool known = false;
    for (const std::string& k : keys) {
        if (k == key) {
            known = true;
            break;
        }
    }
    if (!known) {
        throw Error(ErrorCode::invalid_config, "unknown configuration key: " + key);
    }
    values_[key] = value;
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::invalid_config,
                        "expected key=value on line " + std::to_string(line_no));
        }
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        std::size_t vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
        config.set(key, value);
    }
    return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io_failure, "cannot read config file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const char* text = it->second.c_str();
    char* end = nullptr;
    double value = std::strtod(text, &end);
    if (end == text || *end != '\0') {
        throw Error(ErrorCode::invalid_config, "not a number: " + key + "=" + it->second);
    }
    return value;
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const char* text = it->second.c_str();
    char* end = nullptr;
    long long value = std::strtoll(text, &end, 10);
    if (end == text || *end != '\0') {
        throw Error(ErrorCode::invalid_config, "not an integer: " + key + "=" + it->second);
    }
    return value;
}

std::uint64_t RunConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const char* text = it->second.c_str();
    char* end = nullptr;
    unsigned long long value = std::strtoull(text, &end, 10);
    if (end == text || *end != '\0') {
        throw Error(ErrorCode::invalid_config, "not an unsigned integer: " + key + "=" + it->second);
    }
    return value;
}

void RunConfig::set_double(const std::string& key, double value) {
    set(key, format_double(value));
}

void RunConfig::set_int(const std::string& key, std::int64_t value) {
    set(key, std::to_string(value));
}

void RunConfig::set_uint(const std::string& key, std::uint64_t value) {
    set(key, std::to_string(value));
}

std::string RunConfig::canonical_text() const {
    std::string out;
    for (const auto& [key, value] : values_) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

void RunConfig::merge(const RunConfig& other) {
    for (const auto& [key, value] : other.values_) values_[key] = value;
}

}  // namespace digmol
