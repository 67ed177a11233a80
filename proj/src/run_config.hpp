#ifndef DIGMOL_RUN_CONFIG_HPP
#define DIGMOL_RUN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace digmol {

// Flat key=value document used for run configuration and for the config
// snapshot embedded in checkpoints. Keys are validated against a fixed
// registry; unknown keys are rejected rather than ignored.
class RunConfig {
public:
    static const std::vector<std::string>& known_keys();

    static RunConfig from_text(const std::string& text);
    static RunConfig from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;

    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, std::int64_t value);
    void set_uint(const std::string& key, std::uint64_t value);

    // Sorted key=value lines; lossless round trip through from_text.
    std::string canonical_text() const;

    // Keys in `other` override keys here (CLI flags over file values).
    void merge(const RunConfig& other);

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

std::string format_double(double value);  // %.17g, round-trip exact

}  // namespace digmol

#endif
