#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trackrepair/model.hpp"

namespace trackrepair {

// Flat key-value configuration with [section] headers:
//
//   [ga]
//   population = 500
//   # comment
//
// Keys are addressed as "section.key". Values keep their raw text; typed
// getters convert on access. Repeated keys keep the last value; list-like
// data uses indexed keys (occluder.0, occluder.1, ...).
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string getString(const std::string& key, const std::string& fallback) const;
    double getDouble(const std::string& key, double fallback) const;
    long getLong(const std::string& key, long fallback) const;
    bool getBool(const std::string& key, bool fallback) const;

    std::string requireString(const std::string& key) const;

    // All values under "prefix.<n>" for n = 0,1,2,... stopping at the first gap.
    std::vector<std::string> indexedValues(const std::string& prefix) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    std::map<std::string, std::string> values_;
};

// Whitespace-separated doubles, e.g. "0 -3 1 3 0.5 2 4".
std::vector<double> parseNumberList(const std::string& text);

}  // namespace trackrepair
