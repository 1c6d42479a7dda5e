#include "trackrepair/config_file.hpp"

#include <fstream>
#include <sstream>

namespace trackrepair {

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineNumber = 0;
    while (std::getline(in, line)) {
        ++lineNumber;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#' || trimmed[0] == ';') {
            continue;
        }
        if (trimmed.front() == '[') {
            if (trimmed.back() != ']' || trimmed.size() < 3) {
                throw ParseError(lineNumber, "malformed section header '" + trimmed + "'");
            }
            section = trim(trimmed.substr(1, trimmed.size() - 2));
            continue;
        }
        const auto equals = trimmed.find('=');
        if (equals == std::string::npos) {
            throw ParseError(lineNumber, "expected 'key = value', got '" + trimmed + "'");
        }
        const std::string key = trim(trimmed.substr(0, equals));
        if (key.empty()) {
            throw ParseError(lineNumber, "empty key");
        }
        const std::string value = trim(trimmed.substr(equals + 1));
        config.values_[section.empty() ? key : section + "." + key] = value;
    }
    return config;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string KeyValueConfig::getString(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::getDouble(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const double value = std::stod(it->second, &used);
        if (used != it->second.size()) {
            throw std::invalid_argument(it->second);
        }
        return value;
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "' is not a number: '" + it->second + "'");
    }
}

long KeyValueConfig::getLong(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const long value = std::stol(it->second, &used);
        if (used != it->second.size()) {
            throw std::invalid_argument(it->second);
        }
        return value;
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "' is not an integer: '" + it->second + "'");
    }
}

bool KeyValueConfig::getBool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ValidationError("config key '" + key + "' is not a boolean: '" + it->second + "'");
}

std::string KeyValueConfig::requireString(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ValidationError("missing required config key '" + key + "'");
    }
    return it->second;
}

std::vector<std::string> KeyValueConfig::indexedValues(const std::string& prefix) const {
    std::vector<std::string> values;
    for (int i = 0;; ++i) {
        const auto it = values_.find(prefix + "." + std::to_string(i));
        if (it == values_.end()) {
            break;
        }
        values.push_back(it->second);
    }
    return values;
}

std::vector<double> parseNumberList(const std::string& text) {
    std::vector<double> numbers;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            const double value = std::stod(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
            numbers.push_back(value);
        } catch (const std::exception&) {
            throw ValidationError("'" + token + "' is not a number");
        }
    }
    return numbers;
}

}  // namespace trackrepair
