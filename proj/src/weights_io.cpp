#include "trackrepair/weights_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace trackrepair {

namespace {

// Round-trippable and stable across runs.
double parseJsonNumber(const nlohmann::json& node, const std::string& what) {
    if (!node.is_number()) {
        throw ValidationError("'" + what + "' must be a number");
    }
    return node.get<double>();
}

}  // namespace

std::string serializeLearnedParams(const LearnedParams& params) {
    nlohmann::json doc;
    for (int i = 1; i <= 9; ++i) {
        doc["weights"]["w" + std::to_string(i)] = params.weights[i];
    }
    doc["normalization"]["count"] = params.stats.trainedCount;
    for (const int feature : NormalizationStats::kZScoredFeatures) {
        doc["normalization"]["mu"]["f" + std::to_string(feature)] = params.stats.muOf(feature);
        doc["normalization"]["sigma"]["f" + std::to_string(feature)] = params.stats.sigmaOf(feature);
    }
    return doc.dump(2) + "\n";
}

LearnedParams parseLearnedParams(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& error) {
        throw ValidationError(std::string("invalid weights file: ") + error.what());
    }
    if (!doc.contains("weights")) {
        throw ValidationError("weights file has no 'weights' object");
    }
    LearnedParams params;
    for (int i = 1; i <= 9; ++i) {
        const std::string key = "w" + std::to_string(i);
        if (!doc["weights"].contains(key)) {
            throw ValidationError("weights file is missing '" + key + "'");
        }
        params.weights[i] = parseJsonNumber(doc["weights"][key], key);
    }
    params.weights.validate();

    if (doc.contains("normalization")) {
        const auto& norm = doc["normalization"];
        params.stats.trainedCount = norm.value("count", 0L);
        for (const int feature : NormalizationStats::kZScoredFeatures) {
            const std::string key = "f" + std::to_string(feature);
            if (norm.contains("mu") && norm["mu"].contains(key)) {
                params.stats.mu[static_cast<std::size_t>(feature - 1)] =
                    parseJsonNumber(norm["mu"][key], "mu." + key);
            }
            if (norm.contains("sigma") && norm["sigma"].contains(key)) {
                const double sigma = parseJsonNumber(norm["sigma"][key], "sigma." + key);
                if (sigma < 0.0) {
                    throw ValidationError("sigma." + key + " must be non-negative");
                }
                params.stats.sigma[static_cast<std::size_t>(feature - 1)] = sigma;
            }
        }
    }
    return params;
}

LearnedParams loadLearnedParams(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open weights file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseLearnedParams(buffer.str());
}

void saveLearnedParams(const std::string& path, const LearnedParams& params) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write weights file '" + path + "'");
    }
    out << serializeLearnedParams(params);
}

}  // namespace trackrepair
