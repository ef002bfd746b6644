#pragma once

// JSON instance and scheme files.
//
// Instance: {"vertices": V, "edges": [[u, v], ...],
//            "customers": [{"s": u, "t": v, "budget": "p/q"}, ...]}
// Scheme:   {"prices": ["p/q", ...]} indexed by edge id.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "tollbooth/model.hpp"

namespace tollbooth {

Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Instance& instance);

PricingScheme scheme_from_json(const nlohmann::json& doc, int edge_count);
nlohmann::json to_json(const PricingScheme& scheme);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Instance load_instance(const std::filesystem::path& path);
PricingScheme load_scheme(const std::filesystem::path& path, int edge_count);

// Budget and price fields: strings "p/q" or "p"; plain JSON integers are accepted too.
Rational rational_from_json(const nlohmann::json& value);

}  // namespace tollbooth
