#pragma once

#include <json.hpp>

#include "l2a/instance.hpp"
#include "l2a/report.hpp"

namespace l2a {

using Json = nlohmann::ordered_json;

// Schema violations carry the JSON path of the offending field.
struct SchemaError : std::invalid_argument {
    SchemaError(const std::string& path, const std::string& what)
        : std::invalid_argument(what + " (at " + path + ")"), path(path) {}
    std::string path;
};

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Canonical report payload: deterministic field order, no timing data.
Json report_to_json(const Report& rep, const std::string& instance_name);
std::string report_to_text(const Report& rep, const std::string& instance_name);

}  // namespace l2a
