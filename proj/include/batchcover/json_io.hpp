#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "batchcover/types.hpp"

namespace batchcover {

// Instance file format:
//   {"num_sets": m, "costs": [c_1,...,c_m],
//    "batches": [[{"id":"k.q","member_of":[1-based indices]},...],...],
//    "meta": {"family":"Iz","z":Z,"m":M}}
// Field order as shown, member_of ascending; "meta" is omitted when absent.
nlohmann::ordered_json instance_to_json(const Instance& inst);

// Parses the format above. Structural problems (missing fields, bad id
// strings) throw InvalidArguments; semantic violations are left to
// validate_instance.
Instance instance_from_json(const nlohmann::json& j);

std::string instance_to_json_string(const Instance& inst);
Instance instance_from_json_string(const std::string& text);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace batchcover
