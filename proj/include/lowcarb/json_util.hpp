#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "lowcarb/errors.hpp"

// Field accessors that turn nlohmann exceptions into SpecError with a path.
namespace lowcarb::json_util {

// Parses text, reporting the byte offset of any syntax error.
nlohmann::json parse_json(std::string_view text);

const nlohmann::json& get_field(const nlohmann::json& j, const std::string& key, const std::string& path);
double get_number(const nlohmann::json& j, const std::string& key, const std::string& path);
double get_number_or(const nlohmann::json& j, const std::string& key, const std::string& path, double fallback);
long get_integer(const nlohmann::json& j, const std::string& key, const std::string& path);
std::string get_string(const nlohmann::json& j, const std::string& key, const std::string& path);
const nlohmann::json& get_object(const nlohmann::json& j, const std::string& key, const std::string& path);
const nlohmann::json& get_array(const nlohmann::json& j, const std::string& key, const std::string& path);

// A number, or a string holding a simple fraction such as "1/3".
double as_fraction(const nlohmann::json& value, const std::string& path);

}  // namespace lowcarb::json_util
