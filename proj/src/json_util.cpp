#include "lowcarb/json_util.hpp"

#include "lowcarb/csv.hpp"

namespace lowcarb::json_util {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SpecError(SpecError::Kind::Syntax,
                    "syntax error at byte " + std::to_string(e.byte) + ": " + std::string(e.what()));
  }
}

const json& get_field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SpecError(SpecError::Kind::Syntax, (path.empty() ? "document" : path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(SpecError::Kind::MissingField, "missing required field '" + join(path, key) + "'");
  return *it;
}

double get_number(const json& j, const std::string& key, const std::string& path) {
  const auto& v = get_field(j, key, path);
  if (!v.is_number()) throw SpecError(SpecError::Kind::Syntax, join(path, key) + ": expected a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& key, const std::string& path, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_number(j, key, path);
}

long get_integer(const json& j, const std::string& key, const std::string& path) {
  const auto& v = get_field(j, key, path);
  if (!v.is_number_integer()) throw SpecError(SpecError::Kind::Syntax, join(path, key) + ": expected an integer");
  return v.get<long>();
}

std::string get_string(const json& j, const std::string& key, const std::string& path) {
  const auto& v = get_field(j, key, path);
  if (!v.is_string()) throw SpecError(SpecError::Kind::Syntax, join(path, key) + ": expected a string");
  return v.get<std::string>();
}

const json& get_object(const json& j, const std::string& key, const std::string& path) {
  const auto& v = get_field(j, key, path);
  if (!v.is_object()) throw SpecError(SpecError::Kind::Syntax, join(path, key) + ": expected an object");
  return v;
}

const json& get_array(const json& j, const std::string& key, const std::string& path) {
  const auto& v = get_field(j, key, path);
  if (!v.is_array()) throw SpecError(SpecError::Kind::Syntax, join(path, key) + ": expected an array");
  return v;
}

double as_fraction(const json& value, const std::string& path) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const auto num = csv::to_double(std::string_view(text).substr(0, slash));
      const auto den = csv::to_double(std::string_view(text).substr(slash + 1));
      if (num && den && *den != 0.0) return *num / *den;
    } else if (auto v = csv::to_double(text)) {
      return *v;
    }
  }
  throw SpecError(SpecError::Kind::Syntax, path + ": expected a number or fraction like \"1/3\"");
}

}  // namespace lowcarb::json_util
