#pragma once

// Small helpers for strict JSON reading: every accessor names the field path
// it failed on, and unknown keys are rejected.

#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>  // nlohmann, vendored

#include "trussopt/errors.hpp"

namespace trussopt::io {

using json = nlohmann::json;

namespace detail {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

inline void reject_unknown(const json& obj, const std::string& where,
                           std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError(where + ": unknown field '" + it.key() + "'");
  }
}

inline const json& require(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

inline double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

inline long long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<long long>();
}

inline std::size_t as_count(const json& v, const std::string& where) {
  const long long n = as_integer(v, where);
  if (n < 0) throw ParseError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(n);
}

inline bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw ParseError(where + ": expected true or false");
  return v.get<bool>();
}

inline std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

inline const json& as_array(const json& v, const std::string& where, std::size_t size = 0) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  if (size && v.size() != size) {
    throw ParseError(where + ": expected " + std::to_string(size) + " entries");
  }
  return v;
}

}  // namespace detail
}  // namespace trussopt::io
