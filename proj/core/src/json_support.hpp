#pragma once

// Internal JSON helpers; nlohmann/json stays out of the public headers.

#include <string>

#include "json.hpp"
#include "leoho/orbit.hpp"

namespace leoho::detail {

using nlohmann::json;

ConstellationConfig constellation_from_json(const json& j);

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

}  // namespace leoho::detail
