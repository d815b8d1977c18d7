// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/io_json.hpp"

#include <cmath>

namespace tabletale::io {

std::string canonical(const Json& j) { return j.dump(); }

namespace detail {

void malformed(const std::string& message, std::size_t line) {
  if (line > 0)
    throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line) + ": " + message,
                line);
  throw Error(ErrorCode::MalformedRecord, message);
}

Json parse_line(const std::string& text, std::size_t line) {
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) malformed("record is not an object", line);
    return j;
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what(), line);
  }
}

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view what, std::size_t line) {
  if (!obj.is_object()) malformed(std::string(what) + " must be an object", line);
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) malformed("unknown field '" + key + "' in " + std::string(what), line);
  }
}

const Json& required(const Json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing field '") + key + "'", line);
  return *it;
}

double as_number(const Json& j, const char* what, std::size_t line) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number", line);
  double v = j.get<double>();
  if (!std::isfinite(v)) malformed(std::string(what) + " must be finite", line);
  return v;
}

std::int64_t as_int(const Json& j, const char* what, std::size_t line) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer", line);
  return j.get<std::int64_t>();
}

std::string as_string(const Json& j, const char* what, std::size_t line) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string", line);
  return j.get<std::string>();
}

bool as_bool(const Json& j, const char* what, std::size_t line) {
  if (!j.is_boolean()) malformed(std::string(what) + " must be a boolean", line);
  return j.get<bool>();
}

double number_at(const Json& obj, const char* key, std::size_t line) {
  return as_number(required(obj, key, line), key, line);
}
std::int64_t int_at(const Json& obj, const char* key, std::size_t line) {
  return as_int(required(obj, key, line), key, line);
}
std::string string_at(const Json& obj, const char* key, std::size_t line) {
  return as_string(required(obj, key, line), key, line);
}
std::optional<std::string> opt_string_at(const Json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return as_string(*it, key, line);
}
std::optional<std::int64_t> opt_int_at(const Json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return as_int(*it, key, line);
}

namespace {
void expect_array(const Json& j, std::size_t n, const char* what, std::size_t line) {
  if (!j.is_array() || j.size() != n)
    malformed(std::string(what) + " must be an array of " + std::to_string(n) + " numbers",
              line);
}
}  // namespace

Rect rect_from(const Json& j, std::size_t line) {
  expect_array(j, 4, "rect", line);
  Rect r{as_number(j[0], "rect", line), as_number(j[1], "rect", line),
         as_number(j[2], "rect", line), as_number(j[3], "rect", line)};
  if (r.w < 0 || r.h < 0) malformed("rect width and height must be >= 0", line);
  return r;
}
Json rect_to(const Rect& r) { return Json::array({r.x, r.y, r.w, r.h}); }

Vec3 vec3_from(const Json& j, std::size_t line) {
  expect_array(j, 3, "position", line);
  return {as_number(j[0], "position", line), as_number(j[1], "position", line),
          as_number(j[2], "position", line)};
}
Json vec3_to(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Point2 point_from(const Json& j, std::size_t line) {
  expect_array(j, 2, "point", line);
  return {as_number(j[0], "point", line), as_number(j[1], "point", line)};
}
Json point_to(const Point2& p) { return Json::array({p.x, p.y}); }

}  // namespace detail
}  // namespace tabletale::io
