// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

// Strict JSON accessors shared by the record readers. Every failure is a
// MalformedRecord carrying the input line (0 when unknown).

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include "engine/io.hpp"

namespace tabletale::io::detail {

[[noreturn]] void malformed(const std::string& message, std::size_t line);

Json parse_line(const std::string& text, std::size_t line);

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view what, std::size_t line);
const Json& required(const Json& obj, const char* key, std::size_t line);

double as_number(const Json& j, const char* what, std::size_t line);
std::int64_t as_int(const Json& j, const char* what, std::size_t line);
std::string as_string(const Json& j, const char* what, std::size_t line);
bool as_bool(const Json& j, const char* what, std::size_t line);

double number_at(const Json& obj, const char* key, std::size_t line);
std::int64_t int_at(const Json& obj, const char* key, std::size_t line);
std::string string_at(const Json& obj, const char* key, std::size_t line);
std::optional<std::string> opt_string_at(const Json& obj, const char* key, std::size_t line);
std::optional<std::int64_t> opt_int_at(const Json& obj, const char* key, std::size_t line);

Rect rect_from(const Json& j, std::size_t line);
Json rect_to(const Rect& r);
Vec3 vec3_from(const Json& j, std::size_t line);
Json vec3_to(const Vec3& v);
Point2 point_from(const Json& j, std::size_t line);
Json point_to(const Point2& p);

/// Maps a string through a `*_from_string` lookup or fails.
template <class Fn>
auto enum_at(const Json& obj, const char* key, Fn lookup, std::size_t line) {
  std::string s = string_at(obj, key, line);
  auto v = lookup(s);
  if (!v) malformed(std::string("unknown ") + key + " '" + s + "'", line);
  return *v;
}

template <class T>
void put_opt(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace tabletale::io::detail
