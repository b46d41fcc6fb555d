#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ladderlab/error.hpp"

namespace ladderlab {

// Shortest representation that round-trips to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end == tmp.c_str() || *end != '\0') {
    throw Error(ErrorKind::io, "not a number: '" + tmp + "'");
  }
  return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Parses "MAGIC v1 key=value key=value ...".
inline std::map<std::string, std::string> parse_header(const std::string& line, std::string_view magic) {
  std::istringstream is(line);
  std::string word, version;
  is >> word >> version;
  if (word != magic || version != "v1") {
    throw Error(ErrorKind::io, "expected header '" + std::string(magic) + " v1', got '" + line + "'");
  }
  std::map<std::string, std::string> fields;
  while (is >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::io, "malformed header field '" + word + "'");
    fields[word.substr(0, eq)] = word.substr(eq + 1);
  }
  return fields;
}

inline double header_value(const std::map<std::string, std::string>& fields, const std::string& key) {
  const auto it = fields.find(key);
  if (it == fields.end()) throw Error(ErrorKind::io, "header field '" + key + "' missing");
  return parse_double(it->second);
}

}  // namespace ladderlab
