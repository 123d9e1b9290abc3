#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "riskminer/error.hpp"

namespace riskminer {

// Shortest decimal that round-trips to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size())
    fail(ErrorCode::MalformedRecord, "bad number '" + std::string(text) + "'");
  return value;
}

inline long long parse_int(std::string_view text) {
  long long value = 0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size())
    fail(ErrorCode::MalformedRecord, "bad integer '" + std::string(text) + "'");
  return value;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string to_hex(std::uint64_t value);

// Percent-encoding for opaque strings (labels, ids) embedded in
// whitespace-separated artifact lines: escapes space, '%', tab, CR, LF.
std::string encode_field(std::string_view text);
std::string decode_field(std::string_view text);

std::vector<std::string_view> split_whitespace(std::string_view line);
std::vector<std::string_view> split_char(std::string_view line, char sep);
std::string_view trim(std::string_view text);

std::string read_file(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);

// Writes via a sibling temp file and renames into place.
void atomic_write_file(const std::string& path, std::string_view content);

// Minimal RFC-4180-style parser: quoted fields, "" escapes, no embedded
// newlines. Returns one row per input line, blank lines skipped.
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

std::string csv_escape(std::string_view field);

}  // namespace riskminer
