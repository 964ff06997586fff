#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace partx {

/// Exact signed integer used for every count in the library.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

/// Parses an optionally signed run of decimal digits. Anything else yields nullopt.
inline std::optional<BigInt> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (pos == text.size()) return std::nullopt;
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  BigInt value{std::string(text.substr(pos))};
  return text[0] == '-' ? BigInt(-value) : value;
}

/// Least nonnegative residue of `value` modulo `modulus` (modulus > 0).
inline std::uint64_t residue(const BigInt& value, std::uint64_t modulus) {
  BigInt r = value % modulus;
  if (r < 0) r += modulus;
  return r.convert_to<std::uint64_t>();
}

}  // namespace partx
