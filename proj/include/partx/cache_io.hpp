#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "partx/bigint.hpp"
#include "partx/counting.hpp"

namespace partx {

inline constexpr std::string_view kTableHeader = "#partition-table v1";

/// Malformed partition-table file. `line()` is 1-based; 0 means the file as a whole.
class CacheError : public std::runtime_error {
 public:
  CacheError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Writes the header followed by one `n,P(n)` line per entry.
inline void write_table(const CountTable& table, std::ostream& out) {
  out << kTableHeader << '\n';
  const auto values = table.values();
  for (std::size_t n = 0; n < values.size(); ++n) out << n << ',' << values[n].str() << '\n';
}

/// Parses the partition-table v1 format. Validates the header, the leading
/// `0,1` entry, gap-free increasing indices and decimal values; it does not
/// check the values against the recurrence.
inline CountTable read_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw CacheError(1, "empty file, expected header");
  if (line != kTableHeader) {
    throw CacheError(1, "expected header '" + std::string(kTableHeader) + "'");
  }
  std::vector<BigInt> values;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw CacheError(line_no, "expected 'n,P(n)'");
    const std::string index_text = line.substr(0, comma);
    const std::string value_text = line.substr(comma + 1);
    auto is_digits = [](const std::string& s) {
      return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    if (!is_digits(index_text)) throw CacheError(line_no, "index is not a decimal integer");
    if (!is_digits(value_text)) throw CacheError(line_no, "value is not a decimal integer");
    if (index_text != std::to_string(values.size())) {
      throw CacheError(line_no, "expected index " + std::to_string(values.size()) + ", found " +
                                    index_text);
    }
    values.emplace_back(value_text);
    if (values.size() == 1 && values.front() != 1) throw CacheError(line_no, "P(0) must be 1");
  }
  if (values.empty()) throw CacheError(0, "table has no entries; line '0,1' is required");
  return CountTable::from_values(std::move(values));
}

inline void save_table(const CountTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError(0, "cannot open " + path.string() + " for writing");
  write_table(table, out);
  if (!out.flush()) throw CacheError(0, "write to " + path.string() + " failed");
}

inline CountTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError(0, "cannot open " + path.string());
  return read_table(in);
}

}  // namespace partx
