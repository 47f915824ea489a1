#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace seqroc::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position by name, or nullopt.
  std::optional<std::size_t> find(const std::string& name) const;
};

Table parse(std::istream& in);
Table read_file(const std::string& path);
void write(std::ostream& out, const Table& table);
void write_file(const std::string& path, const Table& table);

/// `digits` significant digits; infinities as "inf"/"-inf".
std::string format_sig(double v, int digits = 6);
/// Shortest representation that parses back to exactly `v`.
std::string format_exact(double v);
/// Strict parse of a full field; accepts "inf", "-inf", "+inf". Throws std::invalid_argument.
double parse_double(const std::string& field);

}  // namespace seqroc::csv
