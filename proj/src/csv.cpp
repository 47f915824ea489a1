#include "seqroc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "seqroc/errors.hpp"

namespace seqroc::csv {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::optional<std::size_t> Table::find(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

Table parse(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!have_header) {
      // Strip a UTF-8 byte-order mark.
      if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (trim(line).empty()) continue;
      t.header = split_line(line);
      have_header = true;
      continue;
    }
    ++row;
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != t.header.size())
      throw ParseError("csv row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                           " fields, header has " + std::to_string(t.header.size()),
                       row);
    t.rows.push_back(std::move(fields));
  }
  if (!have_header) throw ParseError("csv: missing header row", 0);
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse(in);
}

void write(std::ostream& out, const Table& table) {
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << quote_if_needed(fields[i]);
    }
    out << '\n';
  };
  emit(table.header);
  for (const auto& r : table.rows) emit(r);
}

void write_file(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write(out, table);
  if (!out) throw IoError("write failed: " + path);
}

std::string format_sig(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_exact(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("format_exact failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& field) {
  const std::string s = trim(field);
  if (s == "inf" || s == "+inf" || s == "Inf") return INFINITY;
  if (s == "-inf" || s == "-Inf") return -INFINITY;
  if (s.empty()) throw std::invalid_argument("empty field");
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || std::isnan(v))
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

}  // namespace seqroc::csv
