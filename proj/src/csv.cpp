#include "optthresh/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <system_error>

#include "optthresh/errors.hpp"

namespace optthresh::csv {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

Table read(std::istream& in, const std::string& source) {
  Table table;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = split(view);
    if (!have_header) {
      table.header = std::move(fields);
      table.header_line = number;
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError(source, number,
                       "expected " + std::to_string(table.header.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    table.rows.push_back(Row{number, std::move(fields)});
  }
  if (!have_header) {
    throw ParseError(source, 0, "empty file (missing header)");
  }
  return table;
}

double parse_double(std::string_view field, const std::string& source, std::size_t line, std::string_view column) {
  if (field == "nan" || field == "NaN") return std::nan("");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(source, line, "column '" + std::string(column) + "': not a number: '" + std::string(field) + "'");
  }
  return value;
}

long long parse_int(std::string_view field, const std::string& source, std::size_t line, std::string_view column) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(source, line,
                     "column '" + std::string(column) + "': not an integer: '" + std::string(field) + "'");
  }
  return value;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

void expect_header(const Table& table, const std::vector<std::string>& expected, const std::string& source) {
  if (table.header != expected) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) want += ',';
      want += expected[i];
    }
    throw ParseError(source, table.header_line, "expected header '" + want + "'");
  }
}

}  // namespace optthresh::csv
