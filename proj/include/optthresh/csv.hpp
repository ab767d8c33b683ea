#pragma once

// Minimal CSV reading/writing for the tool's numeric tables: a header row,
// comma-separated fields, optional surrounding whitespace, blank lines and
// '#' comment lines ignored.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace optthresh::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::size_t header_line = 0;
  std::vector<Row> rows;
};

// Throws ParseError on an empty input or a row whose width differs from the header.
Table read(std::istream& in, const std::string& source);

double parse_double(std::string_view field, const std::string& source, std::size_t line, std::string_view column);
long long parse_int(std::string_view field, const std::string& source, std::size_t line, std::string_view column);

// Shortest text that reads back to the same double ("nan"/"inf" for
// non-finite values).
std::string format_double(double value);

// Throws ParseError unless the header matches `expected` exactly.
void expect_header(const Table& table, const std::vector<std::string>& expected, const std::string& source);

}  // namespace optthresh::csv
