#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lakebloom::io {

struct CsvRecord {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

struct CsvTable {
  std::string source;  // file name used in error messages
  std::vector<std::string> header;
  std::vector<CsvRecord> rows;
};

/// Strict RFC-4180 parse: comma separators, CRLF or LF record ends, quoted
/// fields with doubled quotes, one header record, and every record as wide as
/// the header. A trailing newline is optional. Throws ParseError with the line.
CsvTable parse_csv(std::string_view text, const std::string& source);

/// Reads and parses a file. Throws ParseError (line 0) when it cannot be read.
CsvTable read_csv(const std::filesystem::path& path);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view field);

/// Joins fields with commas, quoting as needed, and appends "\n".
std::string csv_line(const std::vector<std::string>& fields);

/// Round-trip formatting with %.17g. NaN is written as "NA".
std::string format_number(double value);

/// Parses an entire field as a finite double. Throws ParseError naming the column.
double parse_number(std::string_view field, const std::string& source, std::size_t line,
                    std::string_view column);

}  // namespace lakebloom::io
