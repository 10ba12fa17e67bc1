#pragma once

#include <string>
#include <vector>

namespace bss {

/// A CSV file parsed whole: RFC 4180 quoting, CRLF tolerant, UTF-8
/// passed through untouched. Structural oddities never throw; a row is
/// whatever fields were found between record separators.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index for a header name, -1 when absent.
  int column(const std::string& name) const;
};

/// Parses CSV text. Total over arbitrary byte content.
CsvTable parse_csv(const std::string& text);

/// Reads and parses a CSV file. Throws IoError when the file cannot be read.
CsvTable read_csv_file(const std::string& path);

/// Quotes a field if it contains a comma, quote, or newline.
std::string csv_field(const std::string& value);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Writes text to a file, throwing IoError on failure.
void write_file(const std::string& path, const std::string& text);

std::string read_file(const std::string& path);

}  // namespace bss
