#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mailgraph::csv {

using Row = std::vector<std::string>;

/// One logical record plus the physical line it started on.
struct Record {
  Row cells;
  std::size_t line = 0;
};

/// RFC 4180 reader: quoted cells may contain commas, doubled quotes and
/// newlines. CRLF line endings are accepted. Blank lines are skipped.
std::vector<Record> parse(std::string_view text);

/// Reads and parses a whole file. Throws FormatError(unreadable).
std::vector<Record> read_file(const std::string& path);

/// Quotes a cell when it contains a delimiter, quote or line break.
std::string escape(std::string_view cell);

void write_row(std::ostream& out, const Row& row);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

/// Decimal text with `digits` significant digits (general notation).
std::string format_real(double value, int digits);

/// Strict parse of a decimal or scientific literal; surrounding blanks are
/// ignored. Returns false on anything else.
bool parse_real(std::string_view text, double& out);

std::string_view trim(std::string_view s) noexcept;

}  // namespace mailgraph::csv
