#include "mailgraph/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "mailgraph/error.hpp"

namespace mailgraph {

FormatError::FormatError(Kind kind, std::string path, std::size_t row, std::size_t column,
                         const std::string& message)
    : Error([&] {
        std::string where = path;
        if (row != 0) where += ":" + std::to_string(row);
        if (column != 0) where += ":" + std::to_string(column);
        return where + ": " + to_string(kind) + ": " + message;
      }()),
      kind_(kind),
      path_(std::move(path)),
      row_(row),
      column_(column) {}

const char* to_string(FormatError::Kind kind) noexcept {
  switch (kind) {
    case FormatError::Kind::unreadable: return "unreadable file";
    case FormatError::Kind::dimension_mismatch: return "dimension mismatch";
    case FormatError::Kind::duplicate_id: return "duplicate id";
    case FormatError::Kind::label_mismatch: return "label mismatch";
    case FormatError::Kind::non_numeric: return "non-numeric cell";
    case FormatError::Kind::invalid_value: return "invalid value";
    case FormatError::Kind::missing_column: return "missing column";
    case FormatError::Kind::empty: return "empty file";
  }
  return "format error";
}

namespace csv {

std::vector<Record> parse(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::string cell;
  bool in_quotes = false;
  bool cell_was_quoted = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_cell = [&] {
    current.cells.push_back(std::move(cell));
    cell.clear();
    cell_was_quoted = false;
  };
  auto end_record = [&] {
    bool quoted = cell_was_quoted;
    end_cell();
    bool blank = current.cells.size() == 1 && current.cells[0].empty() && !quoted;
    if (!blank) records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };

  // Skip a UTF-8 byte order mark.
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        cell_was_quoted = true;
        break;
      case ',':
        end_cell();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line;
        end_record();
        break;
      default:
        cell.push_back(c);
    }
  }
  if (!cell.empty() || !current.cells.empty() || cell_was_quoted) end_record();
  return records;
}

std::vector<Record> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::unreadable, path, 0, 0, "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FormatError(FormatError::Kind::unreadable, path, 0, 0, "read failed");
  return parse(buf.str());
}

std::string escape(std::string_view cell) {
  if (cell.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << escape(row[i]);
  }
  out << '\n';
}

std::string format_real(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_real(double value, int digits) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) noexcept {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_real(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return false;
  out = v;
  return true;
}

}  // namespace csv
}  // namespace mailgraph
