#include "mailgraph/corpus_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mailgraph/csv.hpp"
#include "mailgraph/error.hpp"

namespace mailgraph {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string normalize_address(std::string_view token) {
  auto lt = token.find('<');
  if (lt != std::string_view::npos) {
    auto gt = token.find('>', lt);
    token = token.substr(lt + 1, gt == std::string_view::npos ? std::string_view::npos : gt - lt - 1);
  }
  std::string out;
  out.reserve(token.size());
  for (char c : csv::trim(token))
    if (c != '"') out.push_back(c);
  std::string_view v = csv::trim(out);
  if (v.size() >= 2 && v.front() == '\'' && v.back() == '\'') v = v.substr(1, v.size() - 2);
  return lower(csv::trim(v));
}

}  // namespace

void IngestDiagnostics::merge(const IngestDiagnostics& o) {
  messages_read += o.messages_read;
  messages_used += o.messages_used;
  parse_failures += o.parse_failures;
  header_lines_skipped += o.header_lines_skipped;
  duplicates_removed += o.duplicates_removed;
  senders_dropped += o.senders_dropped;
  foreign_domain_addresses += o.foreign_domain_addresses;
  unmatched_addresses += o.unmatched_addresses;
  for (const auto& [addr, count] : o.unmatched) unmatched[addr] += count;
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
}

std::string IngestDiagnostics::to_text() const {
  std::ostringstream out;
  out << "messages_read " << messages_read << '\n'
      << "messages_used " << messages_used << '\n'
      << "parse_failures " << parse_failures << '\n'
      << "header_lines_skipped " << header_lines_skipped << '\n'
      << "duplicates_removed " << duplicates_removed << '\n'
      << "senders_dropped " << senders_dropped << '\n'
      << "foreign_domain_addresses " << foreign_domain_addresses << '\n'
      << "unmatched_addresses " << unmatched_addresses << '\n';
  for (const auto& [addr, count] : unmatched) out << "unmatched " << addr << ' ' << count << '\n';
  for (const auto& n : notes) out << "note " << n << '\n';
  return out.str();
}

AliasTable::AliasTable(std::string domain_filter) : domain_(lower(csv::trim(domain_filter))) {}

void AliasTable::add(std::string_view pattern, std::string_view canonical_id) {
  std::string key = lower(csv::trim(pattern));
  std::string id(csv::trim(canonical_id));
  if (key.empty() || id.empty()) throw ConfigError("alias rule needs a pattern and an id");
  if (key.find('@') == std::string::npos)
    throw ConfigError("alias pattern '" + key + "' must contain '@'");
  auto [it, inserted] = rules_.emplace(key, id);
  if (!inserted && it->second != id)
    throw ConfigError("alias pattern '" + key + "' maps to both '" + it->second + "' and '" +
                      id + "'");
}

std::optional<std::string> AliasTable::lookup(std::string_view address) const {
  if (auto it = rules_.find(std::string(address)); it != rules_.end()) return it->second;
  auto at = address.rfind('@');
  if (at == std::string_view::npos) return std::nullopt;
  if (auto it = rules_.find(std::string(address.substr(0, at + 1))); it != rules_.end())
    return it->second;
  return std::nullopt;
}

void AliasTable::validate(const NodeRoster& roster) const {
  // Sorted so the reported id does not depend on hash order.
  std::set<std::string> missing;
  for (const auto& [pattern, id] : rules_)
    if (!roster.find(id)) missing.insert(id);
  if (!missing.empty())
    throw ConfigError("alias table refers to id '" + *missing.begin() +
                      "' which is not in the roster");
}

AliasTable load_alias_csv(const std::string& path, std::string domain_filter) {
  AliasTable table(std::move(domain_filter));
  auto records = csv::read_file(path);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (r == 0 && rec.cells.size() >= 1 && lower(csv::trim(rec.cells[0])) == "pattern") continue;
    if (rec.cells.size() != 2)
      throw FormatError(FormatError::Kind::dimension_mismatch, path, rec.line, 0,
                        "expected `pattern,canonical_id`");
    try {
      table.add(rec.cells[0], rec.cells[1]);
    } catch (const ConfigError& e) {
      throw FormatError(FormatError::Kind::invalid_value, path, rec.line, 1, e.what());
    }
  }
  return table;
}

void save_alias_csv(const AliasTable& table, const std::string& path) {
  std::vector<std::pair<std::string, std::string>> rows(table.rules().begin(),
                                                        table.rules().end());
  std::sort(rows.begin(), rows.end());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(FormatError::Kind::unreadable, path, 0, 0, "cannot open for writing");
  csv::write_row(out, {"pattern", "canonical_id"});
  for (const auto& [pattern, id] : rows) csv::write_row(out, {pattern, id});
}

std::vector<std::string> load_alias_templates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(FormatError::Kind::unreadable, path, 0, 0, "cannot open");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = csv::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

AliasTable expand_alias_templates(const NodeRoster& roster,
                                  const std::vector<std::string>& templates,
                                  std::string domain_filter, IngestDiagnostics* diagnostics) {
  struct NameParts {
    std::string first, middle, last;
  };
  auto split_name = [](std::string_view name) -> std::optional<NameParts> {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(name)};
    std::string tok;
    while (in >> tok) {
      std::string clean;
      for (char c : tok)
        if (c != '.' && c != ',' && c != '"' && c != '\'') clean.push_back(c);
      if (!clean.empty()) tokens.push_back(lower(clean));
    }
    if (tokens.size() < 2) return std::nullopt;
    NameParts p{tokens.front(), "", tokens.back()};
    for (std::size_t i = 1; i + 1 < tokens.size(); ++i) p.middle += tokens[i];
    return p;
  };

  std::map<std::string, std::set<std::string>> generated;
  for (const auto& person : roster.people()) {
    auto parts = split_name(person.name);
    if (!parts) continue;
    for (const auto& tmpl : templates) {
      std::string out;
      bool usable = true;
      for (std::size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl[i] != '{') {
          out.push_back(tmpl[i]);
          continue;
        }
        auto close = tmpl.find('}', i);
        if (close == std::string::npos)
          throw ConfigError("unterminated placeholder in alias template '" + tmpl + "'");
        std::string key = tmpl.substr(i + 1, close - i - 1);
        i = close;
        if (key == "first") out += parts->first;
        else if (key == "last") out += parts->last;
        else if (key == "f") out += parts->first.substr(0, 1);
        else if (key == "middle" || key == "m") {
          if (parts->middle.empty()) usable = false;
          else out += key == "m" ? parts->middle.substr(0, 1) : parts->middle;
        } else {
          throw ConfigError("unknown placeholder {" + key + "} in alias template '" + tmpl + "'");
        }
      }
      if (usable) generated[lower(out)].insert(person.id);
    }
  }

  AliasTable table(std::move(domain_filter));
  for (const auto& [pattern, ids] : generated) {
    if (ids.size() > 1) {
      if (diagnostics) {
        std::string who;
        for (const auto& id : ids) who += (who.empty() ? "" : " ") + id;
        diagnostics->note("ambiguous alias " + pattern + " dropped (" + who + ")");
      }
      continue;
    }
    table.add(pattern, *ids.begin());
  }
  return table;
}

std::vector<std::string> split_addresses(std::string_view value) {
  std::vector<std::string> out;
  std::string token;
  bool in_quotes = false;
  int angle = 0;
  auto flush = [&] {
    std::string addr = normalize_address(token);
    token.clear();
    // Group syntax such as `undisclosed-recipients:;` carries no address.
    if (addr.empty() || addr.find(':') != std::string::npos || addr == ";") return;
    out.push_back(std::move(addr));
  };
  for (char c : value) {
    if (c == '"') in_quotes = !in_quotes;
    else if (!in_quotes && c == '<') ++angle;
    else if (!in_quotes && c == '>' && angle > 0) --angle;
    if (c == ',' && !in_quotes && angle == 0) {
      flush();
      continue;
    }
    token.push_back(c);
  }
  flush();
  return out;
}

EmailRecord parse_email(std::string_view raw, const std::string& source_path,
                        IngestDiagnostics* diagnostics) {
  struct Header {
    std::string name;
    std::string value;
  };
  std::vector<Header> headers;

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= raw.size()) {
    auto eol = raw.find('\n', pos);
    std::string_view line =
        raw.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? raw.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (csv::trim(line).empty()) break;  // end of header block

    if (line.front() == ' ' || line.front() == '\t') {
      if (headers.empty()) {
        if (diagnostics) {
          ++diagnostics->header_lines_skipped;
          diagnostics->note(source_path + ":" + std::to_string(line_no) +
                            ": continuation line before any header");
        }
        continue;
      }
      headers.back().value += ' ';
      headers.back().value += csv::trim(line);
      continue;
    }
    auto colon = line.find(':');
    std::string_view name = colon == std::string_view::npos ? std::string_view{} : line.substr(0, colon);
    bool valid = !name.empty() && name.find_first_of(" \t") == std::string_view::npos;
    if (!valid) {
      if (diagnostics) {
        ++diagnostics->header_lines_skipped;
        diagnostics->note(source_path + ":" + std::to_string(line_no) + ": malformed header line");
      }
      continue;
    }
    headers.push_back({lower(name), std::string(csv::trim(line.substr(colon + 1)))});
  }

  EmailRecord rec;
  rec.source_path = source_path;
  bool have_from = false;
  for (const auto& h : headers) {
    if (h.name == "from" && !have_from) {
      auto addrs = split_addresses(h.value);
      if (!addrs.empty()) {
        rec.from_addr = addrs.front();
        have_from = true;
      }
    } else if (h.name == "to") {
      auto addrs = split_addresses(h.value);
      rec.to_addrs.insert(rec.to_addrs.end(), addrs.begin(), addrs.end());
    } else if (h.name == "cc") {
      auto addrs = split_addresses(h.value);
      rec.cc_addrs.insert(rec.cc_addrs.end(), addrs.begin(), addrs.end());
    } else if (h.name == "date" && rec.date.empty()) {
      rec.date = h.value;
    } else if (h.name == "message-id" && rec.message_id.empty()) {
      rec.message_id = h.value;
    }
  }
  if (!have_from) throw ParseError(source_path, "message has no From address");
  return rec;
}

std::optional<std::string> resolve(std::string_view address, const AliasTable& table,
                                   IngestDiagnostics* diagnostics) {
  auto at = address.rfind('@');
  if (at == std::string_view::npos || address.substr(at + 1) != table.domain_filter()) {
    if (diagnostics) ++diagnostics->foreign_domain_addresses;
    return std::nullopt;
  }
  auto id = table.lookup(address);
  if (!id && diagnostics) {
    ++diagnostics->unmatched_addresses;
    ++diagnostics->unmatched[std::string(address)];
  }
  return id;
}

namespace {

std::vector<std::string> unique_in_order(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& s : v)
    if (seen.insert(s).second) out.push_back(s);
  return out;
}

std::string dedupe_key(const EmailRecord& r) {
  std::string key = r.from_addr;
  key += '\x1f';
  for (const auto& a : r.to_addrs) key += a + '\x1e';
  key += '\x1f';
  for (const auto& a : r.cc_addrs) key += a + '\x1e';
  key += '\x1f';
  key += r.date;
  key += '\x1f';
  key += r.message_id;
  return key;
}

// Per-pair tally. Weights are formed from counts at the end in a fixed order,
// so the matrix is bit-identical for any ordering of the input.
struct PairTally {
  std::size_t direct = 0;
  std::map<std::size_t, std::size_t> cc_by_list_size;
};

}  // namespace

WeightedDigraph accumulate(const std::vector<EmailRecord>& records, const AliasTable& table,
                           const NodeRoster& roster, const AccumulateOptions& options,
                           IngestDiagnostics* diagnostics) {
  table.validate(roster);
  const std::size_t n = roster.size();

  auto index_of = [&](const std::string& addr) -> std::optional<std::size_t> {
    auto id = resolve(addr, table, diagnostics);
    if (!id) return std::nullopt;
    return roster.find(*id);
  };

  std::unordered_map<std::size_t, PairTally> tallies;
  std::unordered_set<std::string> seen;
  for (const auto& rec : records) {
    if (options.dedupe && !seen.insert(dedupe_key(rec)).second) {
      if (diagnostics) ++diagnostics->duplicates_removed;
      continue;
    }
    auto sender = index_of(rec.from_addr);
    if (!sender) {
      if (diagnostics) ++diagnostics->senders_dropped;
      continue;
    }
    if (diagnostics) ++diagnostics->messages_used;

    for (const auto& addr : unique_in_order(rec.to_addrs))
      if (auto j = index_of(addr)) ++tallies[*sender * n + *j].direct;

    auto cc = unique_in_order(rec.cc_addrs);
    for (const auto& addr : cc)
      if (auto j = index_of(addr)) ++tallies[*sender * n + *j].cc_by_list_size[cc.size()];
  }

  Matrix m(n);
  for (const auto& [key, tally] : tallies) {
    double w = static_cast<double>(tally.direct);
    for (const auto& [list_size, count] : tally.cc_by_list_size)
      w += static_cast<double>(count) / std::sqrt(1.0 + static_cast<double>(list_size));
    m(key / n, key % n) = w;
  }
  return WeightedDigraph(roster, std::move(m));
}

std::vector<EmailRecord> read_corpus_dir(const std::string& dir, IngestDiagnostics* diagnostics) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw FormatError(FormatError::Kind::unreadable, dir, 0, 0, "not a directory");

  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::end(it);
       it.increment(ec))
    if (it->is_regular_file()) files.push_back(it->path());
  if (ec) throw FormatError(FormatError::Kind::unreadable, dir, 0, 0, ec.message());
  std::sort(files.begin(), files.end());

  std::vector<EmailRecord> out;
  out.reserve(files.size());
  std::string text;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      if (diagnostics) diagnostics->note(path.string() + ": unreadable, skipped");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    if (diagnostics) ++diagnostics->messages_read;
    try {
      out.push_back(parse_email(text, path.string(), diagnostics));
    } catch (const ParseError& e) {
      if (diagnostics) {
        ++diagnostics->parse_failures;
        diagnostics->note(e.what());
      }
    }
  }
  return out;
}

std::vector<EmailRecord> read_corpus_csv(const std::string& path, IngestDiagnostics* diagnostics) {
  auto records = csv::read_file(path);
  if (records.empty()) throw FormatError(FormatError::Kind::empty, path, 0, 0, "no header row");

  int from_col = -1, to_col = -1, cc_col = -1, date_col = -1, id_col = -1;
  const auto& header = records[0].cells;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string h = lower(csv::trim(header[c]));
    int col = static_cast<int>(c);
    if (h == "from") from_col = col;
    else if (h == "to") to_col = col;
    else if (h == "cc") cc_col = col;
    else if (h == "date") date_col = col;
    else if (h == "message_id" || h == "message-id") id_col = col;
  }
  if (from_col < 0 || to_col < 0 || cc_col < 0)
    throw FormatError(FormatError::Kind::missing_column, path, records[0].line, 0,
                      "header needs from, to and cc columns");

  auto split_list = [](std::string_view cell) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= cell.size()) {
      auto semi = cell.find(';', start);
      auto piece = cell.substr(start, semi == std::string_view::npos ? std::string_view::npos
                                                                     : semi - start);
      std::string addr = normalize_address(piece);
      if (!addr.empty()) out.push_back(std::move(addr));
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    return out;
  };

  std::vector<EmailRecord> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto cell = [&](int col) -> std::string_view {
      if (col < 0 || static_cast<std::size_t>(col) >= rec.cells.size()) return {};
      return rec.cells[static_cast<std::size_t>(col)];
    };
    if (diagnostics) ++diagnostics->messages_read;
    EmailRecord e;
    e.source_path = path + ":" + std::to_string(rec.line);
    auto from = split_list(cell(from_col));
    if (from.empty()) {
      if (diagnostics) {
        ++diagnostics->parse_failures;
        diagnostics->note(e.source_path + ": message has no From address");
      }
      continue;
    }
    e.from_addr = from.front();
    e.to_addrs = split_list(cell(to_col));
    e.cc_addrs = split_list(cell(cc_col));
    e.date = std::string(csv::trim(cell(date_col)));
    e.message_id = std::string(csv::trim(cell(id_col)));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace mailgraph
