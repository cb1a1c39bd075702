#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mailgraph/graph_model.hpp"

namespace mailgraph {

/// Sender and recipients of one message. Addresses are lowercase and trimmed.
struct EmailRecord {
  std::string from_addr;
  std::vector<std::string> to_addrs;
  std::vector<std::string> cc_addrs;
  std::string source_path;
  // Only used to identify duplicate copies of a message.
  std::string date;
  std::string message_id;
};

/// Counters and notes collected while ingesting a corpus.
struct IngestDiagnostics {
  std::size_t messages_read = 0;
  std::size_t messages_used = 0;
  std::size_t parse_failures = 0;
  std::size_t header_lines_skipped = 0;
  std::size_t duplicates_removed = 0;
  std::size_t senders_dropped = 0;
  std::size_t foreign_domain_addresses = 0;
  std::size_t unmatched_addresses = 0;
  std::map<std::string, std::size_t> unmatched;
  std::vector<std::string> notes;

  void note(std::string line) { notes.push_back(std::move(line)); }
  void merge(const IngestDiagnostics& other);

  /// Line-oriented `key value` text, followed by one line per note.
  std::string to_text() const;
};

/// Maps address spellings to canonical ids.
///
/// A pattern is either a full address (`jeff.dasovich@enron.com`) or a local
/// part followed by `@` (`jeff.dasovich@`); the latter matches that local part
/// within the domain filter. Patterns are lowercased on insertion.
class AliasTable {
 public:
  explicit AliasTable(std::string domain_filter = "enron.com");

  /// Throws ConfigError when the pattern already maps to another id.
  void add(std::string_view pattern, std::string_view canonical_id);

  const std::string& domain_filter() const noexcept { return domain_; }
  std::size_t size() const noexcept { return rules_.size(); }
  const std::unordered_map<std::string, std::string>& rules() const noexcept { return rules_; }

  std::optional<std::string> lookup(std::string_view address) const;

  /// Throws ConfigError naming the first canonical id missing from `roster`.
  void validate(const NodeRoster& roster) const;

 private:
  std::string domain_;
  std::unordered_map<std::string, std::string> rules_;
};

/// Loads `pattern,canonical_id` rows; a header row is optional.
AliasTable load_alias_csv(const std::string& path, std::string domain_filter = "enron.com");
void save_alias_csv(const AliasTable& table, const std::string& path);

/// Expands pattern templates against roster display names. Placeholders are
/// `{first}`, `{last}`, `{middle}`, `{f}` (first initial) and `{m}`. Names are
/// split on whitespace; trailing dots, quotes and commas are stripped from each
/// token. Templates using `{middle}`/`{m}` are skipped for people without a
/// middle name. A pattern produced for two different people is ambiguous and
/// dropped from the table (reported in `diagnostics`).
AliasTable expand_alias_templates(const NodeRoster& roster,
                                  const std::vector<std::string>& templates,
                                  std::string domain_filter = "enron.com",
                                  IngestDiagnostics* diagnostics = nullptr);

std::vector<std::string> load_alias_templates(const std::string& path);

/// Extracts From, To and Cc from a message header block. Continuation lines
/// are unfolded first; the body after the first blank line is never read.
/// Throws ParseError when there is no usable From address.
EmailRecord parse_email(std::string_view raw_text, const std::string& source_path,
                        IngestDiagnostics* diagnostics = nullptr);

/// Splits an address header value into normalized addresses. Handles
/// `Name <addr>` forms, quoted display names and stray quotes.
std::vector<std::string> split_addresses(std::string_view header_value);

/// Canonical id for `address`, or nothing when the domain differs from the
/// table's filter or no rule matches. Counts drops in `diagnostics`.
std::optional<std::string> resolve(std::string_view address, const AliasTable& table,
                                   IngestDiagnostics* diagnostics = nullptr);

struct AccumulateOptions {
  bool dedupe = true;
};

/// Builds the weighted matrix: each resolvable To recipient j adds 1 to
/// m(i, j), each resolvable Cc recipient adds 1/sqrt(1 + n_c) where n_c counts
/// every address listed in that message's Cc header.
WeightedDigraph accumulate(const std::vector<EmailRecord>& records, const AliasTable& table,
                           const NodeRoster& roster, const AccumulateOptions& options = {},
                           IngestDiagnostics* diagnostics = nullptr);

/// Parses every regular file below `dir` (sorted by path). Messages without a
/// From header are counted and skipped.
std::vector<EmailRecord> read_corpus_dir(const std::string& dir,
                                         IngestDiagnostics* diagnostics = nullptr);

/// Reads a `from,to,cc` CSV (recipients separated by `;` inside a cell).
std::vector<EmailRecord> read_corpus_csv(const std::string& path,
                                         IngestDiagnostics* diagnostics = nullptr);

}  // namespace mailgraph
