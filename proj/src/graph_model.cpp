#include "mailgraph/graph_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mailgraph/csv.hpp"
#include "mailgraph/error.hpp"

namespace mailgraph {

NodeRoster::NodeRoster(std::vector<Person> people) : people_(std::move(people)) {
  index_.reserve(people_.size());
  for (std::size_t i = 0; i < people_.size(); ++i) {
    const auto& id = people_[i].id;
    if (id.empty()) throw ConfigError("roster entry " + std::to_string(i) + " has an empty id");
    if (!index_.emplace(id, i).second) throw ConfigError("duplicate roster id '" + id + "'");
    if (people_[i].name.empty()) people_[i].name = id;
  }
}

NodeRoster NodeRoster::from_ids(const std::vector<std::string>& ids) {
  std::vector<Person> people;
  people.reserve(ids.size());
  for (const auto& id : ids) people.push_back({id, id, "", ""});
  return NodeRoster(std::move(people));
}

std::optional<std::size_t> NodeRoster::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeRoster NodeRoster::annotated(const NodeRoster& info) const {
  std::vector<Person> people = people_;
  for (auto& p : people) {
    if (auto k = info.find(p.id)) {
      const Person& src = info[*k];
      p.name = src.name;
      p.department = src.department;
      p.title = src.title;
    }
  }
  return NodeRoster(std::move(people));
}

std::vector<std::string> NodeRoster::ids() const {
  std::vector<std::string> out;
  out.reserve(people_.size());
  for (const auto& p : people_) out.push_back(p.id);
  return out;
}

WeightedDigraph::WeightedDigraph(NodeRoster roster, Matrix m)
    : roster_(std::move(roster)), m_(std::move(m)) {
  if (m_.size() != roster_.size())
    throw ConfigError("matrix dimension " + std::to_string(m_.size()) +
                      " does not match roster size " + std::to_string(roster_.size()));
  for (std::size_t i = 0; i < m_.size(); ++i)
    for (std::size_t j = 0; j < m_.size(); ++j) {
      double v = m_(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw ConfigError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is negative or not finite");
    }
}

UndirectedGraph::UndirectedGraph(NodeRoster roster, Matrix u)
    : roster_(std::move(roster)), u_(std::move(u)) {
  if (u_.size() != roster_.size())
    throw ConfigError("matrix dimension does not match roster size");
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (u_(i, i) != 0.0) throw ConfigError("undirected graph must have a zero diagonal");
    for (std::size_t j = i + 1; j < u_.size(); ++j) {
      double v = u_(i, j);
      if (v != u_(j, i)) throw ConfigError("undirected graph must be symmetric");
      if (!std::isfinite(v) || v < 0.0)
        throw ConfigError("undirected weights must be finite and nonnegative");
    }
  }
}

UndirectedGraph symmetrize(const WeightedDigraph& g) {
  const Matrix& m = g.m();
  const std::size_t n = m.size();
  Matrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // One addition, stored twice: symmetry holds bit for bit.
      double w = m(i, j) + m(j, i);
      u(i, j) = w;
      u(j, i) = w;
    }
  return UndirectedGraph(g.roster(), std::move(u));
}

UndirectedGraph binarize(const UndirectedGraph& g) {
  const std::size_t n = g.size();
  Matrix b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = g.u()(i, j) > 0.0 ? 1.0 : 0.0;
  return UndirectedGraph(g.roster(), std::move(b));
}

namespace {

using Kind = FormatError::Kind;

WeightedDigraph matrix_from_records(const std::vector<csv::Record>& records,
                                    const std::string& path) {
  if (records.empty()) throw FormatError(Kind::empty, path, 0, 0, "no header row");
  const auto& header = records[0];
  if (header.cells.size() < 2)
    throw FormatError(Kind::empty, path, header.line, 0, "header lists no ids");

  const std::size_t n = header.cells.size() - 1;
  std::vector<std::string> ids;
  ids.reserve(n);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t c = 1; c <= n; ++c) {
    std::string id(csv::trim(header.cells[c]));
    if (id.empty())
      throw FormatError(Kind::invalid_value, path, header.line, c + 1, "empty id in header");
    if (!seen.emplace(id, c).second)
      throw FormatError(Kind::duplicate_id, path, header.line, c + 1, "id '" + id + "' repeated");
    ids.push_back(std::move(id));
  }

  if (records.size() - 1 != n)
    throw FormatError(Kind::dimension_mismatch, path, records.back().line, 0,
                      "header has " + std::to_string(n) + " ids but file has " +
                          std::to_string(records.size() - 1) + " rows");

  Matrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& rec = records[r + 1];
    if (rec.cells.size() != n + 1)
      throw FormatError(Kind::dimension_mismatch, path, rec.line, 0,
                        "expected " + std::to_string(n + 1) + " cells, found " +
                            std::to_string(rec.cells.size()));
    std::string label(csv::trim(rec.cells[0]));
    if (label != ids[r])
      throw FormatError(Kind::label_mismatch, path, rec.line, 1,
                        "row label '" + label + "' differs from header id '" + ids[r] + "'");
    for (std::size_t c = 0; c < n; ++c) {
      double v = 0.0;
      const std::string& cell = rec.cells[c + 1];
      if (!csv::parse_real(cell, v))
        throw FormatError(Kind::non_numeric, path, rec.line, c + 2,
                          "cannot parse '" + cell + "' as a number");
      if (!std::isfinite(v) || v < 0.0)
        throw FormatError(Kind::invalid_value, path, rec.line, c + 2,
                          "weights must be finite and nonnegative, got '" + cell + "'");
      m(r, c) = v;
    }
  }
  return WeightedDigraph(NodeRoster::from_ids(ids), std::move(m));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(Kind::unreadable, path, 0, 0, "cannot open for writing");
  out << text;
  if (!out) throw FormatError(Kind::unreadable, path, 0, 0, "write failed");
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

WeightedDigraph parse_matrix_csv(std::string_view text, const std::string& path) {
  return matrix_from_records(csv::parse(text), path);
}

WeightedDigraph load_matrix_csv(const std::string& path) {
  return matrix_from_records(csv::read_file(path), path);
}

std::string format_matrix_csv(const WeightedDigraph& g) {
  std::ostringstream out;
  csv::Row row;
  row.push_back("");
  for (const auto& p : g.roster().people()) row.push_back(p.id);
  csv::write_row(out, row);
  for (std::size_t i = 0; i < g.size(); ++i) {
    row.clear();
    row.push_back(g.roster()[i].id);
    for (double v : g.m().row(i)) row.push_back(csv::format_real(v, 17));
    csv::write_row(out, row);
  }
  return out.str();
}

void save_matrix_csv(const WeightedDigraph& g, const std::string& path) {
  write_text(path, format_matrix_csv(g));
}

NodeRoster load_roster_csv(const std::string& path) {
  auto records = csv::read_file(path);
  if (records.empty()) throw FormatError(Kind::empty, path, 0, 0, "no header row");

  int id_col = -1, name_col = -1, dept_col = -1, title_col = -1;
  const auto& header = records[0].cells;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string h = lower(csv::trim(header[c]));
    if (h == "canonical_id" || h == "id") id_col = static_cast<int>(c);
    else if (h == "display_name" || h == "name") name_col = static_cast<int>(c);
    else if (h == "department") dept_col = static_cast<int>(c);
    else if (h == "title") title_col = static_cast<int>(c);
  }
  if (id_col < 0)
    throw FormatError(Kind::missing_column, path, records[0].line, 0,
                      "header needs a canonical_id column");

  std::vector<Person> people;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto cell = [&](int col) -> std::string {
      if (col < 0 || static_cast<std::size_t>(col) >= rec.cells.size()) return {};
      return std::string(csv::trim(rec.cells[static_cast<std::size_t>(col)]));
    };
    if (static_cast<std::size_t>(id_col) >= rec.cells.size())
      throw FormatError(Kind::dimension_mismatch, path, rec.line, 0, "row has too few cells");
    Person p{cell(id_col), cell(name_col), cell(dept_col), cell(title_col)};
    if (p.id.empty())
      throw FormatError(Kind::invalid_value, path, rec.line,
                        static_cast<std::size_t>(id_col) + 1, "empty canonical id");
    if (!seen.emplace(p.id, r).second)
      throw FormatError(Kind::duplicate_id, path, rec.line, static_cast<std::size_t>(id_col) + 1,
                        "id '" + p.id + "' repeated");
    people.push_back(std::move(p));
  }
  return NodeRoster(std::move(people));
}

void save_roster_csv(const NodeRoster& roster, const std::string& path) {
  std::ostringstream out;
  csv::write_row(out, {"canonical_id", "display_name", "department", "title"});
  for (const auto& p : roster.people()) csv::write_row(out, {p.id, p.name, p.department, p.title});
  write_text(path, out.str());
}

}  // namespace mailgraph
