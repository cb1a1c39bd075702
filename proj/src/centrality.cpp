#include "mailgraph/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mailgraph/csv.hpp"
#include "mailgraph/error.hpp"

namespace mailgraph {

namespace {
constexpr std::pair<Measure, std::string_view> kMeasureNames[] = {
    {Measure::degree, "degree"},
    {Measure::strength, "strength"},
    {Measure::kappa, "kappa"},
    {Measure::eigen_sent, "eigen_sent"},
    {Measure::eigen_received, "eigen_received"},
    {Measure::closeness, "closeness"},
    {Measure::betweenness, "betweenness"},
    {Measure::tom, "tom"},
};
}  // namespace

std::string_view to_string(Measure m) noexcept {
  for (const auto& [measure, name] : kMeasureNames)
    if (measure == m) return name;
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) noexcept {
  for (const auto& [measure, n] : kMeasureNames)
    if (n == name) return measure;
  return std::nullopt;
}

std::vector<int> dense_ranks(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<int> ranks(scores.size());
  int rank = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || scores[order[k]] != scores[order[k - 1]]) ++rank;
    ranks[order[k]] = rank;
  }
  return ranks;
}

CentralityResult make_result(Measure measure, const NodeRoster& roster,
                             std::vector<double> scores) {
  CentralityResult r;
  r.measure = measure;
  r.roster = roster;
  r.ranks = dense_ranks(scores);
  r.scores = std::move(scores);
  return r;
}

namespace {

std::vector<double> degree_scores(const UndirectedGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && g.u()(i, j) > 0.0) s[i] += 1.0;
  return s;
}

std::vector<double> strength_scores(const UndirectedGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s[i] += g.u()(i, j);
  return s;
}

}  // namespace

CentralityResult degree(const UndirectedGraph& g) {
  return make_result(Measure::degree, g.roster(), degree_scores(g));
}

CentralityResult strength(const UndirectedGraph& g) {
  return make_result(Measure::strength, g.roster(), strength_scores(g));
}

CentralityResult kappa(const UndirectedGraph& g, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw ConfigError("kappa needs a finite alpha >= 0");
  auto deg = degree_scores(g);
  auto str = strength_scores(g);
  std::vector<double> s(g.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (deg[i] == 0.0) continue;  // isolated: 0 by convention
    if (alpha == 0.0) s[i] = str[i];
    else if (alpha == 1.0) s[i] = deg[i];
    else s[i] = std::pow(deg[i], alpha) * std::pow(str[i], 1.0 - alpha);
  }
  auto r = make_result(Measure::kappa, g.roster(), std::move(s));
  r.params["alpha"] = alpha;
  return r;
}

std::vector<RankedEntry> rank_of(const CentralityResult& result, std::size_t k) {
  const std::size_t n = result.size();
  if (k < 1 || k > n)
    throw ConfigError("top-k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (result.scores[a] != result.scores[b]) return result.scores[a] > result.scores[b];
    return result.roster[a].id < result.roster[b].id;
  });
  std::vector<RankedEntry> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t idx = order[i];
    out.push_back({idx, result.roster[idx].id, result.scores[idx], result.ranks[idx]});
  }
  return out;
}

std::string format_scores_csv(const CentralityResult& result) {
  std::ostringstream out;
  csv::write_row(out, {"canonical_id", "score", "rank"});
  for (std::size_t i = 0; i < result.size(); ++i)
    csv::write_row(out, {result.roster[i].id, csv::format_real(result.scores[i], 17),
                         std::to_string(result.ranks[i])});
  return out.str();
}

void save_scores_csv(const CentralityResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(FormatError::Kind::unreadable, path, 0, 0, "cannot open for writing");
  out << format_scores_csv(result);
}

CentralityResult load_scores_csv(const std::string& path, Measure measure) {
  using Kind = FormatError::Kind;
  auto records = csv::read_file(path);
  if (records.empty()) throw FormatError(Kind::empty, path, 0, 0, "no header row");
  const auto& header = records[0].cells;
  if (header.size() < 2 || csv::trim(header[0]) != "canonical_id" ||
      csv::trim(header[1]) != "score")
    throw FormatError(Kind::missing_column, path, records[0].line, 0,
                      "header must start with canonical_id,score");
  std::vector<std::string> ids;
  std::vector<double> scores;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.cells.size() < 2)
      throw FormatError(Kind::dimension_mismatch, path, rec.line, 0, "row has too few cells");
    double v = 0.0;
    if (!csv::parse_real(rec.cells[1], v) || !std::isfinite(v))
      throw FormatError(Kind::non_numeric, path, rec.line, 2, "bad score '" + rec.cells[1] + "'");
    ids.emplace_back(csv::trim(rec.cells[0]));
    scores.push_back(v);
  }
  NodeRoster roster;
  try {
    roster = NodeRoster::from_ids(ids);
  } catch (const ConfigError& e) {
    throw FormatError(Kind::duplicate_id, path, 0, 1, e.what());
  }
  return make_result(measure, roster, std::move(scores));
}

}  // namespace mailgraph
