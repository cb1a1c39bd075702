#include "mailgraph/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mailgraph/csv.hpp"
#include "mailgraph/error.hpp"

namespace mailgraph {

using json = nlohmann::ordered_json;

std::vector<double> fractional_ranks(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> ranks(n);
  for (std::size_t k = 0; k < n;) {
    std::size_t end = k;
    while (end + 1 < n && scores[order[end + 1]] == scores[order[k]]) ++end;
    double avg = (static_cast<double>(k) + static_cast<double>(end)) / 2.0 + 1.0;
    for (std::size_t t = k; t <= end; ++t) ranks[order[t]] = avg;
    k = end + 1;
  }
  return ranks;
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void require_same_roster(const CentralityResult& a, const CentralityResult& b) {
  if (a.size() != b.size() || !(a.roster == b.roster))
    throw ConfigError("correlated results must share one roster");
}

}  // namespace

double rank_correlation(const CentralityResult& a, const CentralityResult& b) {
  require_same_roster(a, b);
  return pearson(fractional_ranks(a.scores), fractional_ranks(b.scores));
}

double score_correlation(const CentralityResult& a, const CentralityResult& b) {
  require_same_roster(a, b);
  return pearson(a.scores, b.scores);
}

ComparisonReport build_report(const WeightedDigraph& g, const ReportOptions& options) {
  const std::size_t n = g.size();
  if (options.top < 1 || options.top > n)
    throw ConfigError("report top-k must lie in [1, " + std::to_string(n) + "]");

  const UndirectedGraph u = symmetrize(g);
  ComparisonReport report;
  report.measures = {Measure::degree,         Measure::strength,  Measure::kappa,
                     Measure::eigen_sent,     Measure::eigen_received, Measure::closeness,
                     Measure::betweenness,    Measure::tom};

  for (Measure m : report.measures) {
    try {
      switch (m) {
        case Measure::degree: report.results.push_back(degree(u)); break;
        case Measure::strength: report.results.push_back(strength(u)); break;
        case Measure::kappa: report.results.push_back(kappa(u, options.alpha)); break;
        case Measure::eigen_sent:
          report.results.push_back(eigencentrality(g, Direction::sent, options.eigen));
          break;
        case Measure::eigen_received:
          report.results.push_back(eigencentrality(g, Direction::received, options.eigen));
          break;
        case Measure::closeness: report.results.push_back(closeness(g, options.closeness)); break;
        case Measure::betweenness: report.results.push_back(betweenness(u)); break;
        case Measure::tom: report.results.push_back(tom_centrality(u, options.tom)); break;
      }
    } catch (const std::exception& e) {
      throw Error("measure " + std::string(to_string(m)) + " failed: " + e.what());
    }
  }

  for (const auto& r : report.results) {
    auto& list = report.topk[r.measure];
    for (const auto& e : rank_of(r, options.top)) {
      const Person& p = g.roster()[e.index];
      list.push_back({p.id, p.name, p.department, p.title, e.score, e.rank});
    }
  }

  const std::size_t k = report.results.size();
  report.corr.assign(k, std::vector<double>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      double c = options.raw_score_correlation
                     ? score_correlation(report.results[a], report.results[b])
                     : rank_correlation(report.results[a], report.results[b]);
      report.corr[a][b] = report.corr[b][a] = c;
    }

  auto& p = report.params;
  auto real = [](double v) { return csv::format_real(v); };
  p["nodes"] = std::to_string(n);
  p["top"] = std::to_string(options.top);
  p["alpha"] = real(options.alpha);
  p["eigen_tolerance"] = real(options.eigen.tolerance);
  p["eigen_max_iterations"] = std::to_string(options.eigen.max_iterations);
  p["eigen_method"] = "shifted_power_iteration";
  p["eigen_sent_lambda"] = real(report.results[3].params.at("lambda"));
  p["eigen_received_lambda"] = real(report.results[4].params.at("lambda"));
  p["closeness_distance"] = options.closeness.weighted ? "reciprocal_weight" : "hops";
  p["closeness_unreachable"] = "zero";
  p["betweenness_pairs"] = "unordered";
  p["betweenness_tie_tolerance"] = real(kPathTieTolerance);
  p["tom_variant"] = std::string(to_string(options.tom.variant));
  p["tom_nonpositive_denominator"] = options.tom.strict ? "error" : "zero";
  p["tom_clamped_pairs"] = real(report.results[7].params.at("clamped_pairs"));
  p["rank_ties"] = "dense";
  p["topk_tie_order"] = "canonical_id";
  p["correlation"] = options.raw_score_correlation ? "pearson_scores" : "pearson_ranks";
  p["correlation_rank_ties"] = "average";
  return report;
}

ComparisonReport build_report(const std::string& matrix_path, const std::string& roster_path,
                              const ReportOptions& options) {
  WeightedDigraph g = load_matrix_csv(matrix_path);
  if (!roster_path.empty()) {
    NodeRoster info = load_roster_csv(roster_path);
    g = WeightedDigraph(g.roster().annotated(info), g.m());
  }
  return build_report(g, options);
}

std::string report_to_json(const ComparisonReport& report) {
  json out;
  out["measures"] = json::array();
  for (Measure m : report.measures) out["measures"].push_back(std::string(to_string(m)));
  out["topk"] = json::object();
  for (Measure m : report.measures) {
    json list = json::array();
    auto it = report.topk.find(m);
    if (it != report.topk.end())
      for (const auto& e : it->second)
        list.push_back({{"id", e.id},
                        {"name", e.name},
                        {"department", e.department},
                        {"title", e.title},
                        {"score", e.score},
                        {"rank", e.rank}});
    out["topk"][std::string(to_string(m))] = std::move(list);
  }
  out["corr"] = json::array();
  for (const auto& row : report.corr) {
    json r = json::array();
    for (double v : row) r.push_back(std::isnan(v) ? json(nullptr) : json(v));
    out["corr"].push_back(std::move(r));
  }
  out["params"] = json::object();
  for (const auto& [k, v] : report.params) out["params"][k] = v;
  return out.dump(2) + "\n";
}

ComparisonReport report_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("report JSON: ") + e.what());
  }
  ComparisonReport r;
  try {
    for (const auto& name : in.at("measures")) {
      auto m = parse_measure(name.get<std::string>());
      if (!m) throw Error("report JSON: unknown measure " + name.get<std::string>());
      r.measures.push_back(*m);
    }
    for (Measure m : r.measures) {
      auto& list = r.topk[m];
      for (const auto& e : in.at("topk").at(std::string(to_string(m))))
        list.push_back({e.at("id").get<std::string>(), e.at("name").get<std::string>(),
                        e.at("department").get<std::string>(), e.at("title").get<std::string>(),
                        e.at("score").get<double>(), e.at("rank").get<int>()});
    }
    for (const auto& row : in.at("corr")) {
      std::vector<double> out;
      for (const auto& v : row)
        out.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
      r.corr.push_back(std::move(out));
    }
    for (const auto& [k, v] : in.at("params").items()) r.params[k] = v.get<std::string>();
  } catch (const json::exception& e) {
    throw Error(std::string("report JSON: ") + e.what());
  }
  return r;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const UndirectedGraph& g, double threshold) {
  std::ostringstream out;
  out << "graph mailgraph {\n";
  for (const auto& p : g.roster().people())
    out << "  " << dot_quote(p.id) << " [label=" << dot_quote(p.name) << "];\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      double w = g.u()(i, j);
      if (w > 0.0 && w >= threshold)
        out << "  " << dot_quote(g.roster()[i].id) << " -- " << dot_quote(g.roster()[j].id)
            << " [weight=" << csv::format_real(w) << "];\n";
    }
  out << "}\n";
  return out.str();
}

std::string clusters_to_json(const ClusterSet& clusters, const NodeRoster& roster,
                             const std::map<std::string, std::string>& params) {
  json out;
  out["clusters"] = json::array();
  for (const auto& c : clusters.clusters) {
    json ids = json::array();
    for (std::size_t i : c) ids.push_back(roster[i].id);
    out["clusters"].push_back(std::move(ids));
  }
  out["unassigned"] = json::array();
  for (std::size_t i : clusters.unassigned) out["unassigned"].push_back(roster[i].id);
  json p = json::object();
  p["cut_height"] = csv::format_real(clusters.cut_height);
  p["min_size"] = std::to_string(clusters.min_size);
  for (const auto& [k, v] : params) p[k] = v;
  out["params"] = std::move(p);
  return out.dump(2) + "\n";
}

}  // namespace mailgraph
