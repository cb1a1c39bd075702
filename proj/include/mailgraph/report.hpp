#pragma once

#include <map>
#include <string>
#include <vector>

#include "mailgraph/centrality.hpp"
#include "mailgraph/clustering.hpp"
#include "mailgraph/graph_model.hpp"

namespace mailgraph {

/// Pearson correlation of the fractional (tie-averaged) ranks of the two
/// score vectors. NaN when either vector is constant. Throws ConfigError when
/// the rosters differ.
double rank_correlation(const CentralityResult& a, const CentralityResult& b);

/// Pearson correlation of the raw scores.
double score_correlation(const CentralityResult& a, const CentralityResult& b);

/// Average ranks: ties get the mean of the positions they span (1-based,
/// ascending score).
std::vector<double> fractional_ranks(const std::vector<double>& scores);

struct ReportOptions {
  std::size_t top = 10;
  double alpha = 0.5;
  TomOptions tom;
  EigenOptions eigen;
  ClosenessOptions closeness;
  bool raw_score_correlation = false;
};

struct TopEntry {
  std::string id;
  std::string name;
  std::string department;
  std::string title;
  double score;
  int rank;

  friend bool operator==(const TopEntry&, const TopEntry&) = default;
};

struct ComparisonReport {
  std::vector<Measure> measures;
  std::map<Measure, std::vector<TopEntry>> topk;
  // corr[a][b], indexed like `measures`; NaN where undefined.
  std::vector<std::vector<double>> corr;
  std::map<std::string, std::string> params;
  std::vector<CentralityResult> results;
};

/// Runs the eight measures and assembles top-k lists and correlations.
/// Failures are rethrown as Error naming the failing measure.
ComparisonReport build_report(const WeightedDigraph& g, const ReportOptions& options);

/// Same, loading the matrix (and optionally a roster for names) from disk.
ComparisonReport build_report(const std::string& matrix_path, const std::string& roster_path,
                              const ReportOptions& options);

std::string report_to_json(const ComparisonReport& report);

/// Reads measures, topk, corr and params back. `results` stays empty.
ComparisonReport report_from_json(const std::string& text);

/// Undirected graph with edges whose weight is at least `threshold`.
std::string export_dot(const UndirectedGraph& g, double threshold);

/// clusters.json body: clusters as arrays of ids, unassigned ids, params.
std::string clusters_to_json(const ClusterSet& clusters, const NodeRoster& roster,
                             const std::map<std::string, std::string>& params);

}  // namespace mailgraph
