#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mailgraph/graph_model.hpp"
#include "mailgraph/matrix.hpp"

namespace mailgraph {

enum class Measure {
  degree,
  strength,
  kappa,
  eigen_sent,
  eigen_received,
  closeness,
  betweenness,
  tom,
};

std::string_view to_string(Measure m) noexcept;
std::optional<Measure> parse_measure(std::string_view name) noexcept;

/// Scores and dense ranks (1 = most central) over a roster.
struct CentralityResult {
  Measure measure = Measure::degree;
  NodeRoster roster;
  std::vector<double> scores;
  std::vector<int> ranks;
  std::map<std::string, double> params;
  std::map<std::string, std::string> policy;

  std::size_t size() const noexcept { return scores.size(); }
};

/// Dense ranking by descending score; equal scores share a rank.
std::vector<int> dense_ranks(const std::vector<double>& scores);

CentralityResult make_result(Measure measure, const NodeRoster& roster,
                             std::vector<double> scores);

/// Number of neighbours in the binarized graph.
CentralityResult degree(const UndirectedGraph& g);

/// Sum of incident weights.
CentralityResult strength(const UndirectedGraph& g);

/// degree^alpha * strength^(1 - alpha). Nodes without edges score 0.
/// Throws ConfigError for negative or non-finite alpha.
CentralityResult kappa(const UndirectedGraph& g, double alpha);

enum class Direction { sent, received };

struct EigenOptions {
  double tolerance = 1e-10;
  long max_iterations = 100000;
};

/// Dominant eigenvector of M (sent) or M^T (received), unit Euclidean norm,
/// nonnegative. params holds "lambda", "residual", "iterations", "shift",
/// "tolerance". Throws ConfigError on a zero matrix or bad options and
/// ConvergenceError when the residual stays above the tolerance.
CentralityResult eigencentrality(const WeightedDigraph& g, Direction direction,
                                 const EigenOptions& options = {});

struct ClosenessOptions {
  // Use reciprocal-weight lengths instead of hop counts.
  bool weighted = false;
};

/// 1 / sum of distances from each node to all others over directed edges;
/// 0 when some node is unreachable from the source.
CentralityResult closeness(const WeightedDigraph& g, const ClosenessOptions& options = {});

/// Relative tolerance used to decide that two path lengths tie.
inline constexpr double kPathTieTolerance = 1e-9;

/// Shortest-path betweenness with edge length 1/u(i, j), summed over
/// unordered endpoint pairs.
CentralityResult betweenness(const UndirectedGraph& g);

enum class TomVariant {
  // Neighbour sums in the denominator exclude both endpoints.
  paper,
  // Full row sums in the denominator (WGCNA convention).
  standard,
};

std::string_view to_string(TomVariant v) noexcept;
std::optional<TomVariant> parse_tom_variant(std::string_view name) noexcept;

struct TomOptions {
  TomVariant variant = TomVariant::paper;
  // Throw on a non-positive denominator instead of clamping the entry to 0.
  bool strict = false;
};

struct TomMatrix {
  Matrix values;  // diagonal is 1
  TomVariant variant = TomVariant::paper;
  // (i, j), i < j, whose denominator was <= 0 and were set to 0.
  std::vector<std::pair<std::size_t, std::size_t>> clamped;
};

TomMatrix tom_matrix(const UndirectedGraph& g, const TomOptions& options = {});

/// Row sums of the TOM excluding the diagonal.
CentralityResult tom_centrality(const UndirectedGraph& g, const TomOptions& options = {});

struct RankedEntry {
  std::size_t index;
  std::string id;
  double score;
  int rank;
};

/// First k entries by descending score; ties ordered by id.
/// Throws ConfigError unless 1 <= k <= n.
std::vector<RankedEntry> rank_of(const CentralityResult& result, std::size_t k);

/// Scores CSV with header `canonical_id,score,rank`.
std::string format_scores_csv(const CentralityResult& result);
void save_scores_csv(const CentralityResult& result, const std::string& path);

/// Reads a scores CSV back. Ranks are recomputed from the scores.
CentralityResult load_scores_csv(const std::string& path, Measure measure = Measure::degree);

}  // namespace mailgraph
