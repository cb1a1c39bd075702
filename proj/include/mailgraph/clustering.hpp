#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mailgraph/centrality.hpp"
#include "mailgraph/graph_model.hpp"
#include "mailgraph/matrix.hpp"

namespace mailgraph {

enum class DissimilarityBasis { scaled_adjacency, tom };

std::string_view to_string(DissimilarityBasis b) noexcept;
std::optional<DissimilarityBasis> parse_basis(std::string_view name) noexcept;

/// Symmetric, zero diagonal, entries in [0, 1].
struct DissimilarityMatrix {
  Matrix d;
  DissimilarityBasis basis = DissimilarityBasis::scaled_adjacency;
  // TOM entries above 1 that were clamped (lenient mode only).
  std::size_t clamped = 0;
};

struct DissimilarityOptions {
  TomOptions tom;
  // Throw when a TOM entry exceeds 1 instead of clamping it.
  bool strict = false;
  // Compute the TOM on u / max u rather than on the raw weights.
  bool scale_before_tom = false;
};

/// scaled_adjacency: 1 - u / max u. tom: 1 - TOM.
/// Throws ConfigError on a graph without edges; DomainError in strict mode
/// when a TOM entry exceeds 1.
DissimilarityMatrix dissimilarity(const UndirectedGraph& g, DissimilarityBasis basis,
                                  const DissimilarityOptions& options = {});

/// Validates the invariants and wraps `d`. Throws ConfigError.
DissimilarityMatrix make_dissimilarity(Matrix d, DissimilarityBasis basis);

enum class Linkage { average, single, complete };

std::string_view to_string(Linkage l) noexcept;
std::optional<Linkage> parse_linkage(std::string_view name) noexcept;

/// One agglomeration step. Leaves are clusters 0..n-1; the cluster created by
/// merge k has id n + k. `left` is the side holding the smaller leaf index.
struct Merge {
  std::size_t left;
  std::size_t right;
  double height;
  std::size_t size;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct LinkageTree {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Two merge heights closer than this are treated as tied.
inline constexpr double kMergeTieTolerance = 1e-12;

/// Greedy agglomeration. Average linkage uses the unweighted mean over all
/// cross pairs. Ties go to the pair with the lexicographically smallest
/// (smallest member, smallest member).
LinkageTree agglomerate(const DissimilarityMatrix& d, Linkage linkage = Linkage::average);

struct ClusterSet {
  // Node indices in ascending order; clusters by descending size, then by
  // smallest member.
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> unassigned;
  double cut_height = 0.0;
  std::size_t min_size = 1;
};

/// Groups joined by merges of height <= max_dissimilarity; groups smaller
/// than min_size are left unassigned. Throws ConfigError on bad parameters.
ClusterSet cut(const LinkageTree& tree, double max_dissimilarity, std::size_t min_size);

enum class DendrogramFormat { newick, json };

/// Newick with branch lengths equal to height differences, or nested JSON
/// objects (`index`/`name` on leaves, `id`/`height`/`size`/`children` on
/// internal nodes). Children are written smaller leaf label first.
std::string export_dendrogram(const LinkageTree& tree, const NodeRoster& roster,
                              DendrogramFormat format);

}  // namespace mailgraph
