#include "mailgraph/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "mailgraph/error.hpp"

namespace mailgraph {

std::string_view to_string(DissimilarityBasis b) noexcept {
  return b == DissimilarityBasis::tom ? "tom" : "adjacency";
}

std::optional<DissimilarityBasis> parse_basis(std::string_view name) noexcept {
  if (name == "adjacency" || name == "scaled_adjacency") return DissimilarityBasis::scaled_adjacency;
  if (name == "tom") return DissimilarityBasis::tom;
  return std::nullopt;
}

std::string_view to_string(Linkage l) noexcept {
  switch (l) {
    case Linkage::average: return "average";
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
  }
  return "average";
}

std::optional<Linkage> parse_linkage(std::string_view name) noexcept {
  if (name == "average") return Linkage::average;
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  return std::nullopt;
}

DissimilarityMatrix make_dissimilarity(Matrix d, DissimilarityBasis basis) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw ConfigError("dissimilarity diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = d(i, j);
      if (v != d(j, i)) throw ConfigError("dissimilarity must be symmetric");
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("dissimilarity entries must lie in [0, 1]");
    }
  }
  return DissimilarityMatrix{std::move(d), basis, 0};
}

DissimilarityMatrix dissimilarity(const UndirectedGraph& g, DissimilarityBasis basis,
                                  const DissimilarityOptions& options) {
  const std::size_t n = g.size();
  double max_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) max_weight = std::max(max_weight, g.u()(i, j));
  if (max_weight == 0.0) throw ConfigError("dissimilarity needs a graph with at least one edge");

  Matrix scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) scaled(i, j) = g.u()(i, j) / max_weight;

  Matrix d(n);
  std::size_t clamped = 0;
  if (basis == DissimilarityBasis::scaled_adjacency) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) d(i, j) = 1.0 - scaled(i, j);
  } else {
    auto t = options.scale_before_tom ? tom_matrix(UndirectedGraph(g.roster(), scaled), options.tom)
                                      : tom_matrix(g, options.tom);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double v = t.values(i, j);
        if (v > 1.0) {
          if (options.strict)
            throw DomainError("TOM entry for (" + g.roster()[i].id + ", " + g.roster()[j].id +
                              ") exceeds 1");
          v = 1.0;
          ++clamped;
        }
        d(i, j) = d(j, i) = 1.0 - v;
      }
  }
  auto out = make_dissimilarity(std::move(d), basis);
  out.clamped = clamped;
  return out;
}

LinkageTree agglomerate(const DissimilarityMatrix& dm, Linkage linkage) {
  const std::size_t n = dm.d.size();
  LinkageTree tree;
  tree.leaves = n;
  if (n < 2) return tree;

  // Slot s holds one active cluster; dist is indexed by slot.
  Matrix dist = dm.d;
  std::vector<std::size_t> id(n), size(n, 1), min_member(n);
  std::vector<char> active(n, 1);
  std::iota(id.begin(), id.end(), 0);
  std::iota(min_member.begin(), min_member.end(), 0);

  double previous = 0.0;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b)
        if (active[b]) lowest = std::min(lowest, dist(a, b));
    }
    // Among near-minimal pairs take the smallest (min member, min member).
    std::size_t best_a = n, best_b = n;
    std::pair<std::size_t, std::size_t> best_key{n, n};
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!active[b] || dist(a, b) > lowest + kMergeTieTolerance) continue;
        std::pair<std::size_t, std::size_t> key = std::minmax(min_member[a], min_member[b]);
        if (key < best_key) {
          best_key = key;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (min_member[best_b] < min_member[best_a]) std::swap(best_a, best_b);

    double height = std::max(dist(best_a, best_b), previous);
    previous = height;
    tree.merges.push_back({id[best_a], id[best_b], height, size[best_a] + size[best_b]});

    const double wa = static_cast<double>(size[best_a]);
    const double wb = static_cast<double>(size[best_b]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == best_a || k == best_b) continue;
      double da = dist(best_a, k), db = dist(best_b, k);
      double merged = 0.0;
      switch (linkage) {
        case Linkage::average: merged = (wa * da + wb * db) / (wa + wb); break;
        case Linkage::single: merged = std::min(da, db); break;
        case Linkage::complete: merged = std::max(da, db); break;
      }
      dist(best_a, k) = dist(k, best_a) = merged;
    }
    active[best_b] = 0;
    id[best_a] = n + step;
    size[best_a] += size[best_b];
    min_member[best_a] = std::min(min_member[best_a], min_member[best_b]);
  }
  return tree;
}

ClusterSet cut(const LinkageTree& tree, double max_dissimilarity, std::size_t min_size) {
  if (!(max_dissimilarity >= 0.0 && max_dissimilarity <= 1.0))
    throw ConfigError("cut height must lie in [0, 1]");
  if (min_size < 1) throw ConfigError("minimum cluster size must be at least 1");

  const std::size_t n = tree.leaves;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Representative leaf for each cluster id.
  std::vector<std::size_t> leaf_of(n + tree.merges.size());
  std::iota(leaf_of.begin(), leaf_of.begin() + static_cast<std::ptrdiff_t>(n), 0);
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    const Merge& m = tree.merges[k];
    leaf_of[n + k] = leaf_of[m.left];
    if (m.height > max_dissimilarity) continue;
    std::size_t ra = find(leaf_of[m.left]), rb = find(leaf_of[m.right]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  ClusterSet out;
  out.cut_height = max_dissimilarity;
  out.min_size = min_size;
  for (auto& g : groups) {
    if (g.empty()) continue;
    if (g.size() >= min_size) out.clusters.push_back(std::move(g));
    else out.unassigned.insert(out.unassigned.end(), g.begin(), g.end());
  }
  std::sort(out.clusters.begin(), out.clusters.end(), [](const auto& a, const auto& b) {
    return std::tuple(b.size(), a.front()) < std::tuple(a.size(), b.front());
  });
  std::sort(out.unassigned.begin(), out.unassigned.end());
  return out;
}

}  // namespace mailgraph
