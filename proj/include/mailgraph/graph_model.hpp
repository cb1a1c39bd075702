#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mailgraph/matrix.hpp"

namespace mailgraph {

struct Person {
  std::string id;
  std::string name;
  std::string department;
  std::string title;
};

/// Ordered set of graph nodes. Position in the roster is the matrix index.
class NodeRoster {
 public:
  NodeRoster() = default;

  /// Throws ConfigError on an empty or repeated id.
  explicit NodeRoster(std::vector<Person> people);

  /// Roster of bare ids (name defaults to the id).
  static NodeRoster from_ids(const std::vector<std::string>& ids);

  std::size_t size() const noexcept { return people_.size(); }
  const Person& operator[](std::size_t i) const noexcept { return people_[i]; }
  const std::vector<Person>& people() const noexcept { return people_; }

  std::optional<std::size_t> find(std::string_view id) const;

  /// Copy of this roster where entries whose id appears in `info` take their
  /// name/department/title from it. Order is unchanged.
  NodeRoster annotated(const NodeRoster& info) const;

  friend bool operator==(const NodeRoster& a, const NodeRoster& b) {
    return a.ids() == b.ids();
  }

  std::vector<std::string> ids() const;

 private:
  std::vector<Person> people_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Weighted directed communication graph: m(i, j) is the weight of i -> j.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  /// Throws ConfigError when the matrix does not match the roster or holds a
  /// negative or non-finite entry.
  WeightedDigraph(NodeRoster roster, Matrix m);

  const NodeRoster& roster() const noexcept { return roster_; }
  const Matrix& m() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }

 private:
  NodeRoster roster_;
  Matrix m_;
};

/// Symmetric, zero-diagonal, nonnegative weights.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  /// Throws ConfigError if `u` is not symmetric with zero diagonal.
  UndirectedGraph(NodeRoster roster, Matrix u);

  const NodeRoster& roster() const noexcept { return roster_; }
  const Matrix& u() const noexcept { return u_; }
  std::size_t size() const noexcept { return u_.size(); }

 private:
  NodeRoster roster_;
  Matrix u_;
};

/// U = M + M^T - D with d_ii = 2 m_ii.
UndirectedGraph symmetrize(const WeightedDigraph& g);

/// 1 where the weight is positive, 0 elsewhere.
UndirectedGraph binarize(const UndirectedGraph& g);

/// Adjacency CSV: first header cell empty, then the n ids; each following
/// row is `id,v1,...,vn` with ids in header order.
WeightedDigraph load_matrix_csv(const std::string& path);
WeightedDigraph parse_matrix_csv(std::string_view text, const std::string& path = "<memory>");
void save_matrix_csv(const WeightedDigraph& g, const std::string& path);
std::string format_matrix_csv(const WeightedDigraph& g);

/// Roster CSV with header `canonical_id,display_name,department,title`.
NodeRoster load_roster_csv(const std::string& path);
void save_roster_csv(const NodeRoster& roster, const std::string& path);

}  // namespace mailgraph
