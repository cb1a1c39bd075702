#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "mailgraph/graph_model.hpp"
#include "mailgraph/matrix.hpp"

namespace testing {

inline mailgraph::Matrix matrix(std::initializer_list<std::initializer_list<double>> rows) {
  mailgraph::Matrix m(rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline mailgraph::NodeRoster roster(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = "n";
    if (i < 10) id += '0';
    ids.push_back(id + std::to_string(i));
  }
  return mailgraph::NodeRoster::from_ids(ids);
}

inline mailgraph::WeightedDigraph digraph(mailgraph::Matrix m) {
  auto r = roster(m.size());
  return mailgraph::WeightedDigraph(r, std::move(m));
}

inline mailgraph::UndirectedGraph undirected(mailgraph::Matrix u) {
  auto r = roster(u.size());
  return mailgraph::UndirectedGraph(r, std::move(u));
}

}  // namespace testing
