#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "mailgraph/centrality.hpp"

namespace mailgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense Dijkstra where each edge i -> j with weight w > 0 has length 1/w.
// Lengths that agree within kPathTieTolerance (relative) count as equal.
struct ShortestPaths {
  std::vector<double> dist;
  std::vector<double> sigma;                    // number of shortest paths
  std::vector<std::vector<std::size_t>> preds;  // predecessors on them
  std::vector<std::size_t> order;               // settle order
};

ShortestPaths reciprocal_dijkstra(const Matrix& w, std::size_t source) {
  const std::size_t n = w.size();
  ShortestPaths sp{std::vector<double>(n, kInf), std::vector<double>(n, 0.0),
                   std::vector<std::vector<std::size_t>>(n), {}};
  std::vector<char> settled(n, 0);
  sp.dist[source] = 0.0;
  sp.sigma[source] = 1.0;
  sp.order.reserve(n);

  for (;;) {
    std::size_t v = n;
    for (std::size_t k = 0; k < n; ++k)
      if (!settled[k] && sp.dist[k] < kInf && (v == n || sp.dist[k] < sp.dist[v])) v = k;
    if (v == n) break;
    settled[v] = 1;
    sp.order.push_back(v);

    auto row = w.row(v);
    for (std::size_t t = 0; t < n; ++t) {
      if (t == v || settled[t] || !(row[t] > 0.0)) continue;
      double alt = sp.dist[v] + 1.0 / row[t];
      double cur = sp.dist[t];
      if (cur == kInf || alt < cur - kPathTieTolerance * std::max(alt, cur)) {
        sp.dist[t] = alt;
        sp.sigma[t] = sp.sigma[v];
        sp.preds[t].assign(1, v);
      } else if (std::abs(alt - cur) <= kPathTieTolerance * std::max(alt, cur)) {
        sp.sigma[t] += sp.sigma[v];
        sp.preds[t].push_back(v);
      }
    }
  }
  return sp;
}

// Hop distances over edges with positive weight; -1 marks unreachable.
std::vector<long> bfs_hops(const Matrix& w, std::size_t source) {
  const std::size_t n = w.size();
  std::vector<long> dist(n, -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    auto row = w.row(v);
    for (std::size_t t = 0; t < n; ++t)
      if (t != v && row[t] > 0.0 && dist[t] < 0) {
        dist[t] = dist[v] + 1;
        queue.push_back(t);
      }
  }
  return dist;
}

}  // namespace

CentralityResult closeness(const WeightedDigraph& g, const ClosenessOptions& options) {
  const std::size_t n = g.size();
  std::vector<double> scores(n, 0.0);
  for (std::size_t s = 0; s < n && n > 1; ++s) {
    double total = 0.0;
    bool all_reached = true;
    if (options.weighted) {
      auto sp = reciprocal_dijkstra(g.m(), s);
      for (std::size_t t = 0; t < n && all_reached; ++t) {
        if (t == s) continue;
        if (sp.dist[t] == kInf) all_reached = false;
        else total += sp.dist[t];
      }
    } else {
      auto hops = bfs_hops(g.m(), s);
      for (std::size_t t = 0; t < n && all_reached; ++t) {
        if (t == s) continue;
        if (hops[t] < 0) all_reached = false;
        else total += static_cast<double>(hops[t]);
      }
    }
    scores[s] = all_reached ? 1.0 / total : 0.0;
  }
  auto r = make_result(Measure::closeness, g.roster(), std::move(scores));
  r.policy["distance"] = options.weighted ? "reciprocal_weight" : "hops";
  r.policy["unreachable"] = "zero";
  return r;
}

CentralityResult betweenness(const UndirectedGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> total(n, 0.0);
  std::vector<double> delta(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto sp = reciprocal_dijkstra(g.u(), s);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = sp.order.rbegin(); it != sp.order.rend(); ++it) {
      std::size_t t = *it;
      for (std::size_t v : sp.preds[t]) delta[v] += sp.sigma[v] / sp.sigma[t] * (1.0 + delta[t]);
      if (t != s) total[t] += delta[t];
    }
  }
  // Every unordered pair was visited from both endpoints.
  for (double& b : total) b /= 2.0;
  auto r = make_result(Measure::betweenness, g.roster(), std::move(total));
  r.params["tie_tolerance"] = kPathTieTolerance;
  r.policy["pairs"] = "unordered";
  r.policy["length"] = "reciprocal_weight";
  return r;
}

}  // namespace mailgraph
