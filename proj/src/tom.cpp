#include <algorithm>
#include <vector>

#include "mailgraph/centrality.hpp"
#include "mailgraph/error.hpp"

namespace mailgraph {

std::string_view to_string(TomVariant v) noexcept {
  return v == TomVariant::paper ? "paper" : "standard";
}

std::optional<TomVariant> parse_tom_variant(std::string_view name) noexcept {
  if (name == "paper") return TomVariant::paper;
  if (name == "standard") return TomVariant::standard;
  return std::nullopt;
}

TomMatrix tom_matrix(const UndirectedGraph& g, const TomOptions& options) {
  const Matrix& u = g.u();
  const std::size_t n = u.size();

  std::vector<double> k(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (double v : u.row(i)) k[i] += v;

  // The diagonal of U is zero, so (U^2)_ij already omits l = i and l = j.
  Matrix shared(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      double uil = u(i, l);
      if (uil == 0.0) continue;
      auto row_l = u.row(l);
      auto out = shared.row(i);
      for (std::size_t j = 0; j < n; ++j) out[j] += uil * row_l[j];
    }

  TomMatrix t{Matrix(n), options.variant, {}};
  for (std::size_t i = 0; i < n; ++i) {
    t.values(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double uij = u(i, j);
      double ki = k[i], kj = k[j];
      if (options.variant == TomVariant::paper) {
        ki -= uij;
        kj -= uij;
      }
      double denom = std::min(ki, kj) + 1.0 - uij;
      double value = 0.0;
      if (denom > 0.0) {
        value = (shared(i, j) + uij) / denom;
      } else if (options.strict) {
        throw DomainError("TOM denominator is not positive for pair (" + g.roster()[i].id + ", " +
                          g.roster()[j].id + ")");
      } else {
        t.clamped.emplace_back(i, j);
      }
      t.values(i, j) = value;
      t.values(j, i) = value;
    }
  }
  return t;
}

CentralityResult tom_centrality(const UndirectedGraph& g, const TomOptions& options) {
  auto t = tom_matrix(g, options);
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s[i] += t.values(i, j);
  auto r = make_result(Measure::tom, g.roster(), std::move(s));
  r.params["clamped_pairs"] = static_cast<double>(t.clamped.size());
  r.policy["variant"] = std::string(to_string(options.variant));
  r.policy["nonpositive_denominator"] = options.strict ? "error" : "zero";
  return r;
}

}  // namespace mailgraph
