#include <cmath>
#include <vector>

#include "mailgraph/centrality.hpp"
#include "mailgraph/csv.hpp"
#include "mailgraph/error.hpp"

namespace mailgraph {

// Power iteration on A + cI. The shift leaves eigenvectors unchanged and makes
// the Perron root strictly dominant in modulus, so periodic graphs (bipartite
// ones, for instance) converge instead of oscillating. c is the mean row sum
// of A, which is positive for any nonzero A.
CentralityResult eigencentrality(const WeightedDigraph& g, Direction direction,
                                 const EigenOptions& options) {
  if (!(options.tolerance > 0.0)) throw ConfigError("eigencentrality tolerance must be > 0");
  if (options.max_iterations < 1) throw ConfigError("eigencentrality needs max_iterations >= 1");

  const std::size_t n = g.size();
  const Matrix a = direction == Direction::sent ? g.m() : g.m().transposed();

  double total = 0.0;
  for (double v : a.values()) total += v;
  if (n == 0 || total == 0.0) throw ConfigError("eigencentrality of a zero matrix is undefined");
  const double shift = total / static_cast<double>(n);

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  double lambda = 0.0;
  double residual = 0.0;
  long iter = 0;
  for (;; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      auto row = a.row(i);
      for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += x[i] * y[i];
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(y[i] - lambda * x[i]));
    if (residual <= options.tolerance) break;
    if (iter + 1 >= options.max_iterations)
      throw ConvergenceError("power iteration did not converge after " +
                                 std::to_string(options.max_iterations) +
                                 " iterations (residual " + csv::format_real(residual) + ")",
                             residual, options.max_iterations);

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += shift * x[i];
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }

  auto r = make_result(direction == Direction::sent ? Measure::eigen_sent : Measure::eigen_received,
                       g.roster(), std::move(x));
  r.params["lambda"] = lambda;
  r.params["residual"] = residual;
  r.params["iterations"] = static_cast<double>(iter + 1);
  r.params["shift"] = shift;
  r.params["tolerance"] = options.tolerance;
  r.policy["matrix"] = direction == Direction::sent ? "M" : "M^T";
  return r;
}

}  // namespace mailgraph
