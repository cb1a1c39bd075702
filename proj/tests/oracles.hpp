#pragma once

// Brute-force reference implementations used only by the test suites. They
// follow the textbook definitions directly and share no code with the
// library beyond the Matrix container.

#include <cstdint>
#include <random>
#include <vector>

#include "mailgraph/clustering.hpp"
#include "mailgraph/matrix.hpp"

namespace oracle {

using mailgraph::Matrix;

/// Betweenness by enumerating every simple path between every unordered pair.
std::vector<double> betweenness_by_enumeration(const Matrix& u);

/// Closeness from Floyd-Warshall hop distances over m(i, j) != 0.
std::vector<double> closeness_floyd(const Matrix& m);

/// Degree and strength read straight from the directed matrix.
std::vector<double> degree_direct(const Matrix& m);
std::vector<double> strength_direct(const Matrix& m);

/// TOM entries from the formula with explicit exclusion loops. Entries with
/// a non-positive denominator are 0; diagonal is 1.
Matrix tom_direct(const Matrix& u, bool paper_variant);

/// Agglomeration recomputing every cross-pair mean from the original matrix
/// at each step, with the same tie rule as the library.
std::vector<mailgraph::Merge> naive_average_linkage(const Matrix& d);

/// r = (n Sxy - Sx Sy) / sqrt((n Sxx - Sx^2)(n Syy - Sy^2)).
double pearson_textbook(const std::vector<double>& x, const std::vector<double>& y);

/// Random nonnegative digraph: each off-diagonal entry is nonzero with
/// probability `density`; weights are integers in [1, 5] when `integral`,
/// otherwise uniform in (0.1, 5). Self loops appear with probability density/2.
Matrix random_digraph(std::size_t n, double density, bool integral, std::mt19937_64& rng);

/// Random symmetric zero-diagonal matrix built the same way.
Matrix random_undirected(std::size_t n, double density, bool integral, std::mt19937_64& rng);

/// Whether the undirected matrix is connected.
bool connected(const Matrix& u);

}  // namespace oracle
