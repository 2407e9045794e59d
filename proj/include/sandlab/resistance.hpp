#pragma once

// Effective resistance to the sink on a bidirected graph with sink, with a
// unit resistor per undirected edge. For such graphs the reduced Laplacian is
// the Laplacian grounded at the sink, and R(v) is the v-th diagonal entry of
// its inverse.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "sandlab/algebra.hpp"
#include "sandlab/classify.hpp"

namespace sandlab {

/// Graphs with at most this many non-sink vertices are solved exactly.
inline constexpr std::size_t kExactResistanceLimit = 400;

namespace detail {

inline IntegerMatrix grounded_laplacian(const Digraph& g) {
  auto info = classify(g);
  detail::require(info.has_global_sink && g.sink() && info.bidirected_with_sink,
                  "effective resistance requires a bidirected graph with sink");
  return reduced_laplacian(g);
}

inline std::vector<Rational> resistance_diagonal_exact(const IntegerMatrix& lap) {
  const std::size_t n = lap.size();
  std::vector<std::vector<Rational>> unit(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) unit[i][i] = 1;
  auto cols = solve_rational_columns(lap, unit);
  std::vector<Rational> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = cols[i][i];
  return diag;
}

// Floating solve; each entry is padded by the residual norm of its solve.
inline std::vector<Rational> resistance_diagonal_float(const IntegerMatrix& lap) {
  const auto n = static_cast<Eigen::Index>(lap.size());
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (lap(i, j) != 0) entries.emplace_back(i, j, lap(i, j).get_d());
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw SingularMatrix();
  std::vector<Rational> diag(n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    e[i] = 1.0;
    Eigen::VectorXd x = ldlt.solve(e);
    double residual = (a * x - e).lpNorm<Eigen::Infinity>();
    diag[i] = Rational(x[i] + std::max(residual, 1e-9));
    e[i] = 0.0;
  }
  return diag;
}

inline std::vector<Rational> resistance_diagonal(const IntegerMatrix& lap) {
  return lap.size() <= kExactResistanceLimit ? resistance_diagonal_exact(lap)
                                             : resistance_diagonal_float(lap);
}

}  // namespace detail

/// R(v, sink). Exact up to kExactResistanceLimit non-sink vertices.
inline Rational effective_resistance(const Digraph& g, Vertex v) {
  IntegerMatrix lap = detail::grounded_laplacian(g);
  if (v == *g.sink()) return Rational(0);
  const auto& labels = lap.labels();
  auto it = std::find(labels.begin(), labels.end(), v);
  detail::require(it != labels.end(), "vertex out of range");
  std::size_t idx = static_cast<std::size_t>(it - labels.begin());
  if (lap.size() <= kExactResistanceLimit) {
    std::vector<Rational> unit(lap.size(), Rational(0));
    unit[idx] = 1;
    return solve_rational(lap, unit)[idx];
  }
  return detail::resistance_diagonal_float(lap)[idx];
}

/// Maximum effective resistance between a vertex and the sink.
inline Rational max_effective_resistance(const Digraph& g) {
  IntegerMatrix lap = detail::grounded_laplacian(g);
  if (lap.size() == 0) return Rational(0);
  auto diag = detail::resistance_diagonal(lap);
  return *std::max_element(diag.begin(), diag.end());
}

}  // namespace sandlab
