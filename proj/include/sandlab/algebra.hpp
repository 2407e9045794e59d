#pragma once

// Exact linear algebra over the integers and rationals: fraction-free
// determinants, Smith invariant factors, and rational linear solves.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "sandlab/errors.hpp"
#include "sandlab/types.hpp"

namespace sandlab {

/// Dense square matrix of big integers. Rows and columns share one label
/// list (typically the non-sink vertices a reduced Laplacian is indexed by).
class IntegerMatrix {
 public:
  IntegerMatrix() = default;

  explicit IntegerMatrix(std::size_t n) : n_(n), entries_(n * n), labels_(n) {
    std::iota(labels_.begin(), labels_.end(), Vertex{0});
  }

  IntegerMatrix(std::size_t n, std::vector<Vertex> labels)
      : n_(n), entries_(n * n), labels_(std::move(labels)) {
    detail::require(labels_.size() == n_, "label count must match matrix dimension");
  }

  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
      : IntegerMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      detail::require(row.size() == n_, "matrix must be square");
      std::size_t j = 0;
      for (long v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<Vertex>& labels() const noexcept { return labels_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  IntegerMatrix transpose() const {
    IntegerMatrix t(n_, labels_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_ && a.labels_ == b.labels_;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    for (std::size_t i = 0; i < m.n_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < m.n_; ++j) os << (j ? " " : "") << m(i, j);
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Integer> entries_;
  std::vector<Vertex> labels_;
};

/// Abelian group presented as Z^n / (row lattice). `invariant_factors` are the
/// nontrivial Smith invariants d_1 | d_2 | ... | d_r, each > 1.
struct GroupStructure {
  Integer order;
  std::vector<Integer> invariant_factors;

  friend bool operator==(const GroupStructure&, const GroupStructure&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const GroupStructure& g) {
  if (g.invariant_factors.empty()) return os << "trivial";
  for (std::size_t i = 0; i < g.invariant_factors.size(); ++i)
    os << (i ? " x " : "") << "Z/" << g.invariant_factors[i];
  return os;
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
/// Every intermediate entry is a minor of the input, so the exact division
/// by the previous pivot never leaves the integers.
inline Integer determinant(const IntegerMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace detail {

// Replace x by its representative in (-D/2, D/2].
inline void reduce_symmetric(Integer& x, const Integer& modulus) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  if (2 * x > modulus) x -= modulus;
}

// Turn an arbitrary list of diagonal entries into a divisibility chain with
// the same cokernel: repeatedly replace (a, b) by (gcd, lcm).
inline std::vector<Integer> divisibility_chain(std::vector<Integer> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      if (g == 0) continue;
      Integer l = (d[i] / g) * d[j];
      d[i] = g;
      d[j] = abs(l);
    }
  }
  return d;
}

}  // namespace detail

/// Invariant factors of coker(M) = Z^n / Z^n M.
///
/// The row lattice of a nonsingular M contains D Z^n with D = |det M|, so all
/// entries are kept reduced into (-D/2, D/2] during the gcd elimination; the
/// diagonal d_k that remains then contributes gcd(d_k, D).
inline GroupStructure smith_normal_form(const IntegerMatrix& m) {
  const std::size_t n = m.size();
  Integer order = abs(determinant(m));
  if (order == 0) throw SingularMatrix();
  GroupStructure result{order, {}};
  if (order == 1) return result;

  IntegerMatrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) detail::reduce_symmetric(a(i, j), order);

  std::vector<Integer> diagonal(n, Integer(0));
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a(i, j) != 0 && (pi == n || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == n) break;  // trailing block is zero
      if (pi != k)
        for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pi, j));
      if (pj != k)
        for (std::size_t i = k; i < n; ++i) std::swap(a(i, k), a(i, pj));

      bool clear = true;
      Integer q;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a(i, k) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, k).get_mpz_t(), a(k, k).get_mpz_t());
        for (std::size_t j = k; j < n; ++j) {
          a(i, j) -= q * a(k, j);
          detail::reduce_symmetric(a(i, j), order);
        }
        if (a(i, k) != 0) clear = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a(k, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(k, j).get_mpz_t(), a(k, k).get_mpz_t());
        for (std::size_t i = k; i < n; ++i) {
          a(i, j) -= q * a(i, k);
          detail::reduce_symmetric(a(i, j), order);
        }
        if (a(k, j) != 0) clear = false;
      }
      if (clear) break;
    }
    diagonal[k] = a(k, k);
  }

  for (auto& d : diagonal) d = gcd(d, order);  // gcd(0, D) = D
  for (auto& d : detail::divisibility_chain(std::move(diagonal)))
    if (d > 1) result.invariant_factors.push_back(d);
  return result;
}

/// Solves M X = B exactly for several right-hand sides at once.
/// `rhs` holds the columns of B. Throws SingularMatrix.
inline std::vector<std::vector<Rational>> solve_rational_columns(
    const IntegerMatrix& m, const std::vector<std::vector<Rational>>& rhs) {
  const std::size_t n = m.size();
  const std::size_t r = rhs.size();
  for (const auto& col : rhs)
    detail::require(col.size() == n, "right-hand side has the wrong length");

  // Clear denominators column by column so elimination stays in Z.
  std::vector<Integer> scale(r, Integer(1));
  for (std::size_t c = 0; c < r; ++c)
    for (const auto& x : rhs[c]) scale[c] = lcm(scale[c], x.get_den());

  const std::size_t w = n + r;
  std::vector<Integer> a(n * w);
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * w + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = m(i, j);
    for (std::size_t c = 0; c < r; ++c) {
      Rational s = rhs[c][i] * Rational(scale[c]);
      at(i, n + c) = s.get_num();
    }
  }

  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) throw SingularMatrix();
      for (std::size_t j = k; j < w; ++j) std::swap(at(k, j), at(p, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < w; ++j) {
        Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }

  std::vector<std::vector<Rational>> x(r, std::vector<Rational>(n));
  for (std::size_t c = 0; c < r; ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      Rational s(at(ii, n + c));
      for (std::size_t j = ii + 1; j < n; ++j)
        if (at(ii, j) != 0) s -= Rational(at(ii, j)) * x[c][j];
      x[c][ii] = s / Rational(at(ii, ii));
    }
    for (auto& v : x[c]) v /= Rational(scale[c]);
  }
  return x;
}

/// Exact solution of M x = b. Throws SingularMatrix.
inline std::vector<Rational> solve_rational(const IntegerMatrix& m, std::span<const Rational> b) {
  std::vector<std::vector<Rational>> rhs{std::vector<Rational>(b.begin(), b.end())};
  return std::move(solve_rational_columns(m, rhs).front());
}

/// Fractional part in [0, 1).
inline Rational mod_one(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

}  // namespace sandlab
