#pragma once

#include "tropdiv/error.hpp"
#include "tropdiv/rational.hpp"

#include <optional>
#include <vector>

namespace tropdiv {

using RatMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<BigInt>>;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<BigInt>;

inline Rational determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

inline bool leading_minors_positive(const RatMatrix& m) {
  for (std::size_t k = 1; k <= m.size(); ++k) {
    RatMatrix sub(k, RatVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
    if (determinant(sub) <= 0) return false;
  }
  return true;
}

/// Reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t matrix_rank(RatMatrix m) { return rref(m).size(); }

/// Solution set {x0 + N s} of A x = b, or nullopt when inconsistent.
struct AffineSolution {
  RatVector particular;
  std::vector<RatVector> null_basis;
};

inline std::optional<AffineSolution> solve_affine(const RatMatrix& a, const RatVector& b, std::size_t unknowns) {
  RatMatrix m(a.size(), RatVector(unknowns + 1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) m[i][j] = a[i][j];
    m[i][unknowns] = b[i];
  }
  auto pivots = rref(m);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(unknowns, 0);
  std::vector<bool> is_pivot(unknowns, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    sol.particular[pivots[r]] = m[r][unknowns];
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t f = 0; f < unknowns; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(unknowns, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    sol.null_basis.push_back(std::move(v));
  }
  return sol;
}

inline RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m(n, RatVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  auto pivots = rref(m);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvariantViolation("matrix is singular");
  RatMatrix inv(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

inline RatVector mat_vec(const RatMatrix& a, const RatVector& x) {
  RatVector y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

/// Row-style Hermite normal form of an integer matrix. Zero rows are dropped,
/// so the result is a basis of the row lattice in echelon form with positive
/// pivots and reduced entries above each pivot.
inline IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero remains.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t k = c; k < cols; ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r == rows.size() || rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t k = c; k < cols; ++k) rows[i][k] -= q * rows[r][k];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Whether an integer vector lies in the lattice spanned by an HNF basis.
inline bool in_hnf_lattice(const IntMatrix& hnf, IntVector v) {
  std::size_t c = 0;
  for (const auto& row : hnf) {
    while (c < v.size() && row[c] == 0) {
      if (v[c] != 0) return false;
      ++c;
    }
    if (c == v.size()) break;
    if (v[c] % row[c] != 0) return false;
    BigInt q = v[c] / row[c];
    for (std::size_t k = c; k < v.size(); ++k) v[k] -= q * row[k];
    ++c;
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Whether x lies in the integer span of the rational rows of `gens`.
/// Denominators are cleared with a common multiple before the normal form.
inline bool in_row_lattice(const RatMatrix& gens, const RatVector& x) {
  BigInt den = 1;
  for (const auto& row : gens)
    for (const auto& q : row) den = lcm(den, q.get_den());
  for (const auto& q : x) den = lcm(den, q.get_den());
  auto scale = [&](const RatVector& v) {
    IntVector out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(BigInt(q * Rational(den)));
    return out;
  };
  IntMatrix rows;
  for (const auto& row : gens) rows.push_back(scale(row));
  return in_hnf_lattice(hermite_normal_form(rows), scale(x));
}

/// Basis of the integer kernel {z in Z^n : A z = 0} of an integer m x n matrix.
inline std::vector<IntVector> integer_kernel(const IntMatrix& a, std::size_t n) {
  // Column operations on [A ; I] bring A to column echelon form; the identity
  // block records the unimodular transform, whose columns past the rank span
  // the kernel.
  const std::size_t m = a.size();
  IntMatrix t(n, IntVector(m + n, 0));  // row j = column j of [A ; I]
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) t[j][i] = a[i][j];
    t[j][m + j] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = r; j < n; ++j)
        if (t[j][c] != 0 && (best == n || abs(t[j][c]) < abs(t[best][c]))) best = j;
      if (best == n) break;
      std::swap(t[r], t[best]);
      bool done = true;
      for (std::size_t j = r + 1; j < n; ++j) {
        if (t[j][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), t[j][c].get_mpz_t(), t[r][c].get_mpz_t());
        for (std::size_t k = 0; k < m + n; ++k) t[j][k] -= q * t[r][k];
        if (t[j][c] != 0) done = false;
      }
      if (done) break;
    }
    if (t[r][c] != 0) ++r;
  }
  std::vector<IntVector> kernel;
  for (std::size_t j = r; j < n; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m; ++i) zero = zero && t[j][i] == 0;
    if (!zero) throw InternalError("column echelon form left a nonzero image");
    kernel.emplace_back(t[j].begin() + m, t[j].end());
  }
  return kernel;
}

}  // namespace tropdiv
