#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stein/int_matrix.hpp"

namespace stein {

struct HermiteResult {
  IntMatrix H;  // U * A, row echelon
  IntMatrix U;  // unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Row-style Hermite normal form H = U * A.
///
/// H is in row echelon form with positive pivots; entries above each pivot
/// lie in [0, pivot). The pivot in each column is chosen as the entry of
/// smallest absolute value (lowest row on ties).
inline HermiteResult hermite_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  HermiteResult r{A, IntMatrix::identity(m), 0, {}};
  IntMatrix& H = r.H;
  IntMatrix& U = r.U;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    bool has_pivot = false;
    while (true) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i)
        if (H(i, c) != 0 && (best == m || abs(H(i, c)) < abs(H(best, c)))) best = i;
      if (best == m) break;
      has_pivot = true;
      H.swap_rows(row, best);
      U.swap_rows(row, best);
      bool clean = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Integer q = H(i, c) / H(row, c);
        H.add_row(i, row, -q);
        U.add_row(i, row, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!has_pivot) continue;
    if (H(row, c) < 0) {
      H.negate_row(row);
      U.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(H(i, c), H(row, c));
      H.add_row(i, row, -q);
      U.add_row(i, row, -q);
    }
    r.pivot_cols.push_back(c);
    ++row;
  }
  r.rank = row;
  return r;
}

/// Solves x * H_top = target for the nonzero rows of an HNF. Returns nullopt
/// when target is outside the rational row space.
inline std::optional<std::vector<Rational>> solve_in_row_space(const HermiteResult& h,
                                                              const std::vector<Rational>& target) {
  std::vector<Rational> x(h.rank);
  for (std::size_t k = 0; k < h.rank; ++k) {
    std::size_t c = h.pivot_cols[k];
    Rational acc = target[c];
    for (std::size_t j = 0; j < k; ++j) acc -= x[j] * Rational(h.H(j, c));
    x[k] = acc / Rational(h.H(k, c));
  }
  for (std::size_t c = 0; c < h.H.cols(); ++c) {
    Rational acc = 0;
    for (std::size_t j = 0; j < h.rank; ++j) acc += x[j] * Rational(h.H(j, c));
    if (acc != target[c]) return std::nullopt;
  }
  return x;
}

struct SmithResult {
  IntMatrix D;  // U * A * V, diagonal with d_1 | d_2 | ...
  IntMatrix U;
  IntMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// Smith normal form D = U * A * V with nonnegative diagonal d_1 | d_2 | ...
/// Pivot: smallest nonzero |entry| of the active block, lowest (row, col) on ties.
inline SmithResult smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithResult r{A, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& D = r.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (bi == m || abs(D(i, j)) < abs(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) return r;  // the rest is zero
      D.swap_rows(t, bi);
      r.U.swap_rows(t, bi);
      D.swap_cols(t, bj);
      r.V.swap_cols(t, bj);

      bool done = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = D(i, t) / D(t, t);
        D.add_row(i, t, -q);
        r.U.add_row(i, t, -q);
        if (D(i, t) != 0) done = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = D(t, j) / D(t, t);
        D.add_col(j, t, -q);
        r.V.add_col(j, t, -q);
        if (D(t, j) != 0) done = false;
      }
      if (!done) continue;

      // divisibility: fold an offending row into row t and retry
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      D.add_row(t, bad, 1);
      r.U.add_row(t, bad, 1);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      r.U.negate_row(t);
    }
  }
  return r;
}

/// A finitely generated abelian group  Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k.
///
/// reduction_map sends ambient coordinates to factor coordinates: its first k
/// rows give the torsion residues (mod d_i), the remaining free_rank rows the
/// free coordinates.
struct AbelianInvariants {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;
  IntMatrix reduction_map;

  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }

  /// "0", "Z/3", "Z/2 + Z^2", ...
  std::string to_string() const {
    std::string s;
    for (const auto& d : invariant_factors) s += (s.empty() ? "" : " + ") + ("Z/" + d.str());
    if (free_rank == 1) s += (s.empty() ? "" : " + ") + std::string("Z");
    if (free_rank > 1) s += (s.empty() ? "" : " + ") + ("Z^" + std::to_string(free_rank));
    return s.empty() ? "0" : s;
  }

  friend bool same_group(const AbelianInvariants& a, const AbelianInvariants& b) {
    return a.invariant_factors == b.invariant_factors && a.free_rank == b.free_rank;
  }
};

/// Cokernel Z^rows / (column span of R) read off a Smith normal form.
inline AbelianInvariants cokernel(const IntMatrix& R) {
  SmithResult s = smith_normal_form(R);
  const std::size_t m = R.rows();
  AbelianInvariants out;
  std::vector<std::size_t> torsion_rows, free_rows;
  for (std::size_t i = 0; i < m; ++i) {
    Integer d = i < R.cols() ? s.D(i, i) : Integer(0);
    if (d == 1) continue;
    if (d == 0) {
      free_rows.push_back(i);
    } else {
      torsion_rows.push_back(i);
      out.invariant_factors.push_back(d);
    }
  }
  out.free_rank = free_rows.size();
  out.reduction_map = IntMatrix(torsion_rows.size() + free_rows.size(), m);
  std::size_t k = 0;
  for (auto rows : {torsion_rows, free_rows})
    for (std::size_t i : rows) {
      for (std::size_t j = 0; j < m; ++j) out.reduction_map(k, j) = s.U(i, j);
      ++k;
    }
  return out;
}

/// Tensors with Z[1/m]: strips the given primes from every torsion factor and
/// drops factors that become 1. Free rank is unchanged.
inline AbelianInvariants localize_factors(const AbelianInvariants& inv, const std::vector<Prime>& primes) {
  AbelianInvariants out;
  out.free_rank = inv.free_rank;
  const std::size_t k = inv.invariant_factors.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i) {
    Integer d = strip_primes(inv.invariant_factors[i], primes);
    if (d == 1) continue;
    out.invariant_factors.push_back(d);
    keep.push_back(i);
  }
  for (std::size_t i = k; i < inv.reduction_map.rows(); ++i) keep.push_back(i);
  out.reduction_map = IntMatrix(keep.size(), inv.reduction_map.cols());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t j = 0; j < inv.reduction_map.cols(); ++j) out.reduction_map(r, j) = inv.reduction_map(keep[r], j);
  return out;
}

}  // namespace stein
