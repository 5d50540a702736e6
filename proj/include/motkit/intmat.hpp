#pragma once

// Exact integer matrices (GMP backed): kernel lattices via column
// reduction and Smith normal form invariants. Sizes here are desk scale;
// the algorithms are the classical unimodular-operation ones.

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace motkit::zint {

using Z = mpz_class;

class ZMat {
public:
  ZMat() = default;
  ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Z& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Z& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  static ZMat identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Basis of the right kernel {x in Z^n : A x = 0}; columns of the result.
  // The kernel of an integer matrix is a saturated sublattice, so this basis
  // also spans the Q-kernel.
  ZMat kernel() const {
    ZMat m = *this;
    ZMat u = identity(cols_);
    int pivot_col = 0;
    for (int r = 0; r < rows_ && pivot_col < cols_; ++r) {
      // clear row r across columns >= pivot_col by gcd reduction
      while (true) {
        int best = -1;
        for (int c = pivot_col; c < cols_; ++c)
          if (m(r, c) != 0 && (best < 0 || cmp(abs(m(r, c)), abs(m(r, best))) < 0)) best = c;
        if (best < 0) break;
        m.swap_cols(best, pivot_col);
        u.swap_cols(best, pivot_col);
        bool again = false;
        for (int c = pivot_col + 1; c < cols_; ++c) {
          if (m(r, c) == 0) continue;
          Z q = m(r, c) / m(r, pivot_col);  // truncated division is fine for reduction
          m.add_col(c, pivot_col, -q);
          u.add_col(c, pivot_col, -q);
          if (m(r, c) != 0) again = true;
        }
        if (!again) break;
      }
      if (m(r, pivot_col) != 0) ++pivot_col;
    }
    ZMat k(cols_, cols_ - pivot_col);
    for (int c = pivot_col; c < cols_; ++c)
      for (int i = 0; i < cols_; ++i) k(i, c - pivot_col) = u(i, c);
    return k;
  }

private:
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  void add_col(int dst, int src, const Z& f) {
    for (int r = 0; r < rows_; ++r) (*this)(r, dst) += f * (*this)(r, src);
  }

  int rows_ = 0, cols_ = 0;
  std::vector<Z> a_;
};

// Nonzero diagonal entries of the Smith normal form, d_1 | d_2 | ...
inline std::vector<Z> smith_invariants(ZMat m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<Z> divisors;
  int t = 0;
  while (true) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m(i, j) != 0 && (pi < 0 || cmp(abs(m(i, j)), abs(m(pi, pj))) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    for (int j = t; j < cols; ++j) std::swap(m(t, j), m(pi, j));
    for (int i = t; i < rows; ++i) std::swap(m(i, t), m(i, pj));
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (m(i, t) == 0) continue;
      Z q = m(i, t) / m(t, t);
      for (int j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
      if (m(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (m(t, j) == 0) continue;
      Z q = m(t, j) / m(t, t);
      for (int i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
      if (m(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // residues remain, rerun with smaller pivot
    // enforce divisibility: fold any entry not divisible by the pivot back in
    bool folded = false;
    for (int i = t + 1; i < rows && !folded; ++i)
      for (int j = t + 1; j < cols && !folded; ++j)
        if (m(i, j) % m(t, t) != 0) {
          for (int jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
          folded = true;
        }
    if (folded) continue;
    divisors.push_back(abs(m(t, t)));
    ++t;
    if (t >= rows || t >= cols) break;
  }
  return divisors;
}

}  // namespace motkit::zint
