#pragma once

// Dense exact linear algebra over the prime field F_p.
// Values are stored reduced to [0, p); p is carried by each matrix and
// mixing moduli is a logic error.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace motkit::fp {

using i64 = std::int64_t;

inline i64 normalize(i64 a, i64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline i64 add(i64 a, i64 b, i64 p) { return (a + b) % p; }
inline i64 sub(i64 a, i64 b, i64 p) { return normalize(a - b, p); }
inline i64 mul(i64 a, i64 b, i64 p) { return (a * b) % p; }

inline i64 inv(i64 a, i64 p) {
  a = normalize(a, p);
  if (a == 0) throw std::domain_error("fp::inv: zero is not invertible");
  // extended Euclid
  i64 t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    i64 q = r / new_r;
    i64 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return normalize(t, p);
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols, i64 p) : rows_(rows), cols_(cols), p_(p), a_(static_cast<size_t>(rows) * cols, 0) {}

  static Mat identity(int n, i64 p) {
    Mat m(n, n, p);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  i64 prime() const { return p_; }

  i64& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  i64 operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (i64 v : a_)
      if (v != 0) return false;
    return true;
  }

  Mat operator*(const Mat& o) const {
    check_prime(o);
    if (cols_ != o.rows_) throw std::invalid_argument("fp::Mat: dimension mismatch in product");
    Mat r(rows_, o.cols_, p_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        i64 v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) = (r(i, j) + v * o(k, j)) % p_;
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    check_shape(o);
    Mat r(rows_, cols_, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
    return r;
  }

  Mat operator-(const Mat& o) const {
    check_shape(o);
    Mat r(rows_, cols_, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = normalize(a_[i] - o.a_[i], p_);
    return r;
  }

  Mat scaled(i64 c) const {
    c = normalize(c, p_);
    Mat r(rows_, cols_, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] * c) % p_;
    return r;
  }

  Mat pow(long long e) const {
    if (rows_ != cols_) throw std::invalid_argument("fp::Mat::pow: square matrix required");
    Mat acc = identity(rows_, p_), base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  Mat transpose() const {
    Mat r(cols_, rows_, p_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int sel = -1;
      for (int i = row; i < rows_; ++i)
        if ((*this)(i, col) != 0) {
          sel = i;
          break;
        }
      if (sel < 0) continue;
      swap_rows(sel, row);
      i64 iv = inv((*this)(row, col), p_);
      for (int j = col; j < cols_; ++j) (*this)(row, j) = ((*this)(row, j) * iv) % p_;
      for (int i = 0; i < rows_; ++i) {
        if (i == row) continue;
        i64 f = (*this)(i, col);
        if (f == 0) continue;
        for (int j = col; j < cols_; ++j)
          (*this)(i, j) = normalize((*this)(i, j) - f * (*this)(row, j), p_);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  int rank() const {
    Mat c = *this;
    return static_cast<int>(c.rref().size());
  }

  // Basis of the right kernel {x : A x = 0}, one column per basis vector.
  Mat kernel() const {
    Mat r = *this;
    std::vector<int> pivots = r.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    int nullity = cols_ - static_cast<int>(pivots.size());
    Mat k(cols_, nullity, p_);
    int idx = 0;
    for (int free_col = 0; free_col < cols_; ++free_col) {
      if (is_pivot[free_col]) continue;
      k(free_col, idx) = 1;
      for (size_t pr = 0; pr < pivots.size(); ++pr)
        k(pivots[pr], idx) = normalize(-r(static_cast<int>(pr), free_col), p_);
      ++idx;
    }
    return k;
  }

  // Basis of the column space, one column per basis vector (rref rows of A^T).
  Mat column_space() const {
    Mat tt = transpose();
    std::vector<int> piv = tt.rref();
    Mat r(rows_, static_cast<int>(piv.size()), p_);
    for (size_t k = 0; k < piv.size(); ++k)
      for (int i = 0; i < rows_; ++i) r(i, static_cast<int>(k)) = tt(static_cast<int>(k), i);
    return r;
  }

  bool invertible() const {
    return rows_ == cols_ && rank() == rows_;
  }

  Mat inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("fp::Mat::inverse: square matrix required");
    Mat aug(rows_, 2 * cols_, p_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = 1;
    }
    std::vector<int> piv = aug.rref();
    if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_)
      throw std::domain_error("fp::Mat::inverse: singular matrix");
    Mat r(rows_, cols_, p_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = aug(i, cols_ + j);
    return r;
  }

  // Solve A X = B; throws if inconsistent. Returns one solution (free
  // variables set to zero).
  Mat solve(const Mat& b) const {
    check_prime(b);
    if (b.rows() != rows_) throw std::invalid_argument("fp::Mat::solve: shape mismatch");
    Mat aug(rows_, cols_ + b.cols(), p_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      for (int j = 0; j < b.cols(); ++j) aug(i, cols_ + j) = b(i, j);
    }
    std::vector<int> piv = aug.rref();
    Mat x(cols_, b.cols(), p_);
    int row = 0;
    for (int col : piv) {
      if (col >= cols_) throw std::domain_error("fp::Mat::solve: inconsistent system");
      for (int j = 0; j < b.cols(); ++j) x(col, j) = aug(row, cols_ + j);
      ++row;
    }
    return x;
  }

  // Horizontal concatenation.
  static Mat hcat(const Mat& a, const Mat& b) {
    a.check_prime(b);
    if (a.rows() != b.rows()) throw std::invalid_argument("fp::Mat::hcat: row mismatch");
    Mat r(a.rows(), a.cols() + b.cols(), a.prime());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
      for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
  }

private:
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void check_prime(const Mat& o) const {
    if (p_ != o.p_) throw std::invalid_argument("fp::Mat: mixed moduli");
  }
  void check_shape(const Mat& o) const {
    check_prime(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("fp::Mat: shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  i64 p_ = 2;
  std::vector<i64> a_;
};

}  // namespace motkit::fp
