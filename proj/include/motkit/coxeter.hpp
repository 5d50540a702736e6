#pragma once

// Root data and Weyl groups for the irreducible types A-G: Cartan matrices,
// positive roots, lengths, shortlex-canonical reduced words, Bruhat order.
//
// Conventions. The weight lattice is the simply connected one: coordinates
// are taken in the basis of fundamental weights, so the simple root alpha_j
// is the j-th column of the Cartan matrix (entries A_{ij} = <alpha_i^vee,
// alpha_j>). Generators are 0-based in code and rendered as "s1 s2 ..." at
// the boundary.
//
// A RootDatum is the context object: WeylElt and WeylGroup keep a pointer
// into it and the datum must outlive everything derived from it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "motkit/errors.hpp"

namespace motkit::coxeter {

using i64 = std::int64_t;
using IVec = std::vector<i64>;

// Small dense integer matrix, row major. Entries stay tiny (root system
// combinatorics), so i64 is exact.
class IMat {
public:
  IMat() = default;
  IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  i64& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  i64 operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  friend IMat operator*(const IMat& a, const IMat& b) {
    IMat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        i64 v = a(i, k);
        if (v == 0) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += v * b(k, j);
      }
    return r;
  }

  IVec apply(const IVec& v) const {
    IVec r(rows_, 0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  IVec col(int j) const {
    IVec r(rows_);
    for (int i = 0; i < rows_; ++i) r[i] = (*this)(i, j);
    return r;
  }

  bool operator==(const IMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator<(const IMat& o) const { return a_ < o.a_; }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<i64> a_;
};

inline IVec negate(const IVec& v) {
  IVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

class RootDatum {
public:
  static RootDatum build(char letter, int rank);

  char letter() const { return letter_; }
  int rank() const { return rank_; }
  std::string type_string() const { return std::string(1, letter_) + std::to_string(rank_); }

  const IMat& cartan() const { return cartan_; }
  IVec simple_root(int i) const { return cartan_.col(i); }  // weight coordinates

  const std::vector<IVec>& positive_roots() const { return positive_roots_; }
  int num_positive_roots() const { return static_cast<int>(positive_roots_.size()); }
  int coxeter_number() const { return coxeter_number_; }

  // action of s_i on weight coordinates: lambda - lambda_i * alpha_i
  const IMat& reflection_matrix(int i) const { return refl_[i]; }

  bool is_positive_root(const IVec& v) const { return positive_set_.count(v) > 0; }
  bool is_negative_root(const IVec& v) const { return positive_set_.count(negate(v)) > 0; }

  long long weyl_order() const {
    auto fact = [](int n) {
      long long f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f;
    };
    switch (letter_) {
      case 'A': return fact(rank_ + 1);
      case 'B':
      case 'C': return (1LL << rank_) * fact(rank_);
      case 'D': return (1LL << (rank_ - 1)) * fact(rank_);
      case 'G': return 12;
      case 'F': return 1152;
      case 'E': return rank_ == 6 ? 51840LL : rank_ == 7 ? 2903040LL : 696729600LL;
    }
    return 0;
  }

  std::vector<long long> torsion_primes() const {
    switch (letter_) {
      case 'A':
      case 'C': return {};
      case 'B': return rank_ >= 3 ? std::vector<long long>{2} : std::vector<long long>{};
      case 'D': return {2};
      case 'G': return {2};
      case 'F': return {2, 3};
      case 'E': return rank_ == 8 ? std::vector<long long>{2, 3, 5} : std::vector<long long>{2, 3};
    }
    return {};
  }

  bool same_as(const RootDatum& o) const { return letter_ == o.letter_ && rank_ == o.rank_; }

private:
  char letter_ = 'A';
  int rank_ = 1;
  IMat cartan_;
  std::vector<IMat> refl_;
  std::vector<IVec> positive_roots_;  // weight coordinates
  std::set<IVec> positive_set_;
  int coxeter_number_ = 2;
};

inline IMat cartan_matrix(char letter, int rank) {
  auto chain = [&](IMat& a) {
    for (int i = 0; i + 1 < rank; ++i) {
      a(i, i + 1) = -1;
      a(i + 1, i) = -1;
    }
  };
  IMat a(rank, rank);
  for (int i = 0; i < rank; ++i) a(i, i) = 2;
  auto bad = [&]() -> IMat {
    throw precondition_error("invalid Cartan type " + std::string(1, letter) + std::to_string(rank) +
                             ": supported are A(n>=1), B(n>=2), C(n>=2), D(n>=4), E6, E7, E8, F4, G2");
  };
  switch (letter) {
    case 'A':
      if (rank < 1) return bad();
      chain(a);
      return a;
    case 'B':
      if (rank < 2) return bad();
      chain(a);
      a(rank - 1, rank - 2) = -2;  // last simple root short
      return a;
    case 'C':
      if (rank < 2) return bad();
      chain(a);
      a(rank - 2, rank - 1) = -2;  // last simple root long
      return a;
    case 'D': {
      if (rank < 4) return bad();
      for (int i = 0; i + 2 < rank; ++i) {
        a(i, i + 1) = -1;
        a(i + 1, i) = -1;
      }
      a(rank - 3, rank - 1) = -1;
      a(rank - 1, rank - 3) = -1;
      return a;
    }
    case 'E': {
      if (rank < 6 || rank > 8) return bad();
      // Bourbaki numbering: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4.
      auto edge = [&](int i, int j) {
        a(i - 1, j - 1) = -1;
        a(j - 1, i - 1) = -1;
      };
      edge(1, 3);
      edge(3, 4);
      edge(4, 5);
      edge(5, 6);
      edge(2, 4);
      if (rank >= 7) edge(6, 7);
      if (rank == 8) edge(7, 8);
      return a;
    }
    case 'F':
      if (rank != 4) return bad();
      chain(a);
      a(2, 1) = -2;  // <alpha3^vee, alpha2> = -2
      return a;
    case 'G':
      if (rank != 2) return bad();
      a(0, 1) = -3;
      a(1, 0) = -1;
      return a;
    default: return bad();
  }
}

inline RootDatum RootDatum::build(char letter, int rank) {
  RootDatum d;
  d.letter_ = letter;
  d.rank_ = rank;
  d.cartan_ = cartan_matrix(letter, rank);
  for (int i = 0; i < rank; ++i) {
    IMat m = IMat::identity(rank);
    IVec alpha = d.cartan_.col(i);
    for (int k = 0; k < rank; ++k) m(k, i) -= alpha[k];
    d.refl_.push_back(m);
  }
  // roots via reflection closure, in root coordinates (every root is
  // W-conjugate to a simple one)
  std::set<IVec> roots;
  std::vector<IVec> frontier;
  for (int i = 0; i < rank; ++i) {
    IVec e(rank, 0);
    e[i] = 1;
    roots.insert(e);
    frontier.push_back(e);
  }
  auto reflect_rc = [&](const IVec& v, int i) {
    i64 pairing = 0;
    for (int j = 0; j < rank; ++j) pairing += d.cartan_(i, j) * v[j];
    IVec r = v;
    r[i] -= pairing;
    return r;
  };
  while (!frontier.empty()) {
    std::vector<IVec> next;
    for (const IVec& v : frontier)
      for (int i = 0; i < rank; ++i) {
        IVec w = reflect_rc(v, i);
        if (roots.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  for (const IVec& rc : roots) {
    bool pos = true, neg = true;
    for (i64 c : rc) {
      if (c > 0) neg = false;
      if (c < 0) pos = false;
    }
    if (!pos && !neg) throw hard_error("root with mixed signs; Cartan data corrupt");
    if (pos) {
      IVec wc(rank, 0);  // weight coords: Cartan matrix times root coords
      for (int k = 0; k < rank; ++k)
        for (int j = 0; j < rank; ++j) wc[k] += d.cartan_(k, j) * rc[j];
      d.positive_roots_.push_back(wc);
    }
  }
  std::sort(d.positive_roots_.begin(), d.positive_roots_.end());
  for (const IVec& b : d.positive_roots_) d.positive_set_.insert(b);
  d.coxeter_number_ = 2 * d.num_positive_roots() / rank;
  return d;
}

class WeylElt {
public:
  WeylElt() = default;

  static WeylElt identity(const RootDatum& datum) {
    WeylElt w;
    w.datum_ = &datum;
    w.mat_ = IMat::identity(datum.rank());
    w.inv_ = w.mat_;
    return w;
  }

  static WeylElt generator(const RootDatum& datum, int i) {
    if (i < 0 || i >= datum.rank())
      throw precondition_error("generator index out of range: s" + std::to_string(i + 1));
    WeylElt w;
    w.datum_ = &datum;
    w.mat_ = datum.reflection_matrix(i);
    w.inv_ = w.mat_;
    w.word_ = {i};
    return w;
  }

  static WeylElt from_word(const RootDatum& datum, const std::vector<int>& word) {
    WeylElt w = identity(datum);
    for (int s : word) w = w * generator(datum, s);
    return w;
  }

  const RootDatum& datum() const { return *datum_; }
  const IMat& matrix() const { return mat_; }
  const IMat& inverse_matrix() const { return inv_; }
  const std::vector<int>& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }

  WeylElt inverse() const {
    WeylElt r;
    r.datum_ = datum_;
    r.mat_ = inv_;
    r.inv_ = mat_;
    r.word_ = canonical_word(*datum_, r.mat_, r.inv_);
    return r;
  }

  friend WeylElt operator*(const WeylElt& x, const WeylElt& y) {
    if (!x.datum_->same_as(*y.datum_)) throw precondition_error("Weyl elements from different root data");
    WeylElt r;
    r.datum_ = x.datum_;
    r.mat_ = x.mat_ * y.mat_;
    r.inv_ = y.inv_ * x.inv_;
    r.word_ = canonical_word(*x.datum_, r.mat_, r.inv_);
    return r;
  }

  bool operator==(const WeylElt& o) const { return mat_ == o.mat_; }
  bool operator!=(const WeylElt& o) const { return !(mat_ == o.mat_); }

  // s_i is a right descent iff w(alpha_i) is a negative root.
  bool is_right_descent(int i) const {
    return datum_->is_negative_root(mat_.apply(datum_->simple_root(i)));
  }
  // s_i is a left descent iff w^{-1}(alpha_i) is a negative root.
  bool is_left_descent(int i) const {
    return datum_->is_negative_root(inv_.apply(datum_->simple_root(i)));
  }

  // number of positive roots sent to negative ones; equals length()
  int inversions() const {
    int n = 0;
    for (const IVec& beta : datum_->positive_roots())
      if (datum_->is_negative_root(mat_.apply(beta))) ++n;
    return n;
  }

  std::string word_string() const {
    if (word_.empty()) return "e";
    std::ostringstream os;
    for (size_t k = 0; k < word_.size(); ++k) {
      if (k) os << " ";
      os << "s" << (word_[k] + 1);
    }
    return os.str();
  }

  // shortlex-minimal reduced word: repeatedly strip the smallest left descent
  static std::vector<int> canonical_word(const RootDatum& datum, IMat mat, IMat inv) {
    std::vector<int> word;
    IMat id = IMat::identity(datum.rank());
    while (!(mat == id)) {
      int descent = -1;
      for (int i = 0; i < datum.rank(); ++i)
        if (datum.is_negative_root(inv.apply(datum.simple_root(i)))) {
          descent = i;
          break;
        }
      if (descent < 0) throw hard_error("non-identity Weyl element without left descent");
      word.push_back(descent);
      mat = datum.reflection_matrix(descent) * mat;
      inv = inv * datum.reflection_matrix(descent);
    }
    return word;
  }

private:
  const RootDatum* datum_ = nullptr;
  IMat mat_, inv_;
  std::vector<int> word_;
};

// Parse "s1 s2 s1" or "e" into generator indices (0-based).
inline std::vector<int> parse_word(const RootDatum& datum, const std::string& text) {
  std::vector<int> word;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "e") continue;
    if (tok.size() < 2 || tok[0] != 's')
      throw precondition_error("cannot parse generator token '" + tok + "' (expected s1, s2, ...)");
    int idx = 0;
    try {
      idx = std::stoi(tok.substr(1));
    } catch (const std::exception&) {
      throw precondition_error("cannot parse generator token '" + tok + "'");
    }
    if (idx < 1 || idx > datum.rank())
      throw precondition_error("generator " + tok + " out of range for rank " + std::to_string(datum.rank()));
    word.push_back(idx - 1);
  }
  return word;
}

// Fully enumerated Weyl group: elements sorted by (length, canonical word),
// which is a linear extension of the Bruhat order.
class WeylGroup {
public:
  explicit WeylGroup(const RootDatum& datum, long long order_bound = 1000000) : datum_(&datum) {
    if (datum.weyl_order() > order_bound)
      throw precondition_error("Weyl group order " + std::to_string(datum.weyl_order()) +
                               " exceeds bound " + std::to_string(order_bound));
    std::map<IMat, int> seen;
    std::vector<WeylElt> elems;
    elems.push_back(WeylElt::identity(datum));
    seen.emplace(elems[0].matrix(), 0);
    size_t head = 0;
    while (head < elems.size()) {
      WeylElt w = elems[head++];
      for (int i = 0; i < datum.rank(); ++i) {
        WeylElt ws = w * WeylElt::generator(datum, i);
        if (seen.emplace(ws.matrix(), 0).second == false) continue;
        elems.push_back(ws);
        if (static_cast<long long>(elems.size()) > order_bound)
          throw precondition_error("Weyl group order exceeds bound " + std::to_string(order_bound) +
                                   " (at least " + std::to_string(elems.size()) + " elements found)");
      }
    }
    std::sort(elems.begin(), elems.end(), [](const WeylElt& a, const WeylElt& b) {
      if (a.length() != b.length()) return a.length() < b.length();
      return a.word() < b.word();
    });
    elements_ = std::move(elems);
    for (int k = 0; k < static_cast<int>(elements_.size()); ++k) index_.emplace(elements_[k].matrix(), k);
    rmul_.assign(elements_.size(), std::vector<int>(datum.rank(), -1));
    lmul_.assign(elements_.size(), std::vector<int>(datum.rank(), -1));
    inverse_.assign(elements_.size(), -1);
    for (int k = 0; k < static_cast<int>(elements_.size()); ++k) {
      for (int i = 0; i < datum.rank(); ++i) {
        rmul_[k][i] = index_.at((elements_[k] * WeylElt::generator(datum, i)).matrix());
        lmul_[k][i] = index_.at((WeylElt::generator(datum, i) * elements_[k]).matrix());
      }
      inverse_[k] = index_.at(elements_[k].inverse_matrix());
    }
  }

  const RootDatum& datum() const { return *datum_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<WeylElt>& elements() const { return elements_; }
  const WeylElt& element(int k) const { return elements_[k]; }
  int index_of(const WeylElt& w) const { return index_.at(w.matrix()); }
  int length(int k) const { return elements_[k].length(); }
  int rmul(int k, int s) const { return rmul_[k][s]; }
  int lmul(int k, int s) const { return lmul_[k][s]; }
  int inverse(int k) const { return inverse_[k]; }
  int longest() const { return order() - 1; }

  std::vector<int> length_histogram() const {
    std::vector<int> h(elements_.back().length() + 1, 0);
    for (const WeylElt& w : elements_) ++h[w.length()];
    return h;
  }

private:
  const RootDatum* datum_;
  std::vector<WeylElt> elements_;
  std::map<IMat, int> index_;
  std::vector<std::vector<int>> rmul_, lmul_;
  std::vector<int> inverse_;
};

// Bruhat order by the left-descent recursion: for s a left descent of y,
// x <= y iff min(x, sx) <= sy.
inline bool bruhat_leq(const WeylElt& x, const WeylElt& y) {
  if (!x.datum().same_as(y.datum())) throw precondition_error("Bruhat comparison across different root data");
  if (x.length() > y.length()) return false;
  if (x.is_identity()) return true;
  if (y.is_identity()) return x.is_identity();
  int s = y.word().front();  // a left descent of y
  const WeylElt gs = WeylElt::generator(x.datum(), s);
  WeylElt sy = gs * y;
  if (x.is_left_descent(s)) return bruhat_leq(gs * x, sy);
  return bruhat_leq(x, sy);
}

// All reduced expressions of w, in lexicographic order.
inline std::vector<std::vector<int>> reduced_words(const WeylElt& w, int length_bound = 24) {
  if (w.length() > length_bound)
    throw precondition_error("reduced_words: length " + std::to_string(w.length()) + " exceeds bound " +
                             std::to_string(length_bound));
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  // peel left descents: each reduced word starts with a left descent
  auto rec = [&](auto&& self, const WeylElt& u) -> void {
    if (u.is_identity()) {
      out.push_back(prefix);
      return;
    }
    for (int i = 0; i < u.datum().rank(); ++i) {
      if (!u.is_left_descent(i)) continue;
      prefix.push_back(i);
      self(self, WeylElt::generator(u.datum(), i) * u);
      prefix.pop_back();
    }
  };
  rec(rec, w);
  return out;
}

}  // namespace motkit::coxeter
