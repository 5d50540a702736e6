#pragma once

// Motivic cohomology of affinely stratified varieties from their
// stratification poset: free of rank one per cell, concentrated in bidegrees
// (2i, i) with i the cell dimension. Inputs are declarative; the Whitney-Tate
// condition is assumed, not checked.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "motkit/coxeter.hpp"
#include "motkit/errors.hpp"

namespace motkit::cellmot {

// (cohomological degree j, twist i) -> dimension
using BigradedDims = std::map<std::pair<int, int>, long long>;

struct Stratum {
  std::string label;
  int dim = 0;
};

class StrataPoset {
public:
  // relations are pairs (a, b) meaning "a lies in the closure of b";
  // reflexive-transitive closure is taken here
  StrataPoset(std::vector<Stratum> strata, const std::vector<std::pair<std::string, std::string>>& relations)
      : strata_(std::move(strata)) {
    const int n = static_cast<int>(strata_.size());
    for (int i = 0; i < n; ++i) {
      if (strata_[i].dim < 0) throw precondition_error("strata poset: negative dimension");
      if (!index_.emplace(strata_[i].label, i).second)
        throw precondition_error("strata poset: duplicate label '" + strata_[i].label + "'");
    }
    leq_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq_[i][i] = true;
    for (auto& [a, b] : relations) leq_[index_of(a)][index_of(b)] = true;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (leq_[i][k] && leq_[k][j]) leq_[i][j] = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && leq_[i][j]) {
          if (leq_[j][i])
            throw precondition_error("strata poset: closure order not antisymmetric between '" +
                                     strata_[i].label + "' and '" + strata_[j].label + "'");
          if (strata_[i].dim >= strata_[j].dim)
            throw precondition_error("strata poset: closure order must respect dimension strictly ('" +
                                     strata_[i].label + "' < '" + strata_[j].label + "')");
        }
  }

  const std::vector<Stratum>& strata() const { return strata_; }
  int size() const { return static_cast<int>(strata_.size()); }
  bool leq(int a, int b) const { return leq_[a][b]; }

  int index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw precondition_error("strata poset: unknown label '" + label + "'");
    return it->second;
  }

  int top_dimension() const {
    int d = 0;
    for (auto& s : strata_) d = std::max(d, s.dim);
    return d;
  }

  // declared irreducible-like: a unique maximal stratum
  bool has_unique_open_stratum() const {
    int maximal = 0;
    for (int i = 0; i < size(); ++i) {
      bool is_max = true;
      for (int j = 0; j < size(); ++j)
        if (j != i && leq_[i][j]) is_max = false;
      if (is_max) ++maximal;
    }
    return maximal == 1;
  }

  bool is_down_set(const std::set<std::string>& labels) const {
    for (const std::string& b : labels) {
      int bi = index_of(b);
      for (int a = 0; a < size(); ++a)
        if (leq_[a][bi] && !labels.count(strata_[a].label)) return false;
    }
    return true;
  }

  StrataPoset restricted_to(const std::set<std::string>& labels) const {
    std::vector<Stratum> sub;
    for (auto& s : strata_)
      if (labels.count(s.label)) sub.push_back(s);
    std::vector<std::pair<std::string, std::string>> rels;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (i != j && leq_[i][j] && labels.count(strata_[i].label) && labels.count(strata_[j].label))
          rels.emplace_back(strata_[i].label, strata_[j].label);
    return StrataPoset(std::move(sub), rels);
  }

private:
  std::vector<Stratum> strata_;
  std::map<std::string, int> index_;
  std::vector<std::vector<bool>> leq_;
};

// one copy of the coefficient field in bidegree (2i, i) per i-dimensional cell
inline BigradedDims motivic_cohomology(const StrataPoset& x) {
  BigradedDims out;
  for (auto& s : x.strata()) ++out[{2 * s.dim, s.dim}];
  return out;
}

inline StrataPoset flag_strata(const coxeter::WeylGroup& group) {
  std::vector<Stratum> strata;
  for (const coxeter::WeylElt& w : group.elements()) strata.push_back({w.word_string(), w.length()});
  std::vector<std::pair<std::string, std::string>> rels;
  for (int a = 0; a < group.order(); ++a)
    for (int b = 0; b < group.order(); ++b)
      if (a != b && coxeter::bruhat_leq(group.element(a), group.element(b)))
        rels.emplace_back(group.element(a).word_string(), group.element(b).word_string());
  return StrataPoset(std::move(strata), rels);
}

// cohomology of a projectivized rank-n bundle over X: convolve with the
// n-term Tate sum 1 + 1(1)[2] + ... + 1(n-1)[2n-2]
inline BigradedDims projective_bundle(const BigradedDims& x, int n) {
  if (n < 1) throw precondition_error("projective bundle rank must be >= 1");
  BigradedDims out;
  for (int t = 0; t < n; ++t)
    for (auto& [ji, c] : x) out[{ji.first + 2 * t, ji.second + t}] += c;
  return out;
}

struct LocalizationReport {
  BigradedDims total, open_part, closed_part;
  bool additive = false;
};

// split X into a closed union of strata and its open complement; by evenness
// the localization sequence splits, so the dimension tables must add up
inline LocalizationReport localization_check(const StrataPoset& x, const std::set<std::string>& closed) {
  if (!x.is_down_set(closed))
    throw precondition_error("localization check: the closed part must be downward closed");
  std::set<std::string> open;
  for (auto& s : x.strata())
    if (!closed.count(s.label)) open.insert(s.label);
  LocalizationReport rep;
  rep.total = motivic_cohomology(x);
  rep.open_part = motivic_cohomology(x.restricted_to(open));
  rep.closed_part = motivic_cohomology(x.restricted_to(closed));
  BigradedDims sum = rep.open_part;
  for (auto& [ji, c] : rep.closed_part) sum[ji] += c;
  rep.additive = sum == rep.total;
  return rep;
}

}  // namespace motkit::cellmot
