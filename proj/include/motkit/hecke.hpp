#pragma once

// Hecke algebra of a finite Weyl group over Z[v, v^{-1}], in Soergel's
// normalization: H_s^2 = (v^{-1} - v) H_s + H_e, b_s = H_s + v H_e. One
// power of v tracks one even grading shift / Tate twist downstream.

#include <map>
#include <mutex>
#include <vector>

#include "motkit/coxeter.hpp"
#include "motkit/errors.hpp"
#include "motkit/laurent.hpp"

namespace motkit::hecke {

using laurent::Laurent;

class HeckeElt {
public:
  HeckeElt() = default;
  explicit HeckeElt(const coxeter::WeylGroup& group) : group_(&group) {}

  static HeckeElt unit(const coxeter::WeylGroup& group) { return std_basis(group, 0); }

  static HeckeElt std_basis(const coxeter::WeylGroup& group, int elt, Laurent coeff = Laurent(1)) {
    HeckeElt h(group);
    h.add_term(elt, coeff);
    return h;
  }

  const coxeter::WeylGroup& group() const { return *group_; }
  const std::map<int, Laurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Laurent coeff(int elt) const {
    auto it = terms_.find(elt);
    return it == terms_.end() ? Laurent() : it->second;
  }

  void add_term(int elt, const Laurent& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(elt, Laurent());
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  HeckeElt& operator+=(const HeckeElt& o) {
    check(o);
    for (auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  HeckeElt& operator-=(const HeckeElt& o) {
    check(o);
    for (auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }

  HeckeElt scaled(const Laurent& f) const {
    HeckeElt r(*group_);
    for (auto& [w, c] : terms_) r.add_term(w, c * f);
    return r;
  }

  bool operator==(const HeckeElt& o) const { return terms_ == o.terms_; }
  bool operator!=(const HeckeElt& o) const { return !(*this == o); }

  // right multiplication by H_s
  HeckeElt rmul_std_gen(int s) const {
    const auto& W = *group_;
    HeckeElt r(W);
    static const Laurent quad = Laurent::mono(-1) - Laurent::mono(1);  // v^{-1} - v
    for (auto& [x, c] : terms_) {
      int xs = W.rmul(x, s);
      r.add_term(xs, c);
      if (W.length(xs) < W.length(x)) r.add_term(x, c * quad);
    }
    return r;
  }

  // left multiplication by H_s
  HeckeElt lmul_std_gen(int s) const {
    const auto& W = *group_;
    HeckeElt r(W);
    static const Laurent quad = Laurent::mono(-1) - Laurent::mono(1);
    for (auto& [x, c] : terms_) {
      int sx = W.lmul(x, s);
      r.add_term(sx, c);
      if (W.length(sx) < W.length(x)) r.add_term(x, c * quad);
    }
    return r;
  }

  // left multiplication by b_s = H_s + v H_e: b_s H_x = H_{sx} + v^{+-1} H_x
  HeckeElt lmul_kl_gen(int s) const {
    const auto& W = *group_;
    HeckeElt r(W);
    for (auto& [x, c] : terms_) {
      int sx = W.lmul(x, s);
      r.add_term(sx, c);
      r.add_term(x, c * Laurent::mono(W.length(sx) > W.length(x) ? 1 : -1));
    }
    return r;
  }

  // apply v -> v^{-1} to every coefficient (not the full bar involution)
  HeckeElt coeffs_barred() const {
    HeckeElt r(*group_);
    for (auto& [w, c] : terms_) r.add_term(w, c.bar());
    return r;
  }

private:
  void check(const HeckeElt& o) const {
    if (group_ != o.group_) throw precondition_error("Hecke elements over different Weyl groups");
  }

  const coxeter::WeylGroup* group_ = nullptr;
  std::map<int, Laurent> terms_;
};

inline HeckeElt hecke_mul(const HeckeElt& a, const HeckeElt& b) {
  if (&a.group() != &b.group()) throw precondition_error("Hecke elements over different Weyl groups");
  const auto& W = a.group();
  HeckeElt r(W);
  for (auto& [y, cy] : b.terms()) {
    HeckeElt acc = a;
    for (int s : W.element(y).word()) acc = acc.rmul_std_gen(s);
    r += acc.scaled(cy);
  }
  return r;
}

// Memoizing context for the bar involution and the Kazhdan-Lusztig basis.
class HeckeAlgebra {
public:
  explicit HeckeAlgebra(const coxeter::WeylGroup& group) : group_(&group) {}

  const coxeter::WeylGroup& group() const { return *group_; }

  HeckeElt unit() const { return HeckeElt::unit(*group_); }
  HeckeElt std_basis(int elt) const { return HeckeElt::std_basis(*group_, elt); }

  // bar(H_w) = (H_{w^{-1}})^{-1}; an automorphism with v -> v^{-1}
  HeckeElt bar(const HeckeElt& a) const {
    std::lock_guard<std::mutex> lk(mu_);
    HeckeElt r(*group_);
    for (auto& [w, c] : a.terms()) r += bar_std(w).scaled(c.bar());
    return r;
  }

  // Kazhdan-Lusztig basis element b_w = sum_{y <= w} h_{y,w}(v) H_y
  HeckeElt kl_basis(int w) const {
    std::lock_guard<std::mutex> lk(mu_);
    return kl(w);
  }

  // b_{s_1} b_{s_2} ... b_{s_l}; the empty word gives H_e
  HeckeElt bs_character(const std::vector<int>& word) const {
    HeckeElt acc = unit();
    for (auto it = word.rbegin(); it != word.rend(); ++it) acc = acc.lmul_kl_gen(*it);
    return acc;
  }

private:
  // bar of a standard basis element, built from bar(H_s) = H_s + (v - v^{-1}) H_e
  HeckeElt bar_std(int w) const {
    auto it = bar_memo_.find(w);
    if (it != bar_memo_.end()) return it->second;
    HeckeElt r(*group_);
    if (group_->length(w) == 0) {
      r = HeckeElt::unit(*group_);
    } else {
      int s = group_->element(w).word().front();
      HeckeElt inner = bar_std(group_->lmul(w, s));
      r = inner.lmul_std_gen(s) + inner.scaled(Laurent::mono(1) - Laurent::mono(-1));
    }
    bar_memo_.emplace(w, r);
    return r;
  }

  HeckeElt kl(int w) const {
    auto it = kl_memo_.find(w);
    if (it != kl_memo_.end()) return it->second;
    HeckeElt r(*group_);
    if (group_->length(w) == 0) {
      r = HeckeElt::unit(*group_);
    } else {
      int s = group_->element(w).word().front();
      r = kl(group_->lmul(w, s)).lmul_kl_gen(s);
      // strip mu-corrections: any v^0 coefficient below w belongs to a lower b_y
      std::vector<int> supp;
      for (auto& [y, c] : r.terms())
        if (y != w) supp.push_back(y);
      std::sort(supp.begin(), supp.end(), [&](int a, int b) { return group_->length(a) > group_->length(b); });
      for (int y : supp) {
        long long m = r.coeff(y).coeff(0);
        if (m != 0) r -= kl(y).scaled(Laurent(m));
      }
    }
    kl_memo_.emplace(w, r);
    return r;
  }

  const coxeter::WeylGroup* group_;
  mutable std::mutex mu_;
  mutable std::map<int, HeckeElt> bar_memo_, kl_memo_;
};

}  // namespace motkit::hecke
