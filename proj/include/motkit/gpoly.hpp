#pragma once

// Polynomials in the fundamental weights over Z, the Weyl action, and
// Demazure operators. Each generator sits in degree 2 by the grading
// convention used throughout; internally we count ordinary polynomial
// degree (half the grading).

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "motkit/coxeter.hpp"
#include "motkit/errors.hpp"

namespace motkit::gpoly {

using Z = mpz_class;
using Mono = std::vector<int>;  // exponent vector

inline int total_degree(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

class Poly {
public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  Poly(int nvars, const Mono& m, Z c) : nvars_(nvars) {
    if (c != 0) t_[m] = std::move(c);
  }

  static Poly variable(int nvars, int i, Z c = 1) {
    Mono m(nvars, 0);
    m[i] = 1;
    return Poly(nvars, m, std::move(c));
  }

  static Poly constant(int nvars, Z c) { return Poly(nvars, Mono(nvars, 0), std::move(c)); }

  // linear form from coordinates
  static Poly linear(const coxeter::IVec& coeffs) {
    Poly r(static_cast<int>(coeffs.size()));
    for (size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) r.t_[unit_mono(static_cast<int>(coeffs.size()), static_cast<int>(i))] = coeffs[i];
    return r;
  }

  int nvars() const { return nvars_; }
  const std::map<Mono, Z>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  Z coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Z(0) : it->second;
  }

  Poly& operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars_);
    Mono m(a.nvars_, 0);
    for (auto& [ma, ca] : a.t_)
      for (auto& [mb, cb] : b.t_) {
        for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  Poly scaled(const Z& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (auto& [m, cc] : t_) r.t_[m] = cc * c;
    return r;
  }

  bool operator==(const Poly& o) const { return t_ == o.t_; }

  bool is_homogeneous(int* degree_out = nullptr) const {
    int d = -1;
    for (auto& [m, c] : t_) {
      int dm = total_degree(m);
      if (d < 0) d = dm;
      else if (d != dm) return false;
    }
    if (degree_out) *degree_out = d < 0 ? 0 : d;
    return true;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : t_) {
      os << (first ? "" : " + ") << c.get_str();
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) {
          os << "*w" << i + 1;
          if (m[i] > 1) os << "^" << m[i];
        }
      first = false;
    }
    return os.str();
  }

private:
  static Mono unit_mono(int n, int i) {
    Mono m(n, 0);
    m[i] = 1;
    return m;
  }
  void add_term(const Mono& m, Z c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(m, 0);
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }

  int nvars_ = 0;
  std::map<Mono, Z> t_;
};

// w . f, substituting each weight by its image under the action matrix.
inline Poly weyl_act(const coxeter::WeylElt& w, const Poly& f) {
  const int n = f.nvars();
  if (w.datum().rank() != n) throw precondition_error("weyl_act: rank mismatch");
  std::vector<Poly> images;
  for (int i = 0; i < n; ++i) images.push_back(Poly::linear(w.matrix().col(i)));
  Poly r(n);
  for (auto& [m, c] : f.terms()) {
    Poly term = Poly::constant(n, c);
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < m[i]; ++e) term = term * images[i];
    r += term;
  }
  return r;
}

// Demazure operator: f -> (f - s.f)/alpha_s, computed without division via
// the twisted Leibniz rule; lands back in Z-coefficients because the weight
// lattice pairs integrally with coroots.
class DemazureContext {
public:
  DemazureContext(const coxeter::RootDatum& datum, int s) : datum_(&datum), s_(s) {
    for (int j = 0; j < datum.rank(); ++j)
      reflected_var_.push_back(Poly::linear(datum.reflection_matrix(s).col(j)));
  }

  Poly apply(const Poly& f) {
    Poly r(datum_->rank());
    for (auto& [m, c] : f.terms()) r += mono(m).scaled(c);
    return r;
  }

private:
  // del(x_j . m') = delta_{j,s} m' + (s.x_j) del(m')
  const Poly& mono(const Mono& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    const int n = datum_->rank();
    Poly res(n);
    int j = -1;
    for (int i = 0; i < n; ++i)
      if (m[i] > 0) {
        j = i;
        break;
      }
    if (j >= 0) {
      Mono rest = m;
      --rest[j];
      if (j == s_) res += Poly(n, rest, 1);
      res += reflected_var_[j] * mono(rest);
    }
    return memo_.emplace(m, std::move(res)).first->second;
  }

  const coxeter::RootDatum* datum_;
  int s_;
  std::vector<Poly> reflected_var_;
  std::map<Mono, Poly> memo_;
};

inline Poly demazure(const coxeter::RootDatum& datum, int s, const Poly& f) {
  if (f.nvars() != datum.rank()) throw precondition_error("demazure: rank mismatch");
  DemazureContext ctx(datum, s);
  return ctx.apply(f);
}

// All exponent vectors of the given total degree, lexicographically.
inline std::vector<Mono> monomials_of_degree(int nvars, int degree) {
  std::vector<Mono> out;
  Mono cur(nvars, 0);
  auto rec = [&](auto&& self, int var, int rest) -> void {
    if (var == nvars - 1) {
      cur[var] = rest;
      out.push_back(cur);
      return;
    }
    for (int e = rest; e >= 0; --e) {
      cur[var] = e;
      self(self, var + 1, rest - e);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

}  // namespace motkit::gpoly
