#pragma once

// Integer Laurent polynomials in one variable; exact arithmetic, no zero
// coefficients stored.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace motkit::laurent {

class Laurent {
public:
  Laurent() = default;
  Laurent(long long constant) {
    if (constant != 0) c_[0] = constant;
  }

  static Laurent mono(int deg, long long coeff = 1) {
    Laurent r;
    if (coeff != 0) r.c_[deg] = coeff;
    return r;
  }

  static Laurent v() { return mono(1); }

  long long coeff(int deg) const {
    auto it = c_.find(deg);
    return it == c_.end() ? 0 : it->second;
  }

  bool is_zero() const { return c_.empty(); }

  const std::map<int, long long>& terms() const { return c_; }

  int min_deg() const { return c_.empty() ? 0 : c_.begin()->first; }
  int max_deg() const { return c_.empty() ? 0 : c_.rbegin()->first; }

  Laurent& operator+=(const Laurent& o) {
    for (auto& [d, c] : o.c_) add_term(d, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto& [d, c] : o.c_) add_term(d, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto& [da, ca] : a.c_)
      for (auto& [db, cb] : b.c_) r.add_term(da + db, ca * cb);
    return r;
  }

  Laurent operator-() const {
    Laurent r;
    for (auto& [d, c] : c_) r.c_[d] = -c;
    return r;
  }

  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }
  bool operator<(const Laurent& o) const { return c_ < o.c_; }

  // v -> v^{-1}
  Laurent bar() const {
    Laurent r;
    for (auto& [d, c] : c_) r.c_[-d] = c;
    return r;
  }

  long long eval_one() const {
    long long s = 0;
    for (auto& [d, c] : c_) s += c;
    return s;
  }

  bool is_palindromic() const { return *this == bar(); }

  bool nonneg() const {
    for (auto& [d, c] : c_)
      if (c < 0) return false;
    return true;
  }

  // coefficients supported in strictly positive degrees
  bool positive_degrees_only() const { return c_.empty() || min_deg() >= 1; }

  std::vector<std::pair<int, long long>> pairs() const {
    return {c_.begin(), c_.end()};
  }

  std::string str(const std::string& var = "v") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [d, c] : c_) {
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      long long a = c > 0 ? c : -c;
      if (a != 1 || d == 0) os << a;
      if (d != 0) {
        if (a != 1) os << "*";
        os << var;
        if (d != 1) os << "^" << d;
      }
      first = false;
    }
    return os.str();
  }

private:
  void add_term(int d, long long c) {
    if (c == 0) return;
    auto [it, inserted] = c_.try_emplace(d, 0);
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }

  std::map<int, long long> c_;
};

// (1+v)^n with v replaced by mono(step): handy for graded dimensions.
inline Laurent binomial_power(int n, int step = 1) {
  Laurent r(1), f = Laurent(1) + Laurent::mono(step);
  for (int i = 0; i < n; ++i) r = r * f;
  return r;
}

}  // namespace motkit::laurent
