#pragma once

// Milnor K-theory of small finite fields by brute force over the unit group,
// and the Hom table between Tate objects over the algebraic closure that it
// controls: K^M_n(F_q) has no p-torsion for n > 0 (Steinberg), so the table
// is the delta at (0,0).

#include <vector>

#include "motkit/errors.hpp"
#include "motkit/fp.hpp"
#include "motkit/intmat.hpp"

namespace motkit::milnork {

// elementary divisors d_1 | d_2 | ... (> 1 each) plus the free rank
struct AbGroupInvariants {
  std::vector<long long> divisors;
  int free_rank = 0;

  bool trivial() const { return divisors.empty() && free_rank == 0; }
  long long order() const {  // 0 means infinite
    if (free_rank > 0) return 0;
    long long n = 1;
    for (long long d : divisors) n *= d;
    return n;
  }
};

namespace detail {

struct Factorization {
  long long p = 0;
  int e = 0;
};

inline Factorization prime_power(long long q) {
  if (q < 2) throw precondition_error("finite field size must be at least 2");
  long long p = 0;
  long long m = q;
  for (long long d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return {q, 1};
  int e = 0;
  while (m > 1) {
    if (m % p != 0) throw precondition_error(std::to_string(q) + " is not a prime power");
    m /= p;
    ++e;
  }
  return {p, e};
}

inline std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

// F_q with a fixed primitive element and the full discrete-log table.
// Elements are coded as integers: sum c_i p^i for the polynomial sum c_i x^i
// over F_p (plain residues when q is prime).
class FqUnits {
public:
  explicit FqUnits(long long q) : q_(q) {
    auto [p, e] = detail::prime_power(q);
    p_ = p;
    e_ = e;
    if (e_ == 1) {
      modulus_ = {0, 1};  // unused for prime fields
    } else {
      find_primitive_polynomial();
    }
    build_log_table();
  }

  long long q() const { return q_; }
  long long characteristic() const { return p_; }
  long long generator() const { return exp_[1]; }

  long long log(long long code) const {
    if (code <= 0 || code >= q_ || log_[code] < 0) throw precondition_error("log of a non-unit");
    return log_[code];
  }

  long long one_minus(long long code) const {  // 1 - a as field element
    std::vector<long long> c = decode(code);
    c[0] = (1 - c[0] % p_ + p_) % p_;
    for (size_t i = 1; i < c.size(); ++i) c[i] = (p_ - c[i]) % p_;
    return encode(c);
  }

private:
  std::vector<long long> decode(long long code) const {
    std::vector<long long> c(e_, 0);
    for (int i = 0; i < e_; ++i) {
      c[i] = code % p_;
      code /= p_;
    }
    return c;
  }
  long long encode(const std::vector<long long>& c) const {
    long long code = 0;
    for (int i = e_ - 1; i >= 0; --i) code = code * p_ + c[i];
    return code;
  }

  // multiply field elements as polynomials modulo the defining polynomial
  long long field_mul(long long a, long long b) const {
    if (e_ == 1) return (a * b) % p_;
    std::vector<long long> pa = decode(a), pb = decode(b), prod(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i)
      for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
    for (int d = 2 * e_ - 2; d >= e_; --d) {
      long long c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      // x^e = -(lower part of the modulus)
      for (int i = 0; i < e_; ++i) prod[d - e_ + i] = (prod[d - e_ + i] + c * (p_ - modulus_[i])) % p_;
    }
    prod.resize(e_);
    return encode(prod);
  }

  long long field_pow(long long a, long long n) const {
    long long r = 1;
    while (n > 0) {
      if (n & 1) r = field_mul(r, a);
      a = field_mul(a, a);
      n >>= 1;
    }
    return r;
  }

  bool generates_units(long long g) const {
    for (long long ell : detail::prime_divisors(q_ - 1))
      if (field_pow(g, (q_ - 1) / ell) == 1) return false;
    return q_ == 2 || field_pow(g, q_ - 1) == 1;
  }

  // smallest monic polynomial (lexicographic in low coefficients) making x a
  // generator of the unit group; irreducibility is implied when the order of
  // x is q-1 > p^d - 1 for all proper divisors d... checked directly instead
  void find_primitive_polynomial() {
    std::vector<long long> c(e_, 0);
    while (true) {
      // next coefficient vector
      int i = 0;
      while (i < e_ && c[i] == p_ - 1) c[i++] = 0;
      if (i == e_) throw hard_error("no primitive polynomial found (impossible)");
      ++c[i];
      modulus_ = c;
      modulus_.resize(e_);
      if (!is_irreducible()) continue;
      if (generates_units(p_ /* code of x */)) return;
    }
  }

  // Rabin test: x^(p^e) == x mod f and gcd degrees via x^(p^(e/l)) != x
  bool is_irreducible() const {
    long long xq = p_;  // code of x
    for (int i = 0; i < e_; ++i) xq = field_pow_raw(xq, p_);
    if (xq != p_ % q_) return false;
    for (long long ell : detail::prime_divisors(e_)) {
      long long y = p_;
      for (int i = 0; i < e_ / ell; ++i) y = field_pow_raw(y, p_);
      if (y == p_ % q_) return false;
    }
    return true;
  }
  // like field_pow but safe to call while modulus_ is only a candidate
  long long field_pow_raw(long long a, long long n) const {
    long long r = 1;
    while (n > 0) {
      if (n & 1) r = field_mul(r, a);
      a = field_mul(a, a);
      n >>= 1;
    }
    return r;
  }

  void build_log_table() {
    long long g;
    if (e_ == 1) {
      g = 0;
      for (long long cand = 1; cand < q_; ++cand)
        if (generates_units(cand)) {
          g = cand;
          break;
        }
      if (g == 0 && q_ > 2) throw hard_error("no primitive root found (impossible)");
      if (q_ == 2) g = 1;
    } else {
      g = p_;  // x itself generates by construction
    }
    log_.assign(q_, -1);
    exp_.assign(q_ - 1, 0);
    long long cur = 1;
    for (long long k = 0; k < q_ - 1; ++k) {
      exp_[k] = cur;
      if (log_[cur] != -1) throw hard_error("primitive element has small order (log table collision)");
      log_[cur] = k;
      cur = field_mul(cur, g);
    }
    if (cur != 1) throw hard_error("unit group order mismatch");
  }

  long long q_, p_;
  int e_;
  std::vector<long long> modulus_;  // monic: x^e + sum modulus_[i] x^i
  std::vector<long long> log_, exp_;
};

// K^M_n(F_q) = (F_q^*)^{(x)n} / <a (x) (1-a) in adjacent slots>. The tensor
// power of the cyclic unit group is cyclic of order q-1 on g(x)...(x)g, and a
// Steinberg tensor with remaining slots set to g lands on log(a)log(1-a)
// times the generator; other unit choices only rescale these relations.
inline AbGroupInvariants milnor_k(long long q, int n) {
  if (q > 64) throw precondition_error("milnor_k: q bounded by 64 at desk scale");
  if (n < 0 || n > 3) throw precondition_error("milnor_k: n bounded by 3 at desk scale");
  detail::prime_power(q);  // validates
  if (n == 0) return {{}, 1};
  const long long m = q - 1;
  if (n == 1) return m > 1 ? AbGroupInvariants{{m}, 0} : AbGroupInvariants{{}, 0};

  FqUnits fq(q);
  std::vector<long long> rels{m};
  for (int slot = 0; slot + 2 <= n; ++slot)
    for (long long a = 1; a < q; ++a) {
      if (a == 1) continue;
      long long b = fq.one_minus(a);
      if (b == 0) continue;  // a = 1 only
      rels.push_back((fq.log(a) * fq.log(b)) % m);
    }
  zint::ZMat mat(static_cast<int>(rels.size()), 1);
  for (size_t i = 0; i < rels.size(); ++i) mat(static_cast<int>(i), 0) = static_cast<long>(rels[i]);
  std::vector<zint::Z> inv = zint::smith_invariants(mat);
  AbGroupInvariants out;
  if (inv.empty()) out.free_rank = 1;  // no relation hit the generator
  else if (inv[0] > 1) out.divisors.push_back(inv[0].get_si());
  return out;
}

// Hom between Tate objects over the algebraic closure of F_p: one copy of
// the coefficient field at (0,0), zero elsewhere. On the diagonal range
// 0 <= i = j <= 3 the claim is re-verified against milnor_k over the tower
// of subfields within the desk bound: the groups must already vanish mod p
// at every level.
inline int tate_hom(long long p, int i, int j) {
  if (!fp::is_prime(p)) throw precondition_error("tate_hom: p must be prime");
  const int expected = (i == 0 && j == 0) ? 1 : 0;
  if (i == j && i >= 1 && i <= 3) {
    for (long long q = p; q <= 64; q *= p) {
      AbGroupInvariants k = milnor_k(q, i);
      if (k.free_rank != 0) throw hard_error("tate_hom: Milnor K-group unexpectedly infinite");
      for (long long d : k.divisors)
        if (d % p == 0)
          throw hard_error("tate_hom: K^M_" + std::to_string(i) + "(F_" + std::to_string(q) +
                           ") has p-torsion; arithmetic bug");
      if (q > 64 / p) break;
    }
  }
  return expected;
}

}  // namespace motkit::milnork
