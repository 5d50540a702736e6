#pragma once

// The coinvariant algebra C = (S(X(T)) / S(X(T))^W_+) (x) F_p.
//
// Invariants are computed degree by degree over Z (integer kernels of the
// maps s_i - 1) and only then reduced mod p; computing invariants directly
// over F_p would give a different algebra in bad characteristic. The
// quotient is echelonized degreewise over F_p: the basis of each graded
// piece is a set of monomials in the fundamental-weight generators, and
// elements are coordinate vectors in that basis. Generators sit in graded
// degree 2; internally poly degree k means graded degree 2k.

#include <optional>
#include <utility>
#include <vector>

#include "motkit/coxeter.hpp"
#include "motkit/errors.hpp"
#include "motkit/fp.hpp"
#include "motkit/gpoly.hpp"
#include "motkit/intmat.hpp"
#include "motkit/laurent.hpp"

namespace motkit::coinv {

using fp::i64;
using gpoly::Mono;
using gpoly::Poly;

// homogeneous element of C: coordinates in the echelon basis of its degree
struct Element {
  int degree = 0;  // graded (even) degree
  std::vector<i64> coords;
};

inline i64 mod_reduce(const mpz_class& c, long long p) {
  mpz_class r = c % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return r.get_si();
}

// Owns a copy of the root datum, so temporaries may be passed in; graded
// modules keep a pointer to the algebra, which must outlive them.
class CoinvariantAlgebra {
public:
  CoinvariantAlgebra(coxeter::RootDatum datum, long long p) : datum_(std::move(datum)), p_(p) {
    if (!fp::is_prime(p)) throw precondition_error("coinvariant algebra: " + std::to_string(p) + " is not prime");
    if (datum_.rank() > 4)
      throw precondition_error("coinvariant algebra: rank " + std::to_string(datum_.rank()) +
                               " above desk-scale bound 4");
    build();
  }

  const coxeter::RootDatum& datum() const { return datum_; }
  long long prime() const { return p_; }
  int rank() const { return datum_.rank(); }
  int top_degree() const { return 2 * top_; }  // graded; C vanishes above this

  bool prime_ok() const {
    for (long long q : datum_.torsion_primes())
      if (q == p_) return false;
    return true;
  }

  int dim(int graded_degree) const {
    if (graded_degree < 0 || graded_degree % 2 != 0) return 0;
    int k = graded_degree / 2;
    return k <= top_ ? dims_[k] : 0;
  }

  int total_dim() const {
    int t = 0;
    for (int d : dims_) t += d;
    return t;
  }

  laurent::Laurent poincare() const {
    laurent::Laurent r;
    for (int k = 0; k <= top_; ++k) r += laurent::Laurent::mono(2 * k, dims_[k]);
    return r;
  }

  const std::vector<Mono>& monomials(int k) const { return monos_[k]; }
  const std::vector<Mono>& basis_monomials(int k) const { return basis_monos_[k]; }

  // reduced row space of the degree-k part of the defining ideal, over the
  // monomial coordinates of degree k (poly degree); complete spanning set
  const fp::Mat& ideal_rows(int k) const { return ideal_[k]; }

  // multiplication by the image of the i-th fundamental weight: C_d -> C_{d+2}
  const fp::Mat& generator_action(int i, int graded_degree) const {
    return gen_mul_[i][graded_degree / 2];
  }
  // Demazure operator on C: C_d -> C_{d-2}
  const fp::Mat& demazure_action(int s, int graded_degree) const {
    return demazure_[s][graded_degree / 2];
  }
  // simple reflection acting on C_d
  const fp::Mat& reflection_action(int s, int graded_degree) const {
    return refl_[s][graded_degree / 2];
  }

  Element generator_image(int i) const { return reduce_mono_vector(1, mono_coords(1, unit_mono(i))); }

  // the fixed degree-2 element x with del_s(x) = 1 used by the C^s splitting
  Element splitting_element(int s) const { return Element{2, x_for_[s]}; }

  // class of a homogeneous integer polynomial
  Element reduce(const Poly& f) const {
    int deg = 0;
    if (!f.is_homogeneous(&deg)) throw precondition_error("coinvariant reduce: polynomial not homogeneous");
    return reduce_homogeneous(f, deg);
  }

  // same, with the degree supplied (needed when f may vanish)
  Element reduce_homogeneous(const Poly& f, int poly_degree) const {
    if (poly_degree < 0 || poly_degree > top_) return Element{2 * poly_degree, {}};
    std::vector<i64> v(monos_[poly_degree].size(), 0);
    for (auto& [m, c] : f.terms()) v[mono_index_[poly_degree].at(m)] = mod_reduce(c, p_);
    return reduce_mono_vector(poly_degree, v);
  }

  Element zero(int graded_degree) const {
    return Element{graded_degree, std::vector<i64>(dim(graded_degree), 0)};
  }

  Element multiply(const Element& a, const Element& b) const {
    int ka = a.degree / 2, kb = b.degree / 2, kc = ka + kb;
    Element r = zero(2 * kc);
    if (kc > top_) return r;
    for (size_t i = 0; i < a.coords.size(); ++i) {
      if (a.coords[i] == 0) continue;
      for (size_t j = 0; j < b.coords.size(); ++j) {
        if (b.coords[j] == 0) continue;
        Mono prod = basis_monos_[ka][i];
        for (int v = 0; v < rank(); ++v) prod[v] += basis_monos_[kb][j][v];
        i64 c = fp::mul(a.coords[i], b.coords[j], p_);
        const int col = mono_index_[kc].at(prod);
        for (int row = 0; row < dims_[kc]; ++row)
          r.coords[row] = fp::add(r.coords[row], fp::mul(c, proj_[kc](row, col), p_), p_);
      }
    }
    return r;
  }

  // c = a + x_s b with a, b fixed by s and b = del_s(c); both homogeneous
  std::pair<Element, Element> cs_split(int s, const Element& c) const {
    const int d = c.degree;
    if (d < 0 || d / 2 > top_) return {zero(d), zero(d - 2)};  // C vanishes there
    Element b{d - 2, apply(demazure_[s][d / 2], c.coords)};
    Element xb = multiply(splitting_element(s), b);
    Element a{d, c.coords};
    for (size_t i = 0; i < a.coords.size(); ++i) a.coords[i] = fp::sub(a.coords[i], xb.coords[i], p_);
    if (apply(refl_[s][d / 2], a.coords) != a.coords)
      throw hard_error("cs_split: invariant part not s-fixed (splitting data corrupt)");
    return {a, b};
  }

  // integral invariant basis of poly degree k (for oracles and diagnostics)
  const std::vector<Poly>& integral_invariants(int k) const { return invariants_[k]; }

  const std::vector<int>& weyl_length_histogram() const { return weyl_lengths_; }

private:
  static std::vector<i64> apply(const fp::Mat& m, const std::vector<i64>& v) {
    std::vector<i64> r(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) r[i] = (r[i] + m(i, j) * v[j]) % m.prime();
    return r;
  }

  Mono unit_mono(int i) const {
    Mono m(rank(), 0);
    m[i] = 1;
    return m;
  }

  std::vector<i64> mono_coords(int k, const Mono& m) const {
    std::vector<i64> v(monos_[k].size(), 0);
    v[mono_index_[k].at(m)] = 1;
    return v;
  }

  Element reduce_mono_vector(int k, const std::vector<i64>& v) const {
    Element r = zero(2 * k);
    for (int row = 0; row < dims_[k]; ++row) {
      i64 acc = 0;
      for (size_t col = 0; col < v.size(); ++col) acc = (acc + proj_[k](row, static_cast<int>(col)) * v[col]) % p_;
      r.coords[row] = acc;
    }
    return r;
  }

  void build() {
    const int n = rank();
    top_ = datum_.num_positive_roots();  // = length of the longest element
    coxeter::WeylGroup w(datum_);
    weyl_lengths_ = w.length_histogram();

    monos_.resize(top_ + 2);
    mono_index_.resize(top_ + 2);
    invariants_.resize(top_ + 2);
    ideal_.resize(top_ + 2);
    proj_.resize(top_ + 2);
    basis_monos_.resize(top_ + 2);
    dims_.assign(top_ + 2, 0);

    for (int k = 0; k <= top_ + 1; ++k) {
      monos_[k] = gpoly::monomials_of_degree(n, k);
      for (size_t i = 0; i < monos_[k].size(); ++i) mono_index_[k].emplace(monos_[k][i], static_cast<int>(i));
    }

    // integral invariants per degree: kernel of the stacked maps (s_i - 1)
    for (int k = 1; k <= top_ + 1; ++k) {
      const int nm = static_cast<int>(monos_[k].size());
      zint::ZMat stack(n * nm, nm);
      for (int i = 0; i < n; ++i) {
        coxeter::WeylElt s = coxeter::WeylElt::generator(datum_, i);
        for (int col = 0; col < nm; ++col) {
          Poly im = gpoly::weyl_act(s, Poly(n, monos_[k][col], 1));
          for (auto& [m, c] : im.terms()) stack(i * nm + mono_index_[k].at(m), col) += c;
          stack(i * nm + col, col) -= 1;
        }
      }
      zint::ZMat ker = stack.kernel();
      for (int j = 0; j < ker.cols(); ++j) {
        Poly inv(n);
        for (int row = 0; row < nm; ++row) inv += Poly(n, monos_[k][row], ker(row, j));
        invariants_[k].push_back(inv);
      }
    }

    // quotient degree by degree: row reduce the ideal span mod p
    for (int k = 0; k <= top_ + 1; ++k) {
      const int nm = static_cast<int>(monos_[k].size());
      std::vector<std::vector<i64>> rows;
      for (int j = 1; j <= k; ++j)
        for (const Poly& u : invariants_[j])
          for (const Mono& m : monos_[k - j]) {
            Poly prod = Poly(n, m, 1) * u;
            std::vector<i64> row(nm, 0);
            bool nonzero = false;
            for (auto& [mm, c] : prod.terms()) {
              i64 v = mod_reduce(c, p_);
              row[mono_index_[k].at(mm)] = v;
              nonzero |= v != 0;
            }
            if (nonzero) rows.push_back(std::move(row));
          }
      fp::Mat ideal(static_cast<int>(rows.size()), nm, p_);
      for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < nm; ++c) ideal(static_cast<int>(r), c) = rows[r][c];
      std::vector<int> pivots = ideal.rref();
      std::vector<bool> is_pivot(nm, false);
      for (int c : pivots) is_pivot[c] = true;

      dims_[k] = nm - static_cast<int>(pivots.size());
      fp::Mat proj(dims_[k], nm, p_);
      int idx = 0;
      std::vector<int> basis_cols;
      for (int c = 0; c < nm; ++c)
        if (!is_pivot[c]) {
          basis_cols.push_back(c);
          proj(idx, c) = 1;
          ++idx;
        }
      // a pivot monomial equals minus the free tail of its reduced row
      for (size_t r = 0; r < pivots.size(); ++r)
        for (int bi = 0; bi < dims_[k]; ++bi)
          proj(bi, pivots[r]) = fp::normalize(-ideal(static_cast<int>(r), basis_cols[bi]), p_);
      proj_[k] = std::move(proj);
      for (int c : basis_cols) basis_monos_[k].push_back(monos_[k][c]);
      // keep only the reduced nonzero rows
      fp::Mat reduced(static_cast<int>(pivots.size()), nm, p_);
      for (size_t r = 0; r < pivots.size(); ++r)
        for (int c = 0; c < nm; ++c) reduced(static_cast<int>(r), c) = ideal(static_cast<int>(r), c);
      ideal_[k] = std::move(reduced);
    }

    if (dims_[0] != 1) throw hard_error("coinvariant algebra: degree-0 component has dimension " +
                                        std::to_string(dims_[0]));
    if (dims_[top_ + 1] != 0)
      throw hard_error("coinvariant algebra " + datum_.type_string() + " mod " + std::to_string(p_) +
                       ": quotient fails to vanish in graded degree " + std::to_string(2 * (top_ + 1)) +
                       " (dimension " + std::to_string(dims_[top_ + 1]) +
                       "); invariants computation is inconsistent");
    if (prime_ok()) {
      for (int k = 0; k <= top_; ++k) {
        int expect = k < static_cast<int>(weyl_lengths_.size()) ? weyl_lengths_[k] : 0;
        if (dims_[k] != expect)
          throw hard_error("coinvariant algebra " + datum_.type_string() + " mod " + std::to_string(p_) +
                           ": dim C_" + std::to_string(2 * k) + " = " + std::to_string(dims_[k]) +
                           " but " + std::to_string(expect) + " Weyl elements have length " + std::to_string(k));
      }
    }

    // structural operators
    gen_mul_.assign(n, {});
    demazure_.assign(n, {});
    refl_.assign(n, {});
    for (int i = 0; i < n; ++i) {
      gen_mul_[i].resize(top_ + 1);
      demazure_[i].resize(top_ + 1);
      refl_[i].resize(top_ + 1);
      for (int k = 0; k <= top_; ++k) {
        const int src = dims_[k];
        fp::Mat mul(k + 1 <= top_ ? dims_[k + 1] : 0, src, p_);
        fp::Mat dem(k >= 1 ? dims_[k - 1] : 0, src, p_);
        fp::Mat ref(src, src, p_);
        coxeter::WeylElt s = coxeter::WeylElt::generator(datum_, i);
        for (int b = 0; b < src; ++b) {
          const Mono& m = basis_monos_[k][b];
          if (mul.rows() > 0) {
            Mono prod = m;
            ++prod[i];
            Element cls = reduce_mono_vector(k + 1, mono_coords(k + 1, prod));
            for (int row = 0; row < mul.rows(); ++row) mul(row, b) = cls.coords[row];
          }
          if (k >= 1) {
            Element cls = reduce_homogeneous(gpoly::demazure(datum_, i, Poly(n, m, 1)), k - 1);
            for (int row = 0; row < dem.rows(); ++row) dem(row, b) = cls.coords[row];
          }
          Element cls = reduce_homogeneous(gpoly::weyl_act(s, Poly(n, m, 1)), k);
          for (int row = 0; row < ref.rows(); ++row) ref(row, b) = cls.coords[row];
        }
        gen_mul_[i][k] = std::move(mul);
        demazure_[i][k] = std::move(dem);
        refl_[i][k] = std::move(ref);
      }
    }

    // splitting elements: del_s(x) = 1; the s-th fundamental weight works in
    // every characteristic, but search deterministically as specified
    x_for_.assign(n, {});
    for (int s = 0; s < n; ++s) {
      std::optional<std::vector<i64>> found;
      auto check = [&](const std::vector<i64>& cand) {
        std::vector<i64> d = apply(demazure_[s][1], cand);
        return d.size() == 1 && d[0] == 1;
      };
      std::vector<std::vector<i64>> candidates;
      candidates.push_back(reduce(Poly::variable(n, s)).coords);
      for (int j = 0; j < n; ++j)
        if (j != s) candidates.push_back(reduce(Poly::variable(n, j)).coords);
      for (auto& cand : candidates)
        if (check(cand)) {
          found = cand;
          break;
        }
      if (!found) {
        // exhaustive deterministic sweep over C_2 coordinates
        std::vector<i64> cand(dims_[1], 0);
        long long count = 1;
        for (int i = 0; i < dims_[1]; ++i) count *= p_;
        for (long long code = 0; code < count && !found; ++code) {
          long long c = code;
          for (int i = 0; i < dims_[1]; ++i) {
            cand[i] = c % p_;
            c /= p_;
          }
          if (check(cand)) found = cand;
        }
      }
      if (!found)
        throw precondition_error("no degree-2 element x with del_s(x)=1 for s" + std::to_string(s + 1) +
                                 " at p=" + std::to_string(p_) + "; C is not free of rank 2 over C^s here");
      x_for_[s] = *found;
    }
  }

  coxeter::RootDatum datum_;
  long long p_;
  int top_ = 0;
  std::vector<std::vector<Mono>> monos_;
  std::vector<std::map<Mono, int>> mono_index_;
  std::vector<std::vector<Poly>> invariants_;
  std::vector<fp::Mat> ideal_;
  std::vector<fp::Mat> proj_;
  std::vector<std::vector<Mono>> basis_monos_;
  std::vector<int> dims_;
  std::vector<std::vector<fp::Mat>> gen_mul_, demazure_, refl_;
  std::vector<std::vector<i64>> x_for_;
  std::vector<int> weyl_lengths_;
};

inline CoinvariantAlgebra build_coinvariant(const coxeter::RootDatum& datum, long long p) {
  return CoinvariantAlgebra(datum, p);
}

}  // namespace motkit::coinv
