#pragma once

// Finite dimensional graded modules over the coinvariant algebra: the
// translation functor C (x)_{C^s} -, Bott-Samelson modules, graded Hom
// spaces, and direct sum decomposition into indecomposables.
//
// A module is a family of even graded pieces together with one matrix per
// degree-2 generator image of C; the grading is even throughout ("even
// shifts" convention) and odd shifts are rejected.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motkit/coinv.hpp"
#include "motkit/errors.hpp"
#include "motkit/fp.hpp"
#include "motkit/laurent.hpp"

namespace motkit::smod {

using coinv::CoinvariantAlgebra;
using fp::i64;
using laurent::Laurent;

// degree-homogeneous linear map between graded modules: degree d -> block
using HomMap = std::map<int, fp::Mat>;

// splitmix64; fixed here so seeded runs are identical across platforms
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  i64 below(i64 n) { return static_cast<i64>(next() % static_cast<std::uint64_t>(n)); }
};

enum class RelationCheck { none, sampled, full };

class GradedModule {
public:
  GradedModule() = default;

  GradedModule(const CoinvariantAlgebra& alg, std::map<int, int> dims,
               std::map<int, std::vector<fp::Mat>> action, RelationCheck level = RelationCheck::sampled)
      : alg_(&alg), dims_(std::move(dims)), act_(std::move(action)) {
    for (auto it = dims_.begin(); it != dims_.end();) {
      if (it->second < 0) throw precondition_error("graded module: negative dimension");
      if (it->first % 2 != 0) throw precondition_error("graded module: odd degree in support (even grading only)");
      it = it->second == 0 ? dims_.erase(it) : std::next(it);
    }
    for (auto& [d, mats] : act_)
      if (static_cast<int>(mats.size()) != alg.rank())
        throw precondition_error("graded module: one action matrix per generator required");
    validate_shapes();
    validate_commutation();
    if (level != RelationCheck::none) validate_relations(level == RelationCheck::full);
  }

  const CoinvariantAlgebra& algebra() const { return *alg_; }
  const std::map<int, int>& dims() const { return dims_; }

  int dim(int d) const {
    auto it = dims_.find(d);
    return it == dims_.end() ? 0 : it->second;
  }
  int total_dim() const {
    int t = 0;
    for (auto& [d, n] : dims_) t += n;
    return t;
  }
  bool is_zero() const { return dims_.empty(); }
  int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
  int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

  // graded dimension in degree-2 units: coefficient of v^k is dim in degree 2k
  Laurent gdim() const {
    Laurent g;
    for (auto& [d, n] : dims_) g += Laurent::mono(d / 2, n);
    return g;
  }

  // action of the i-th generator image from degree d; zero-shaped when absent
  fp::Mat action(int i, int d) const {
    auto it = act_.find(d);
    if (it == act_.end()) return fp::Mat(dim(d + 2), dim(d), alg_->prime());
    return it->second[i];
  }

  GradedModule shifted(int t) const {
    if (t % 2 != 0) throw precondition_error("graded module shift must be even");
    GradedModule r;
    r.alg_ = alg_;
    for (auto& [d, n] : dims_) r.dims_[d + t] = n;
    for (auto& [d, mats] : act_) r.act_[d + t] = mats;
    return r;
  }

  bool operator==(const GradedModule& o) const {
    return alg_ == o.alg_ && dims_ == o.dims_ && act_ == o.act_;
  }

  // operator of a basis monomial of C applied from degree d
  fp::Mat monomial_operator(const gpoly::Mono& mono, int d) const {
    fp::Mat op = fp::Mat::identity(dim(d), alg_->prime());
    int cur = d;
    for (int var = 0; var < static_cast<int>(mono.size()); ++var)
      for (int e = 0; e < mono[var]; ++e) {
        op = action(var, cur) * op;
        cur += 2;
      }
    return op;
  }

  // every element of the defining ideal of C must act as zero; checked
  // degreewise on the echelonized spanning set. The sampled check covers
  // quadratic relations only; the full check runs up to the degree where C
  // vanishes (beyond that every composite contains a vanishing one).
  void validate_relations(bool full) const {
    const int topk = alg_->top_degree() / 2 + 1;
    const int limit = full ? topk : std::min(2, topk);
    for (int k = 1; k <= limit; ++k) {
      const fp::Mat& rows = alg_->ideal_rows(k);
      const auto& monos = alg_->monomials(k);
      for (int r = 0; r < rows.rows(); ++r)
        for (auto& [d, n] : dims_) {
          if (dim(d + 2 * k) == 0) continue;
          fp::Mat acc(dim(d + 2 * k), n, alg_->prime());
          for (int c = 0; c < rows.cols(); ++c) {
            if (rows(r, c) == 0) continue;
            acc = acc + monomial_operator(monos[c], d).scaled(rows(r, c));
          }
          if (!acc.is_zero())
            throw hard_error("graded module: ideal relation of degree " + std::to_string(2 * k) +
                             " does not annihilate (from degree " + std::to_string(d) + ")");
        }
    }
  }

private:
  void validate_shapes() const {
    for (auto& [d, mats] : act_)
      for (int i = 0; i < alg_->rank(); ++i)
        if (mats[i].rows() != dim(d + 2) || mats[i].cols() != dim(d) || mats[i].prime() != alg_->prime())
          throw precondition_error("graded module: action matrix shape mismatch in degree " + std::to_string(d));
  }
  void validate_commutation() const {
    for (auto& [d, n] : dims_)
      for (int i = 0; i < alg_->rank(); ++i)
        for (int j = i + 1; j < alg_->rank(); ++j)
          if (!(action(j, d + 2) * action(i, d) == action(i, d + 2) * action(j, d)))
            throw hard_error("graded module: generator actions do not commute in degree " + std::to_string(d));
  }

  const CoinvariantAlgebra* alg_ = nullptr;
  std::map<int, int> dims_;
  std::map<int, std::vector<fp::Mat>> act_;

  friend GradedModule raw_module(const CoinvariantAlgebra&, std::map<int, int>,
                                 std::map<int, std::vector<fp::Mat>>);
};

// construction path for internally produced (already consistent) data
inline GradedModule raw_module(const CoinvariantAlgebra& alg, std::map<int, int> dims,
                               std::map<int, std::vector<fp::Mat>> action) {
  GradedModule m;
  m.alg_ = &alg;
  m.dims_ = std::move(dims);
  m.act_ = std::move(action);
  for (auto it = m.dims_.begin(); it != m.dims_.end();)
    it = it->second == 0 ? m.dims_.erase(it) : std::next(it);
  return m;
}

inline GradedModule trivial_module(const CoinvariantAlgebra& alg, int shift = 0) {
  if (shift % 2 != 0) throw precondition_error("trivial module shift must be even");
  std::map<int, int> dims{{shift, 1}};
  std::map<int, std::vector<fp::Mat>> act;
  act[shift] = std::vector<fp::Mat>(alg.rank(), fp::Mat(0, 1, alg.prime()));
  return raw_module(alg, std::move(dims), std::move(act));
}

// C (x)_{C^s} M: underlying space M + M<2>, with the action assembled from
// the splitting c = a + x b over C^s. Degree-d block order: [1(x)M_d ;
// x(x)M_{d-2}].
inline GradedModule translate(int s, const GradedModule& m) {
  const CoinvariantAlgebra& C = m.algebra();
  const long long p = C.prime();
  const int r = C.rank();

  // degree-2 data: writing g_i = a_i + beta_i x with a_i, beta_i s-invariant
  coinv::Element x = C.splitting_element(s);
  std::vector<i64> beta(r);        // del_s(g_i), a scalar
  std::vector<coinv::Element> gx;  // g_i * x in C_4
  for (int i = 0; i < r; ++i) {
    coinv::Element gi = C.generator_image(i);
    std::vector<i64> d = std::vector<i64>(1, 0);
    {
      const fp::Mat& dem = C.demazure_action(s, 2);
      i64 acc = 0;
      for (int c = 0; c < dem.cols(); ++c) acc = (acc + dem(0, c) * gi.coords[c]) % p;
      d[0] = acc;
    }
    beta[i] = d[0];
    gx.push_back(C.multiply(gi, x));
  }

  std::map<int, int> dims;
  for (auto& [d, n] : m.dims()) {
    dims[d] += n;
    dims[d + 2] += n;
  }

  // applies a C-element (degree 2 or 4) to M_d via its basis monomials
  auto elt_operator = [&](const coinv::Element& c, int d) {
    const int k = c.degree / 2;
    fp::Mat op(m.dim(d + c.degree), m.dim(d), p);
    for (size_t b = 0; b < c.coords.size(); ++b) {
      if (c.coords[b] == 0) continue;
      op = op + m.monomial_operator(C.basis_monomials(k)[b], d).scaled(c.coords[b]);
    }
    return op;
  };

  std::map<int, std::vector<fp::Mat>> act;
  for (auto& [d, nd] : dims) {
    std::vector<fp::Mat> mats;
    const int n1 = m.dim(d), n2 = m.dim(d - 2);              // source blocks
    const int t1 = m.dim(d + 2), t2 = m.dim(d);              // target blocks
    for (int i = 0; i < r; ++i) {
      fp::Mat a(t1 + t2, n1 + n2, p);
      // g . (1(x)u) = 1(x)(a_i u) + beta_i (x(x)u)
      coinv::Element ai = C.generator_image(i);
      {
        // a_i = g_i - beta_i x in C_2
        for (size_t c = 0; c < ai.coords.size(); ++c)
          ai.coords[c] = fp::sub(ai.coords[c], fp::mul(beta[i], x.coords[c], p), p);
        fp::Mat op = elt_operator(ai, d);
        for (int row = 0; row < t1; ++row)
          for (int col = 0; col < n1; ++col) a(row, col) = op(row, col);
        for (int col = 0; col < n1; ++col) a(t1 + col, col) = beta[i];
      }
      // g . (x(x)w) = 1(x)(a' w) + x(x)(b' w), with g x = a' + x b'
      if (n2 > 0) {
        auto [ap, bp] = C.cs_split(s, gx[i]);
        fp::Mat opa = elt_operator(ap, d - 2);   // degree 4 part
        fp::Mat opb = elt_operator(bp, d - 2);   // degree 2 part
        for (int row = 0; row < t1; ++row)
          for (int col = 0; col < n2; ++col) a(row, n1 + col) = opa(row, col);
        for (int row = 0; row < t2; ++row)
          for (int col = 0; col < n2; ++col) a(t1 + row, n1 + col) = opb(row, col);
      }
      mats.push_back(std::move(a));
    }
    act[d] = std::move(mats);
  }
  return raw_module(C, std::move(dims), std::move(act));
}

inline GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (&a.algebra() != &b.algebra()) throw precondition_error("direct_sum: modules over different algebras");
  const long long p = a.algebra().prime();
  std::map<int, int> dims;
  for (auto& [d, n] : a.dims()) dims[d] += n;
  for (auto& [d, n] : b.dims()) dims[d] += n;
  std::map<int, std::vector<fp::Mat>> act;
  for (auto& [d, nd] : dims) {
    std::vector<fp::Mat> mats;
    const int na = a.dim(d), nb = b.dim(d);
    for (int i = 0; i < a.algebra().rank(); ++i) {
      fp::Mat m(a.dim(d + 2) + b.dim(d + 2), na + nb, p);
      fp::Mat ma = a.action(i, d), mb = b.action(i, d);
      for (int r = 0; r < ma.rows(); ++r)
        for (int c = 0; c < na; ++c) m(r, c) = ma(r, c);
      for (int r = 0; r < mb.rows(); ++r)
        for (int c = 0; c < nb; ++c) m(a.dim(d + 2) + r, na + c) = mb(r, c);
      mats.push_back(std::move(m));
    }
    act[d] = std::move(mats);
  }
  return raw_module(a.algebra(), std::move(dims), std::move(act));
}

// Bott-Samelson module of a word, rightmost generator applied first, so the
// graded character matches b_{s_1} ... b_{s_l}.
inline GradedModule bott_samelson(const CoinvariantAlgebra& alg, const std::vector<int>& word,
                                  RelationCheck level = RelationCheck::sampled) {
  GradedModule m = trivial_module(alg, 0);
  for (auto it = word.rbegin(); it != word.rend(); ++it) m = translate(*it, m);
  if (level != RelationCheck::none) m.validate_relations(level == RelationCheck::full);
  return m;
}

// ---- graded Hom spaces ----------------------------------------------------

// basis of the space of degree-k module maps M -> N
inline std::vector<HomMap> hom_graded_shift(const GradedModule& m, const GradedModule& n, int k) {
  if (&m.algebra() != &n.algebra()) throw precondition_error("hom_graded: modules over different algebras");
  const long long p = m.algebra().prime();
  const int r = m.algebra().rank();

  // unknowns: f_d (dim N(d+k) x dim M(d)) for d in supp(M)
  std::vector<int> degs;
  std::vector<int> offset;
  int nvars = 0;
  for (auto& [d, nd] : m.dims()) {
    degs.push_back(d);
    offset.push_back(nvars);
    nvars += nd * n.dim(d + k);
  }
  if (nvars == 0) return {};
  auto var = [&](size_t di, int row, int col) {
    return offset[di] + row * m.dim(degs[di]) + col;
  };

  std::vector<std::vector<i64>> rows;
  for (size_t di = 0; di < degs.size(); ++di) {
    const int d = degs[di];
    for (int i = 0; i < r; ++i) {
      fp::Mat am = m.action(i, d);            // M_d -> M_{d+2}
      fp::Mat an = n.action(i, d + k);        // N_{d+k} -> N_{d+k+2}
      const int tr = n.dim(d + k + 2), sc = m.dim(d);
      if (tr == 0 || sc == 0) continue;
      // f_{d+2} A^M - A^N f_d = 0
      auto d2 = std::find(degs.begin(), degs.end(), d + 2);
      for (int row = 0; row < tr; ++row)
        for (int col = 0; col < sc; ++col) {
          std::vector<i64> eq(nvars, 0);
          if (d2 != degs.end()) {
            size_t dj = static_cast<size_t>(d2 - degs.begin());
            for (int t = 0; t < m.dim(d + 2); ++t)
              if (am(t, col) != 0) eq[var(dj, row, t)] = fp::add(eq[var(dj, row, t)], am(t, col), p);
          }
          for (int t = 0; t < n.dim(d + k); ++t)
            if (an(row, t) != 0) eq[var(di, t, col)] = fp::sub(eq[var(di, t, col)], an(row, t), p);
          bool nonzero = false;
          for (i64 v : eq) nonzero |= v != 0;
          if (nonzero) rows.push_back(std::move(eq));
        }
    }
  }

  fp::Mat sys(static_cast<int>(rows.size()), nvars, p);
  for (size_t rr = 0; rr < rows.size(); ++rr)
    for (int c = 0; c < nvars; ++c) sys(static_cast<int>(rr), c) = rows[rr][c];
  fp::Mat ker = sys.kernel();

  std::vector<HomMap> basis;
  for (int j = 0; j < ker.cols(); ++j) {
    HomMap f;
    for (size_t di = 0; di < degs.size(); ++di) {
      const int d = degs[di];
      fp::Mat block(n.dim(d + k), m.dim(d), p);
      for (int row = 0; row < block.rows(); ++row)
        for (int col = 0; col < block.cols(); ++col) block(row, col) = ker(var(di, row, col), j);
      f[d] = std::move(block);
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

// all shifts with nonzero Hom, as shift -> basis
inline std::map<int, std::vector<HomMap>> hom_graded(const GradedModule& m, const GradedModule& n) {
  std::map<int, std::vector<HomMap>> out;
  if (m.is_zero() || n.is_zero()) return out;
  for (int k = n.min_degree() - m.max_degree(); k <= n.max_degree() - m.min_degree(); k += 2) {
    auto basis = hom_graded_shift(m, n, k);
    if (!basis.empty()) out[k] = std::move(basis);
  }
  return out;
}

inline std::vector<HomMap> end0_basis(const GradedModule& m) { return hom_graded_shift(m, m, 0); }

// ---- degree-0 endomorphism arithmetic -------------------------------------

inline HomMap hom_zero_like(const GradedModule& m, const GradedModule& n, int k) {
  HomMap f;
  for (auto& [d, nd] : m.dims()) f[d] = fp::Mat(n.dim(d + k), nd, m.algebra().prime());
  return f;
}

inline HomMap hom_identity(const GradedModule& m) {
  HomMap f;
  for (auto& [d, nd] : m.dims()) f[d] = fp::Mat::identity(nd, m.algebra().prime());
  return f;
}

inline HomMap hom_add(const HomMap& a, const HomMap& b) {
  HomMap r = a;
  for (auto& [d, mat] : b) {
    auto it = r.find(d);
    if (it == r.end()) r[d] = mat;
    else it->second = it->second + mat;
  }
  return r;
}

inline HomMap hom_scale(const HomMap& a, i64 c) {
  HomMap r;
  for (auto& [d, mat] : a) r[d] = mat.scaled(c);
  return r;
}

inline HomMap hom_combine(const std::vector<HomMap>& basis, const std::vector<i64>& coeffs) {
  HomMap r;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i] == 0) continue;
    r = r.empty() ? hom_scale(basis[i], coeffs[i]) : hom_add(r, hom_scale(basis[i], coeffs[i]));
  }
  if (r.empty() && !basis.empty()) r = hom_scale(basis[0], 0);
  return r;
}

// compose degree-0 maps: (g o f)_d = g_d f_d (shapes must match)
inline HomMap hom_compose0(const HomMap& g, const HomMap& f) {
  HomMap r;
  for (auto& [d, fm] : f) {
    auto it = g.find(d);
    if (it == g.end()) continue;
    r[d] = it->second * fm;
  }
  return r;
}

inline bool hom_is_zero(const HomMap& f) {
  for (auto& [d, m] : f)
    if (!m.is_zero()) return false;
  return true;
}

inline bool hom_equal(const HomMap& a, const HomMap& b) {
  for (auto& [d, m] : a) {
    auto it = b.find(d);
    if (it == b.end()) {
      if (!m.is_zero()) return false;
    } else if (!(m == it->second)) {
      return false;
    }
  }
  for (auto& [d, m] : b)
    if (a.find(d) == a.end() && !m.is_zero()) return false;
  return true;
}

inline bool hom_invertible(const HomMap& f, const GradedModule& m, const GradedModule& n, int k = 0) {
  for (auto& [d, nd] : m.dims()) {
    if (n.dim(d + k) != nd) return false;
    auto it = f.find(d);
    if (it == f.end() || !it->second.invertible()) return false;
  }
  return true;
}

// ---- decomposition ---------------------------------------------------------

struct Summand {
  GradedModule module;  // normalized to bottom degree 0
  int shift = 0;        // original bottom degree inside the ambient module
};

struct DecomposeResult {
  std::vector<Summand> factors;
  bool certified = true;  // false when a piece was only heuristically indecomposable
};

namespace detail {

// restrict the module structure to a graded subspace given by basis columns
inline GradedModule submodule(const GradedModule& m, const std::map<int, fp::Mat>& basis) {
  const long long p = m.algebra().prime();
  std::map<int, int> dims;
  for (auto& [d, b] : basis)
    if (b.cols() > 0) dims[d] = b.cols();
  std::map<int, std::vector<fp::Mat>> act;
  for (auto& [d, nd] : dims) {
    std::vector<fp::Mat> mats;
    for (int i = 0; i < m.algebra().rank(); ++i) {
      auto tgt = basis.find(d + 2);
      int td = tgt == basis.end() ? 0 : tgt->second.cols();
      fp::Mat img = m.action(i, d) * basis.at(d);
      if (td == 0) {
        if (!img.is_zero()) throw hard_error("submodule: image escapes the subspace");
        mats.push_back(fp::Mat(0, nd, p));
      } else {
        mats.push_back(tgt->second.solve(img));
      }
    }
    act[d] = std::move(mats);
  }
  return raw_module(m.algebra(), std::move(dims), std::move(act));
}

// Fitting split along a degree-0 endomorphism power: M = ker phi^N + im phi^N
inline std::optional<std::pair<GradedModule, GradedModule>> fitting_split(const GradedModule& m,
                                                                          const HomMap& phi) {
  const int N = m.total_dim();
  std::map<int, fp::Mat> kerb, imb;
  int kdim = 0, idim = 0;
  for (auto& [d, nd] : m.dims()) {
    fp::Mat psi = phi.at(d).pow(N);
    fp::Mat kb = psi.kernel();
    fp::Mat ib = psi.column_space();
    kdim += kb.cols();
    idim += ib.cols();
    kerb[d] = std::move(kb);
    imb[d] = std::move(ib);
  }
  if (kdim == 0 || idim == 0) return std::nullopt;
  if (kdim + idim != m.total_dim()) throw hard_error("fitting split: kernel and image do not complement");
  return std::make_pair(submodule(m, kerb), submodule(m, imb));
}

// split along an idempotent e: M = im(e) + ker(e)
inline std::pair<GradedModule, GradedModule> idempotent_split(const GradedModule& m, const HomMap& e) {
  std::map<int, fp::Mat> imb, kerb;
  for (auto& [d, nd] : m.dims()) {
    imb[d] = e.at(d).column_space();
    kerb[d] = e.at(d).kernel();
  }
  return {submodule(m, imb), submodule(m, kerb)};
}

inline long long pow_ll(long long b, int e, long long cap) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    if (r > cap) return cap + 1;
  }
  return r;
}

// enumerate End_0 exhaustively for idempotents; returns a nontrivial one if
// any exists. Only called when p^dim is within budget.
inline std::optional<HomMap> find_idempotent_exhaustive(const GradedModule& m,
                                                        const std::vector<HomMap>& end_basis) {
  const long long p = m.algebra().prime();
  const int n = static_cast<int>(end_basis.size());
  HomMap id = hom_identity(m);
  std::vector<i64> coeffs(n, 0);
  // odometer over F_p^n, skipping 0
  while (true) {
    int i = 0;
    while (i < n && coeffs[i] == p - 1) coeffs[i++] = 0;
    if (i == n) break;
    ++coeffs[i];
    HomMap e = hom_combine(end_basis, coeffs);
    if (hom_is_zero(e) || hom_equal(e, id)) continue;
    if (hom_equal(hom_compose0(e, e), e)) return e;
  }
  return std::nullopt;
}

}  // namespace detail

// Indecomposability certification: exhaustive idempotent solve when the
// search space p^(dim End_0) is small, otherwise give up after the trial
// budget and flag the result.
inline DecomposeResult decompose(const GradedModule& m, std::uint64_t seed,
                                 int trials = 200, long long exhaustive_budget = 1 << 20) {
  DecomposeResult res;
  if (m.is_zero()) return res;
  const long long p = m.algebra().prime();
  Rng rng(seed ^ 0x6d6f746b69740a01ULL);

  std::vector<GradedModule> work{m};
  while (!work.empty()) {
    GradedModule cur = std::move(work.back());
    work.pop_back();
    std::vector<HomMap> e0 = end0_basis(cur);
    const int n = static_cast<int>(e0.size());
    if (n <= 1) {
      // End_0 = k . id: indecomposable, certified
      int b = cur.min_degree();
      res.factors.push_back({cur.shifted(-b), b});
      continue;
    }
    bool split_done = false;
    for (int t = 0; t < trials && !split_done; ++t) {
      std::vector<i64> coeffs(n);
      for (int i = 0; i < n; ++i) coeffs[i] = rng.below(p);
      HomMap phi = hom_combine(e0, coeffs);
      for (i64 c = 0; c < p && !split_done; ++c) {
        HomMap cand = c == 0 ? phi : hom_add(phi, hom_scale(hom_identity(cur), p - c));
        auto split = detail::fitting_split(cur, cand);
        if (split) {
          work.push_back(std::move(split->first));
          work.push_back(std::move(split->second));
          split_done = true;
        }
      }
    }
    if (split_done) continue;
    if (detail::pow_ll(p, n, exhaustive_budget) <= exhaustive_budget) {
      auto e = detail::find_idempotent_exhaustive(cur, e0);
      if (e) {
        auto [a, b] = detail::idempotent_split(cur, *e);
        work.push_back(std::move(a));
        work.push_back(std::move(b));
      } else {
        int b = cur.min_degree();
        res.factors.push_back({cur.shifted(-b), b});
      }
    } else {
      int b = cur.min_degree();
      res.factors.push_back({cur.shifted(-b), b});
      res.certified = false;
    }
  }
  std::sort(res.factors.begin(), res.factors.end(), [](const Summand& a, const Summand& b) {
    if (a.shift != b.shift) return a.shift < b.shift;
    auto ga = a.module.gdim(), gb = b.module.gdim();
    if (!(ga == gb)) return ga < gb;
    return false;
  });
  return res;
}

struct IsoResult {
  bool isomorphic = false;
  bool certified = true;
};

// isomorphism of graded modules: fingerprint pre-filter, then search for an
// invertible degree-0 hom (seeded random phase, exhaustive fallback when the
// coefficient space is small)
inline IsoResult is_isomorphic(const GradedModule& m, const GradedModule& n, std::uint64_t seed,
                               int trials = 64, long long exhaustive_budget = 1 << 20) {
  if (&m.algebra() != &n.algebra()) throw precondition_error("is_isomorphic: different algebras");
  if (!(m.gdim() == n.gdim())) return {false, true};
  if (m.is_zero()) return {true, true};
  const long long p = m.algebra().prime();
  std::vector<HomMap> basis = hom_graded_shift(m, n, 0);
  if (basis.empty()) return {false, true};
  const int nb = static_cast<int>(basis.size());
  Rng rng(seed ^ 0x69736f6d6f726bULL);
  for (int t = 0; t < trials; ++t) {
    std::vector<i64> coeffs(nb);
    for (int i = 0; i < nb; ++i) coeffs[i] = rng.below(p);
    if (hom_invertible(hom_combine(basis, coeffs), m, n)) return {true, true};
  }
  if (detail::pow_ll(p, nb, exhaustive_budget) <= exhaustive_budget) {
    std::vector<i64> coeffs(nb, 0);
    while (true) {
      int i = 0;
      while (i < nb && coeffs[i] == p - 1) coeffs[i++] = 0;
      if (i == nb) break;
      ++coeffs[i];
      if (hom_invertible(hom_combine(basis, coeffs), m, n)) return {true, true};
    }
    return {false, true};
  }
  return {false, false};  // inconclusive: flagged
}

// locality of End_0: no idempotents besides 0 and 1. Exhaustive when small;
// otherwise reduce to nilpotency of the bottom-degree augmentation ideal
// (valid whenever the bottom graded piece is one dimensional).
struct LocalityReport {
  bool local = false;
  bool certified = false;
  std::string method;
};

namespace detail {

// flatten a degree-0 endomorphism into one coordinate row over F_p
inline std::vector<i64> hom_flatten(const HomMap& f) {
  std::vector<i64> v;
  for (auto& [d, mat] : f)
    for (int i = 0; i < mat.rows(); ++i)
      for (int j = 0; j < mat.cols(); ++j) v.push_back(mat(i, j));
  return v;
}

// reduce a list of homs to a linearly independent subset
inline std::vector<HomMap> hom_echelon(const std::vector<HomMap>& homs, long long p) {
  if (homs.empty()) return {};
  std::vector<HomMap> out;
  std::vector<std::vector<i64>> flat;
  for (auto& h : homs) flat.push_back(hom_flatten(h));
  const int cols = static_cast<int>(flat[0].size());
  fp::Mat mat(static_cast<int>(flat.size()), cols, p);
  for (size_t r = 0; r < flat.size(); ++r)
    for (int c = 0; c < cols; ++c) mat(static_cast<int>(r), c) = flat[r][c];
  // independent rows = pivot rows of the transpose-rref trick
  fp::Mat probe(0, cols, p);
  for (size_t r = 0; r < flat.size(); ++r) {
    fp::Mat row(1, cols, p);
    for (int c = 0; c < cols; ++c) row(0, c) = flat[r][c];
    fp::Mat cand = fp::Mat::hcat(probe.transpose(), row.transpose()).transpose();
    if (cand.rank() > probe.rows()) {
      probe = std::move(cand);
      out.push_back(homs[r]);
    }
  }
  return out;
}

}  // namespace detail

inline LocalityReport end0_is_local(const GradedModule& m, long long exhaustive_budget = 1 << 20) {
  std::vector<HomMap> e0 = end0_basis(m);
  const long long p = m.algebra().prime();
  const int n = static_cast<int>(e0.size());
  if (n == 0) return {false, true, "empty"};
  if (detail::pow_ll(p, n, exhaustive_budget) <= exhaustive_budget) {
    auto e = detail::find_idempotent_exhaustive(m, e0);
    return {!e.has_value(), true, "exhaustive"};
  }
  if (m.dim(m.min_degree()) != 1) return {false, false, "inconclusive"};
  // I = {phi : phi == 0 on the bottom line} is a two-sided ideal of codim 1;
  // End_0 is local iff I is nilpotent
  const int bottom = m.min_degree();
  std::vector<HomMap> ideal;
  HomMap id = hom_identity(m);
  for (auto& f : e0) {
    i64 c = f.at(bottom)(0, 0);
    HomMap g = c == 0 ? f : hom_add(f, hom_scale(id, p - c));
    if (!hom_is_zero(g)) ideal.push_back(g);
  }
  ideal = detail::hom_echelon(ideal, p);
  std::vector<HomMap> layer = ideal;
  for (int step = 0; step < n + 1; ++step) {
    if (layer.empty()) return {true, true, "nil-ideal"};
    std::vector<HomMap> next;
    for (auto& a : layer)
      for (auto& b : ideal) {
        HomMap prod = hom_compose0(a, b);
        if (!hom_is_zero(prod)) next.push_back(prod);
      }
    layer = detail::hom_echelon(next, p);
  }
  return {false, true, "nil-ideal"};  // ideal not nilpotent: a nontrivial idempotent exists
}

// cached indecomposable Soergel module, normalized to bottom degree 0;
// the fingerprint is (graded dimension, graded End-dimension sequence)
struct IndecompRecord {
  std::vector<int> word;  // canonical word of the labelling Weyl element
  long long prime = 0;
  GradedModule module;
  Laurent gdim;                 // degree-2 units
  std::map<int, int> end_dims;  // shift -> dim Hom_shift(D, D)
};

inline IndecompRecord make_record(std::vector<int> word, long long prime, const GradedModule& module) {
  IndecompRecord rec;
  rec.word = std::move(word);
  rec.prime = prime;
  rec.module = module;
  rec.gdim = module.gdim();
  for (auto& [k, basis] : hom_graded(module, module)) rec.end_dims[k] = static_cast<int>(basis.size());
  const int len = static_cast<int>(rec.word.size());
  if (module.min_degree() != 0 || module.dim(0) != 1)
    throw hard_error("indecomposable record: bottom degree not normalized to a line");
  if (!(rec.gdim == rec.gdim.bar() * Laurent::mono(len)))
    throw hard_error("indecomposable record: graded dimension not palindromic of width " +
                     std::to_string(2 * len));
  return rec;
}

// ---- bounded complexes and homotopy Homs ----------------------------------

class ModuleComplex {
public:
  ModuleComplex(int first_position, std::vector<GradedModule> entries, std::vector<HomMap> differentials)
      : first_(first_position), entries_(std::move(entries)), diff_(std::move(differentials)) {
    if (!entries_.empty() && diff_.size() + 1 != entries_.size())
      throw precondition_error("module complex: need one differential between consecutive entries");
    for (size_t i = 0; i + 1 < entries_.size(); ++i) {
      // differential must be a degree-0 module map
      for (auto& [d, nd] : entries_[i].dims()) {
        fp::Mat dm = block(diff_[i], entries_[i], entries_[i + 1], d);
        for (int g = 0; g < entries_[i].algebra().rank(); ++g) {
          fp::Mat lhs = block(diff_[i], entries_[i], entries_[i + 1], d + 2) * entries_[i].action(g, d);
          fp::Mat rhs = entries_[i + 1].action(g, d) * dm;
          if (!(lhs == rhs)) throw precondition_error("module complex: differential is not C-linear");
        }
      }
    }
    for (size_t i = 0; i + 2 < entries_.size(); ++i)
      for (auto& [d, nd] : entries_[i].dims()) {
        fp::Mat sq = block(diff_[i + 1], entries_[i + 1], entries_[i + 2], d) *
                     block(diff_[i], entries_[i], entries_[i + 1], d);
        if (!sq.is_zero()) throw precondition_error("module complex: differential does not square to zero");
      }
  }

  int first() const { return first_; }
  int last() const { return first_ + static_cast<int>(entries_.size()) - 1; }
  const GradedModule& entry_abs(int pos) const { return entries_[pos - first_]; }
  bool has(int pos) const { return pos >= first_ && pos <= last(); }
  const HomMap& differential(int pos) const { return diff_[pos - first_]; }  // pos -> pos+1

  static ModuleComplex single(const GradedModule& m, int position = 0) {
    return ModuleComplex(position, {m}, {});
  }

  static fp::Mat block(const HomMap& f, const GradedModule& src, const GradedModule& dst, int d) {
    auto it = f.find(d);
    if (it != f.end()) return it->second;
    return fp::Mat(dst.dim(d), src.dim(d), src.algebra().prime());
  }

private:
  int first_;
  std::vector<GradedModule> entries_;
  std::vector<HomMap> diff_;
};

// dim of degree-a homotopy classes of maps of complexes, computed as H^a of
// the total Hom complex assembled from degree-0 graded Homs
inline int hom_homotopy(const ModuleComplex& x, const ModuleComplex& y, int a) {
  struct Piece {
    int i;  // x position
    std::vector<HomMap> basis;
  };
  auto hom_basis_at = [&](int n) {
    std::vector<Piece> out;
    for (int i = x.first(); i <= x.last(); ++i) {
      if (!y.has(i + n)) continue;
      auto b = hom_graded_shift(x.entry_abs(i), y.entry_abs(i + n), 0);
      if (!b.empty()) out.push_back({i, std::move(b)});
    }
    return out;
  };
  auto dim_of = [](const std::vector<Piece>& ps) {
    int t = 0;
    for (auto& p : ps) t += static_cast<int>(p.basis.size());
    return t;
  };

  std::vector<Piece> hom_a = hom_basis_at(a);
  std::vector<Piece> hom_prev = hom_basis_at(a - 1);
  std::vector<Piece> hom_next = hom_basis_at(a + 1);

  const long long p = [&]() -> long long {
    if (x.first() <= x.last()) return x.entry_abs(x.first()).algebra().prime();
    return 2;
  }();

  // delta^n(f)_i = d_Y o f_i - (-1)^n f_{i+1} o d_X, expressed against the
  // target hom basis by solving the linear system coordinate-wise
  auto delta_matrix = [&](const std::vector<Piece>& src, const std::vector<Piece>& dst, int n) {
    // coordinates of a HomMap family in the dst basis
    int dst_dim = dim_of(dst);
    int src_dim = dim_of(src);
    fp::Mat mat(dst_dim, src_dim, p);
    int col = 0;
    for (auto& piece : src) {
      int i = piece.i;
      for (auto& f : piece.basis) {
        // image component at x-position j lives in Hom(X_j, Y_{j+n+1})
        std::map<int, HomMap> image;
        // d_Y o f at position i
        if (y.has(i + n) && y.has(i + n + 1)) {
          HomMap comp;
          for (auto& [d, nd] : x.entry_abs(i).dims()) {
            fp::Mat dy = ModuleComplex::block(y.differential(i + n), y.entry_abs(i + n), y.entry_abs(i + n + 1), d);
            comp[d] = dy * ModuleComplex::block(f, x.entry_abs(i), y.entry_abs(i + n), d);
          }
          image[i] = std::move(comp);
        }
        // -(-1)^n f o d_X at position i-1
        if (x.has(i - 1) && y.has(i + n)) {
          HomMap comp;
          for (auto& [d, nd] : x.entry_abs(i - 1).dims()) {
            fp::Mat dx = ModuleComplex::block(x.differential(i - 1), x.entry_abs(i - 1), x.entry_abs(i), d);
            fp::Mat fm = ModuleComplex::block(f, x.entry_abs(i), y.entry_abs(i + n), d);
            comp[d] = (fm * dx).scaled(n % 2 == 0 ? p - 1 : 1);  // -(-1)^n
          }
          auto it = image.find(i - 1);
          if (it == image.end()) image[i - 1] = std::move(comp);
          else it->second = hom_add(it->second, comp);
        }
        // express against dst basis: dst pieces are echelon-independent homs;
        // solve small linear systems per piece
        int row_off = 0;
        for (auto& dpiece : dst) {
          auto itimg = image.find(dpiece.i);
          if (itimg != image.end() && !hom_is_zero(itimg->second)) {
            // flatten basis and target
            std::vector<int> ds;
            int len = 0;
            for (auto& [d, blk] : itimg->second) {
              ds.push_back(d);
              len += blk.rows() * blk.cols();
            }
            fp::Mat bmat(len, static_cast<int>(dpiece.basis.size()), p);
            fp::Mat tvec(len, 1, p);
            int pos = 0;
            for (int dd : ds) {
              const fp::Mat& tb = itimg->second.at(dd);
              for (int rr = 0; rr < tb.rows(); ++rr)
                for (int cc = 0; cc < tb.cols(); ++cc) {
                  tvec(pos, 0) = tb(rr, cc);
                  for (size_t bb = 0; bb < dpiece.basis.size(); ++bb) {
                    auto itb = dpiece.basis[bb].find(dd);
                    bmat(pos, static_cast<int>(bb)) = itb == dpiece.basis[bb].end() ? 0 : itb->second(rr, cc);
                  }
                  ++pos;
                }
            }
            fp::Mat sol = bmat.solve(tvec);
            for (int bb = 0; bb < sol.rows(); ++bb) mat(row_off + bb, col) = sol(bb, 0);
          }
          row_off += static_cast<int>(dpiece.basis.size());
        }
        ++col;
      }
    }
    return mat;
  };

  fp::Mat d_a = delta_matrix(hom_a, hom_next, a);
  fp::Mat d_prev = delta_matrix(hom_prev, hom_a, a - 1);
  int ker = dim_of(hom_a) - d_a.rank();
  int im = d_prev.rank();
  return ker - im;
}

}  // namespace motkit::smod
