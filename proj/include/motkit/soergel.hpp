#pragma once

// The indecomposable Soergel modules D_w, the p-canonical basis, and the
// decomposition data of the modular category O.
//
// D_w is the summand of the Bott-Samelson module of the canonical reduced
// word of w that does not occur (up to even shift) for shorter expressions;
// records are computed in length order and cached. The p-canonical basis is
// read off from the identified decompositions: a summand D_x with bottom
// degree 2k inside the module of a length-l word contributes v^{2k+l(x)-l}
// to the graded multiplicity.

#include <filesystem>
#include <optional>
#include <vector>

#include "motkit/cache.hpp"
#include "motkit/coinv.hpp"
#include "motkit/coxeter.hpp"
#include "motkit/errors.hpp"
#include "motkit/hecke.hpp"
#include "motkit/smod.hpp"

namespace motkit::soergel {

using hecke::HeckeElt;
using laurent::Laurent;
using smod::GradedModule;
using smod::IndecompRecord;

class SoergelContext {
public:
  SoergelContext(const coxeter::WeylGroup& group, const coinv::CoinvariantAlgebra& alg,
                 std::uint64_t seed = 0, std::optional<std::filesystem::path> cache_dir = std::nullopt)
      : group_(&group), alg_(&alg), hecke_(group), seed_(seed), cache_dir_(std::move(cache_dir)) {
    if (!group.datum().same_as(alg.datum()))
      throw precondition_error("Soergel context: Weyl group and coinvariant algebra disagree");
  }

  const coxeter::WeylGroup& group() const { return *group_; }
  const coinv::CoinvariantAlgebra& algebra() const { return *alg_; }
  const hecke::HeckeAlgebra& hecke() const { return hecke_; }
  long long prime() const { return alg_->prime(); }

  const IndecompRecord& indecomposable(int w) {
    ensure_records(group_->length(w));
    return records_.at(w);
  }

  // identified decomposition of the Bott-Samelson module of the canonical
  // word of w: multiset of (element, bottom shift), including D_w itself
  const std::vector<std::pair<int, int>>& bs_decomposition(int w) {
    ensure_records(group_->length(w));
    return decomps_.at(w);
  }

  // identified decomposition of the Bott-Samelson module of an arbitrary word
  std::vector<std::pair<int, int>> decompose_word(const std::vector<int>& word) {
    int l = static_cast<int>(word.size());
    ensure_records(l);  // summands have length <= l
    GradedModule bs = smod::bott_samelson(*alg_, word);
    return identify_factors(smod::decompose(bs, seed_for(word)), "BS(" + cache::word_key(word) + ")");
  }

  HeckeElt p_canonical(int w) {
    ensure_records(group_->length(w));
    auto it = pcan_.find(w);
    if (it != pcan_.end()) return it->second;
    // compute in group order (a linear extension of Bruhat)
    for (int y = 0; y <= w; ++y) {
      if (pcan_.count(y)) continue;
      if (group_->length(y) > group_->length(w)) continue;
      HeckeElt b = hecke_.bs_character(group_->element(y).word());
      const int l = group_->length(y);
      for (auto& [x, shift] : decomps_.at(y)) {
        if (x == y) continue;
        b -= pcan_.at(x).scaled(Laurent::mono(shift + group_->length(x) - l));
      }
      if (!(hecke_.bar(b) == b))
        throw hard_error("p-canonical basis: candidate for " + group_->element(y).word_string() +
                         " is not bar-invariant (multiplicity normalization bug)");
      if (!(b.coeff(y) == Laurent(1)))
        throw hard_error("p-canonical basis: coefficient of the top term of " +
                         group_->element(y).word_string() + " is not 1");
      pcan_.emplace(y, std::move(b));
    }
    return pcan_.at(w);
  }

  struct DecompositionMatrix {
    std::vector<std::string> labels;            // canonical words, group order
    std::vector<std::vector<Laurent>> entries;  // entries[y][x] = coeff of H_y in pb_x
    bool assumptions_ok = true;
  };

  // graded decomposition matrix (P_x : M_y) = ph_{y,x}(v); refuses when the
  // standing assumptions p > Coxeter number, p not a torsion prime fail
  DecompositionMatrix decomposition_matrix(bool force = false) {
    DecompositionMatrix out;
    out.assumptions_ok = assumptions_hold();
    if (!out.assumptions_ok && !force)
      throw precondition_error(assumption_message());
    const int n = group_->order();
    p_canonical(n - 1);
    for (int y = 0; y < n; ++y) out.labels.push_back(group_->element(y).word_string());
    out.entries.assign(n, std::vector<Laurent>(n));
    for (int x = 0; x < n; ++x)
      for (auto& [y, c] : pcan_.at(x).terms()) out.entries[y][x] = c;
    for (int x = 0; x < n; ++x) {
      if (!(out.entries[x][x] == Laurent(1)))
        throw hard_error("decomposition matrix: diagonal entry at " + out.labels[x] + " is not 1");
      for (int y = 0; y < n; ++y)
        if (!out.entries[y][x].is_zero() &&
            !coxeter::bruhat_leq(group_->element(y), group_->element(x)))
          throw hard_error("decomposition matrix: support of pb violates the Bruhat order");
    }
    return out;
  }

  struct SimpleMultiplicities {
    std::vector<std::string> labels;
    std::vector<std::vector<long long>> multiplicities;  // [M_y : L_x]
    std::vector<std::vector<long long>> inverse;         // columns: simples in standards
    bool assumptions_ok = true;
  };

  SimpleMultiplicities simple_multiplicities(bool force = false) {
    DecompositionMatrix dm = decomposition_matrix(force);
    const int n = static_cast<int>(dm.labels.size());
    SimpleMultiplicities out;
    out.labels = dm.labels;
    out.assumptions_ok = dm.assumptions_ok;
    out.multiplicities.assign(n, std::vector<long long>(n, 0));
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) out.multiplicities[y][x] = dm.entries[y][x].eval_one();
    // unitriangular in group order: invert by back substitution over Z
    out.inverse.assign(n, std::vector<long long>(n, 0));
    for (int j = 0; j < n; ++j) {
      for (int i = n - 1; i >= 0; --i) {
        long long v = (i == j) ? 1 : 0;
        for (int k = i + 1; k < n; ++k) v -= out.multiplicities[i][k] * out.inverse[k][j];
        out.inverse[i][j] = v;
      }
    }
    return out;
  }

  bool assumptions_hold() const {
    if (prime() <= group_->datum().coxeter_number()) return false;
    for (long long q : group_->datum().torsion_primes())
      if (q == prime()) return false;
    return true;
  }

  std::string assumption_message() const {
    return "category O decomposition data requires p bigger than the Coxeter number (" +
           std::to_string(group_->datum().coxeter_number()) + ") and p not a torsion prime of " +
           group_->datum().type_string() + "; got p=" + std::to_string(prime()) +
           " (use force to print anyway)";
  }

private:
  std::uint64_t seed_for(const std::vector<int>& word) const {
    std::uint64_t h = seed_ ^ 0xcbf29ce484222325ULL;
    for (int g : word) h = (h ^ static_cast<std::uint64_t>(g + 1)) * 0x100000001b3ULL;
    return h;
  }

  // compute (or load) records for every element of length <= maxlen, in order
  void ensure_records(int maxlen) {
    for (int w = 0; w < group_->order(); ++w) {
      if (group_->length(w) > maxlen) break;
      if (records_.count(w)) continue;
      compute_record(w);
    }
  }

  void compute_record(int w) {
    const std::vector<int>& word = group_->element(w).word();
    if (cache_dir_) {
      auto rec = cache::load_record(*cache_dir_, *alg_, word);
      if (rec) {
        // the decomposition multiset is still needed for the p-canonical basis
        GradedModule bs = smod::bott_samelson(*alg_, word);
        records_.emplace(w, std::move(*rec));
        decomps_.emplace(w, identify_factors(smod::decompose(bs, seed_for(word)),
                                             "BS(" + cache::word_key(word) + ")"));
        return;
      }
    }
    GradedModule bs = smod::bott_samelson(*alg_, word);
    auto dec = smod::decompose(bs, seed_for(word));
    auto identified = identify_with_new(dec, w);
    decomps_.emplace(w, std::move(identified));
    if (cache_dir_) cache::store_record(*cache_dir_, group_->datum(), records_.at(w));
  }

  // match each summand against the cached records; all summands must be known
  std::vector<std::pair<int, int>> identify_factors(const smod::DecomposeResult& dec,
                                                    const std::string& what) {
    if (!dec.certified)
      throw hard_error("decomposition of " + what + " exceeded the certification budget");
    std::vector<std::pair<int, int>> out;
    for (const smod::Summand& f : dec.factors) {
      int found = match_record(f.module);
      if (found < 0)
        throw hard_error("decomposition of " + what + ": a summand matches no cached indecomposable");
      out.emplace_back(found, f.shift);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // identification allowing exactly one new isomorphism class, which becomes D_w
  std::vector<std::pair<int, int>> identify_with_new(const smod::DecomposeResult& dec, int w) {
    const std::string what = "BS(" + cache::word_key(group_->element(w).word()) + ")";
    if (!dec.certified)
      throw hard_error("decomposition of " + what + " exceeded the certification budget");
    std::vector<std::pair<int, int>> out;
    std::vector<const smod::Summand*> unmatched;
    for (const smod::Summand& f : dec.factors) {
      int found = match_record(f.module);
      if (found >= 0) out.emplace_back(found, f.shift);
      else unmatched.push_back(&f);
    }
    if (unmatched.size() != 1) {
      std::string hint = "; this is a bug";
      for (long long q : group_->datum().torsion_primes())
        if (q == prime())
          hint = "; p=" + std::to_string(prime()) + " is a torsion prime of " +
                 group_->datum().type_string() +
                 ", where the labelled classification can genuinely collapse";
      throw hard_error("decomposition of " + what + ": found " + std::to_string(unmatched.size()) +
                       " new isomorphism classes, expected exactly one" + hint);
    }
    const smod::Summand& fresh = *unmatched.front();
    smod::LocalityReport loc = smod::end0_is_local(fresh.module);
    if (!loc.certified) throw hard_error("locality of End_0(D_" + cache::word_key(group_->element(w).word()) +
                                         ") could not be certified");
    if (!loc.local)
      throw hard_error("End_0 of the new summand of " + what + " has a nontrivial idempotent");
    records_.emplace(w, smod::make_record(group_->element(w).word(), prime(), fresh.module));
    out.emplace_back(w, fresh.shift);
    std::sort(out.begin(), out.end());
    return out;
  }

  int match_record(const GradedModule& candidate) {
    for (auto& [x, rec] : records_) {
      if (!(rec.gdim == candidate.gdim())) continue;
      smod::IsoResult iso = smod::is_isomorphic(candidate, rec.module, seed_);
      if (!iso.certified) throw hard_error("isomorphism test inconclusive while matching summands");
      if (iso.isomorphic) return x;
    }
    return -1;
  }

  const coxeter::WeylGroup* group_;
  const coinv::CoinvariantAlgebra* alg_;
  hecke::HeckeAlgebra hecke_;
  std::uint64_t seed_;
  std::optional<std::filesystem::path> cache_dir_;
  std::map<int, IndecompRecord> records_;
  std::map<int, std::vector<std::pair<int, int>>> decomps_;
  std::map<int, HeckeElt> pcan_;
};

}  // namespace motkit::soergel
