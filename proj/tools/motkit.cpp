// motkit command line: exact computations around coinvariant algebras,
// Soergel modules, the p-canonical basis, cellular motivic cohomology, and
// Milnor K-theory of small finite fields. All outputs are JSON by default
// and byte-identical across runs with the same inputs and seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "motkit/cache.hpp"
#include "motkit/cellmot.hpp"
#include "motkit/coinv.hpp"
#include "motkit/coxeter.hpp"
#include "motkit/errors.hpp"
#include "motkit/hecke.hpp"
#include "motkit/laurent.hpp"
#include "motkit/milnork.hpp"
#include "motkit/smod.hpp"
#include "motkit/soergel.hpp"

using nlohmann::json;
using namespace motkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitHardFailure = 1;
constexpr int kExitRefused = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string type;
  int rank = 0;
  long long prime = 0;
  unsigned long long seed = 0;
  std::string cache;
  std::string format = "json";
  bool force = false;
};

json laurent_pairs(const laurent::Laurent& f) {
  json a = json::array();
  for (auto& [d, c] : f.terms()) a.push_back({d, c});
  return a;
}

int max_generator(const std::string& text) {
  int mx = 0;
  size_t pos = 0;
  while ((pos = text.find('s', pos)) != std::string::npos) {
    size_t end = pos + 1;
    while (end < text.size() && isdigit(text[end])) ++end;
    if (end > pos + 1) mx = std::max(mx, std::stoi(text.substr(pos + 1, end - pos - 1)));
    pos = end;
  }
  return mx;
}

// --type/--rank, with type A and the rank inferred from the word when omitted
coxeter::RootDatum resolve_datum(const Options& opt, const std::string& word_text = "") {
  char letter = opt.type.empty() ? 'A' : opt.type[0];
  int rank = opt.rank;
  if (rank == 0) {
    int need = max_generator(word_text);
    if (opt.type.empty() && need == 0)
      throw precondition_error("specify --type and --rank (or a word to infer them from)");
    rank = std::max(need, 1);
  }
  return coxeter::RootDatum::build(letter, rank);
}

long long require_prime(const Options& opt) {
  if (opt.prime == 0) throw precondition_error("this subcommand requires --prime");
  if (!fp::is_prime(opt.prime)) throw precondition_error(std::to_string(opt.prime) + " is not prime");
  return opt.prime;
}

std::optional<std::filesystem::path> cache_dir(const Options& opt) {
  if (!opt.cache.empty()) return std::filesystem::path(opt.cache);
  if (const char* env = std::getenv("MOTKIT_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void render_table(const json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object() || (it->is_array() && it->size() > 8)) {
        os << pad << it.key() << ":\n";
        render_table(*it, os, indent + 2);
      } else {
        os << pad << it.key() << ": " << it->dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (auto& e : j) os << pad << e.dump() << "\n";
  } else {
    os << pad << j.dump() << "\n";
  }
}

void emit(const Options& opt, const json& j) {
  if (opt.format == "table") render_table(j, std::cout);
  else std::cout << j.dump(2) << "\n";
}

json weyl_payload(const Options& opt, bool list, bool /*poincare*/, const std::string& reduced_of) {
  coxeter::RootDatum datum = resolve_datum(opt, reduced_of);
  coxeter::WeylGroup group(datum);
  json j;
  j["schema"] = 1;
  j["type"] = std::string(1, datum.letter());
  j["rank"] = datum.rank();
  j["lattice"] = "simply_connected";
  j["order"] = group.order();
  j["coxeter_number"] = datum.coxeter_number();
  j["positive_roots"] = datum.num_positive_roots();
  j["lengths"] = group.length_histogram();
  if (list) {
    json words = json::array();
    for (auto& w : group.elements()) words.push_back(w.word_string());
    j["words"] = std::move(words);
  }
  if (!reduced_of.empty()) {
    coxeter::WeylElt w = coxeter::WeylElt::from_word(datum, coxeter::parse_word(datum, reduced_of));
    json words = json::array();
    for (auto& rw : coxeter::reduced_words(w)) {
      std::string s;
      for (size_t i = 0; i < rw.size(); ++i) s += (i ? " s" : "s") + std::to_string(rw[i] + 1);
      words.push_back(rw.empty() ? "e" : s);
    }
    j["element"] = w.word_string();
    j["words"] = std::move(words);
  }
  return j;
}

json hecke_map_payload(const coxeter::WeylGroup& group, const hecke::HeckeElt& h) {
  json coeffs = json::object();
  for (auto& [w, c] : h.terms()) coeffs[group.element(w).word_string()] = laurent_pairs(c);
  return coeffs;
}

json coinv_payload(const Options& opt) {
  coxeter::RootDatum datum = resolve_datum(opt);
  coinv::CoinvariantAlgebra C(datum, require_prime(opt));
  json j;
  j["schema"] = 1;
  j["type"] = std::string(1, datum.letter());
  j["rank"] = datum.rank();
  j["lattice"] = "simply_connected";
  j["prime"] = C.prime();
  j["prime_ok"] = C.prime_ok();
  j["torsion_primes"] = datum.torsion_primes();
  json dims = json::array();
  for (int d = 0; d <= C.top_degree(); ++d) dims.push_back(C.dim(d));
  j["dims"] = std::move(dims);
  j["total_dim"] = C.total_dim();
  j["poincare"] = laurent_pairs(C.poincare());
  const auto& hist = C.weyl_length_histogram();
  int weyl_order = 0;
  for (int h : hist) weyl_order += h;
  j["weyl_order"] = weyl_order;
  j["weyl_agreement"] = C.total_dim() == weyl_order;
  return j;
}

json module_payload(const smod::GradedModule& m) {
  json j;
  json dims = json::array();
  for (auto& [d, n] : m.dims()) dims.push_back({d, n});
  j["dims"] = std::move(dims);
  j["gdim"] = laurent_pairs(m.gdim());
  j["total_dim"] = m.total_dim();
  return j;
}

json decmat_payload(const Options& opt, bool simples) {
  coxeter::RootDatum datum = resolve_datum(opt);
  coxeter::WeylGroup group(datum);
  coinv::CoinvariantAlgebra C(datum, require_prime(opt));
  soergel::SoergelContext ctx(group, C, opt.seed, cache_dir(opt));
  json j;
  j["schema"] = 1;
  j["type"] = std::string(1, datum.letter());
  j["rank"] = datum.rank();
  j["prime"] = C.prime();
  if (simples) {
    auto sm = ctx.simple_multiplicities(opt.force);
    j["labels"] = sm.labels;
    j["multiplicities"] = sm.multiplicities;
    j["inverse"] = sm.inverse;
    j["assumptions_ok"] = sm.assumptions_ok;
    if (!sm.assumptions_ok) j["warning"] = ctx.assumption_message();
  } else {
    auto dm = ctx.decomposition_matrix(opt.force);
    j["labels"] = dm.labels;
    json entries = json::array();
    for (auto& row : dm.entries) {
      json r = json::array();
      for (auto& e : row) r.push_back(laurent_pairs(e));
      entries.push_back(std::move(r));
    }
    j["entries"] = std::move(entries);
    j["assumptions_ok"] = dm.assumptions_ok;
    if (!dm.assumptions_ok) j["warning"] = ctx.assumption_message();
  }
  return j;
}

json bigraded_payload(const cellmot::BigradedDims& dims) {
  json a = json::array();
  for (auto& [ji, c] : dims) a.push_back({ji.first, ji.second, c});
  return a;
}

cellmot::StrataPoset poset_from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw precondition_error("cannot open poset file " + path);
  json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw precondition_error("cannot parse poset file " + path + ": " + e.what());
  }
  std::vector<cellmot::Stratum> strata;
  for (auto& s : j.at("strata")) strata.push_back({s.at("label").get<std::string>(), s.at("dim").get<int>()});
  std::vector<std::pair<std::string, std::string>> rels;
  if (j.contains("closure"))
    for (auto& e : j.at("closure")) rels.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  return cellmot::StrataPoset(std::move(strata), rels);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motkit: exact combinatorics of Soergel modules, coinvariant algebras,\n"
               "cellular motivic cohomology and Milnor K-theory of finite fields"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  Options opt;
  app.add_option("--type", opt.type, "Cartan type letter A..G")->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}));
  app.add_option("--rank", opt.rank, "rank of the root system");
  app.add_option("--prime", opt.prime, "coefficient characteristic p");
  app.add_option("--seed", opt.seed, "seed for randomized decompositions (default 0)");
  app.add_option("--cache", opt.cache, "directory for the indecomposables cache (or env MOTKIT_CACHE)");
  app.add_option("--format", opt.format, "output format: json (default) or table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--force", opt.force, "print decomposition data even when standing assumptions fail");

  bool weyl_list = false, weyl_poincare = false;
  std::string weyl_reduced, element_text, word_text, poset_file, flag_type, closed_csv;
  long long mk_q = 0;
  int mk_n = -1, th_i = 0, th_j = 0, bundle_rank = 0;
  bool full_relations = false;

  CLI::App* weyl = app.add_subcommand("weyl", "Weyl group: order, lengths, words, reduced words");
  weyl->add_flag("--list", weyl_list, "list all elements by canonical word");
  weyl->add_flag("--poincare", weyl_poincare, "emit the length histogram only");
  weyl->add_option("--reduced-words", weyl_reduced, "list all reduced words of this element");

  CLI::App* kl = app.add_subcommand("kl", "Kazhdan-Lusztig basis element b_w in the standard basis");
  kl->add_option("--element", element_text, "element as a word, e.g. \"s1 s2 s1\"")->required();

  CLI::App* bschar = app.add_subcommand("bschar", "Bott-Samelson character b_{s1}...b_{sl}");
  bschar->add_option("--word", word_text, "word, e.g. \"s1 s2 s1\" (not necessarily reduced)")->required();

  CLI::App* coinv_cmd = app.add_subcommand("coinv", "coinvariant algebra dimensions and Poincare polynomial");
  bool coinv_dims = false, coinv_poincare = false;
  coinv_cmd->add_flag("--dims", coinv_dims, "dimension table only");
  coinv_cmd->add_flag("--poincare", coinv_poincare, "Poincare polynomial only");

  CLI::App* bs = app.add_subcommand("bs", "Bott-Samelson module of a word");
  bs->add_option("--word", word_text, "word, e.g. \"s1 s2 s1\"")->required();
  bs->add_flag("--full-relations", full_relations, "verify the full defining ideal acts by zero");

  CLI::App* dec = app.add_subcommand("decompose", "decompose a Bott-Samelson module into indecomposables");
  dec->add_option("--word", word_text, "word, e.g. \"s1 s2 s1\"")->required();

  CLI::App* pcan = app.add_subcommand("pcan", "p-canonical basis element in the standard basis");
  pcan->add_option("--element", element_text, "element as a reduced word")->required();

  CLI::App* decmat = app.add_subcommand("decmat", "graded decomposition matrix (P_x : M_y) of category O");
  CLI::App* simples = app.add_subcommand("simples", "ungraded multiplicities [M_y : L_x] and their inverse");

  CLI::App* cell = app.add_subcommand("cellmot", "motivic cohomology of an affinely stratified variety");
  cell->add_option("--poset", poset_file, "JSON file {strata:[{label,dim}...], closure:[[a,b]...]}");
  cell->add_option("--flag", flag_type, "flag variety of a Cartan type, e.g. A2");
  cell->add_option("--bundle", bundle_rank, "convolve with a projective bundle of this rank");
  cell->add_option("--closed", closed_csv, "comma-separated down-set of labels: run the localization check");

  CLI::App* mk = app.add_subcommand("milnork", "Milnor K-theory of a small finite field");
  mk->add_option("--q", mk_q, "prime power <= 64")->required();
  mk->add_option("--n", mk_n, "degree 0..3")->required();

  CLI::App* th = app.add_subcommand("tatehom", "Hom table between Tate objects over F_p-bar");
  th->add_option("--i", th_i, "twist of the source")->required();
  th->add_option("--j", th_j, "cohomological degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << "motkit: missing subcommand\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (weyl->parsed()) {
      emit(opt, weyl_payload(opt, weyl_list, weyl_poincare, weyl_reduced));
    } else if (kl->parsed()) {
      coxeter::RootDatum datum = resolve_datum(opt, element_text);
      coxeter::WeylGroup group(datum);
      hecke::HeckeAlgebra H(group);
      coxeter::WeylElt w = coxeter::WeylElt::from_word(datum, coxeter::parse_word(datum, element_text));
      json j{{"schema", 1}, {"type", std::string(1, datum.letter())}, {"rank", datum.rank()}};
      j["element"] = w.word_string();
      j["coeffs"] = hecke_map_payload(group, H.kl_basis(group.index_of(w)));
      emit(opt, j);
    } else if (bschar->parsed()) {
      coxeter::RootDatum datum = resolve_datum(opt, word_text);
      coxeter::WeylGroup group(datum);
      hecke::HeckeAlgebra H(group);
      json j{{"schema", 1}, {"type", std::string(1, datum.letter())}, {"rank", datum.rank()}};
      j["word"] = word_text.empty() ? "e" : word_text;
      j["coeffs"] = hecke_map_payload(group, H.bs_character(coxeter::parse_word(datum, word_text)));
      emit(opt, j);
    } else if (coinv_cmd->parsed()) {
      json j = coinv_payload(opt);
      if (coinv_dims) j.erase("poincare");
      if (coinv_poincare) j.erase("dims");
      emit(opt, j);
    } else if (bs->parsed()) {
      coxeter::RootDatum datum = resolve_datum(opt, word_text);
      coinv::CoinvariantAlgebra C(datum, require_prime(opt));
      smod::GradedModule m = smod::bott_samelson(C, coxeter::parse_word(datum, word_text),
                                                 full_relations ? smod::RelationCheck::full
                                                                : smod::RelationCheck::sampled);
      json j = module_payload(m);
      j["schema"] = 1;
      j["type"] = std::string(1, datum.letter());
      j["rank"] = datum.rank();
      j["prime"] = C.prime();
      j["word"] = word_text.empty() ? "e" : word_text;
      emit(opt, j);
    } else if (dec->parsed()) {
      coxeter::RootDatum datum = resolve_datum(opt, word_text);
      coxeter::WeylGroup group(datum);
      coinv::CoinvariantAlgebra C(datum, require_prime(opt));
      soergel::SoergelContext ctx(group, C, opt.seed, cache_dir(opt));
      auto factors = ctx.decompose_word(coxeter::parse_word(datum, word_text));
      json j{{"schema", 1}, {"type", std::string(1, datum.letter())}, {"rank", datum.rank()}};
      j["prime"] = C.prime();
      j["word"] = word_text.empty() ? "e" : word_text;
      j["seed"] = opt.seed;
      json fs = json::array();
      for (auto& [x, shift] : factors) {
        json f;
        f["summand"] = group.element(x).word_string();
        f["shift"] = shift;
        f["gdim"] = laurent_pairs(ctx.indecomposable(x).gdim);
        fs.push_back(std::move(f));
      }
      j["factors"] = std::move(fs);
      emit(opt, j);
    } else if (pcan->parsed()) {
      coxeter::RootDatum datum = resolve_datum(opt, element_text);
      coxeter::WeylGroup group(datum);
      coinv::CoinvariantAlgebra C(datum, require_prime(opt));
      soergel::SoergelContext ctx(group, C, opt.seed, cache_dir(opt));
      coxeter::WeylElt w = coxeter::WeylElt::from_word(datum, coxeter::parse_word(datum, element_text));
      json j{{"schema", 1}, {"type", std::string(1, datum.letter())}, {"rank", datum.rank()}};
      j["prime"] = C.prime();
      j["element"] = w.word_string();
      j["coeffs"] = hecke_map_payload(group, ctx.p_canonical(group.index_of(w)));
      emit(opt, j);
    } else if (decmat->parsed()) {
      emit(opt, decmat_payload(opt, false));
    } else if (simples->parsed()) {
      emit(opt, decmat_payload(opt, true));
    } else if (cell->parsed()) {
      json j{{"schema", 1}};
      std::optional<cellmot::StrataPoset> poset;
      if (!poset_file.empty()) {
        poset = poset_from_file(poset_file);
      } else if (!flag_type.empty()) {
        if (flag_type.size() < 2) throw precondition_error("--flag expects letter+rank, e.g. A2");
        coxeter::RootDatum datum = coxeter::RootDatum::build(flag_type[0], std::stoi(flag_type.substr(1)));
        coxeter::WeylGroup group(datum);
        poset = cellmot::flag_strata(group);
        j["flag"] = flag_type;
      } else {
        throw precondition_error("cellmot needs --poset FILE or --flag TYPE");
      }
      cellmot::BigradedDims dims = motivic_cohomology(*poset);
      if (bundle_rank > 0) dims = cellmot::projective_bundle(dims, bundle_rank);
      j["dims"] = bigraded_payload(dims);
      j["irreducible"] = poset->has_unique_open_stratum();
      if (!poset->has_unique_open_stratum())
        j["warning"] = "input looks reducible/disconnected; dimensions are extrapolated by additivity";
      if (!closed_csv.empty()) {
        std::set<std::string> closed;
        std::string item;
        std::istringstream is(closed_csv);
        while (std::getline(is, item, ',')) closed.insert(item);
        auto rep = cellmot::localization_check(*poset, closed);
        j["localization"] = {{"additive", rep.additive},
                             {"total", bigraded_payload(rep.total)},
                             {"open", bigraded_payload(rep.open_part)},
                             {"closed", bigraded_payload(rep.closed_part)}};
      }
      emit(opt, j);
    } else if (mk->parsed()) {
      milnork::AbGroupInvariants inv = milnork::milnor_k(mk_q, mk_n);
      json divisors = json::array();
      for (long long d : inv.divisors) divisors.push_back(d);
      for (int i = 0; i < inv.free_rank; ++i) divisors.push_back(0);  // 0 = infinite cyclic
      emit(opt, json{{"schema", 1}, {"q", mk_q}, {"n", mk_n}, {"invariants", divisors}});
    } else if (th->parsed()) {
      int dim = milnork::tate_hom(require_prime(opt), th_i, th_j);
      emit(opt, json{{"schema", 1}, {"prime", opt.prime}, {"i", th_i}, {"j", th_j}, {"dim", dim}});
    }
  } catch (const precondition_error& e) {
    std::cerr << "motkit: refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "motkit: internal failure: " << e.what() << "\n";
    return kExitHardFailure;
  }
  return kExitOk;
}
