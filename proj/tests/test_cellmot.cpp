#include <catch2/catch_amalgamated.hpp>

#include "motkit/cellmot.hpp"

using namespace motkit;
using cellmot::BigradedDims;
using cellmot::StrataPoset;
using cellmot::Stratum;

namespace {

StrataPoset point() { return StrataPoset({{"pt", 0}}, {}); }

StrataPoset flag_poset(char letter, int rank) {
  coxeter::RootDatum datum = coxeter::RootDatum::build(letter, rank);
  coxeter::WeylGroup group(datum);
  return cellmot::flag_strata(group);
}

StrataPoset projective_line() { return StrataPoset({{"pt", 0}, {"cell", 1}}, {{"pt", "cell"}}); }

// chain of n cells of dimensions 0..n-1 (P^{n-1} with its standard cells)
StrataPoset cell_chain(int n) {
  std::vector<Stratum> strata;
  std::vector<std::pair<std::string, std::string>> rels;
  for (int i = 0; i < n; ++i) strata.push_back({"c" + std::to_string(i), i});
  for (int i = 0; i + 1 < n; ++i) rels.emplace_back("c" + std::to_string(i), "c" + std::to_string(i + 1));
  return StrataPoset(std::move(strata), rels);
}

}  // namespace

TEST_CASE("motivic cohomology of basic posets") {
  CHECK(cellmot::motivic_cohomology(point()) == BigradedDims{{{0, 0}, 1}});
  CHECK(cellmot::motivic_cohomology(projective_line()) == BigradedDims{{{0, 0}, 1}, {{2, 1}, 1}});
}

TEST_CASE("flag strata of small types") {
  auto a1 = flag_poset('A', 1);
  CHECK(a1.size() == 2);
  CHECK(a1.top_dimension() == 1);

  auto a2 = flag_poset('A', 2);
  CHECK(a2.size() == 6);
  CHECK(cellmot::motivic_cohomology(a2) ==
        BigradedDims{{{0, 0}, 1}, {{2, 1}, 2}, {{4, 2}, 2}, {{6, 3}, 1}});

  auto b2 = flag_poset('B', 2);
  CHECK(b2.size() == 8);
  CHECK(b2.top_dimension() == 4);
  CHECK(b2.has_unique_open_stratum());
}

TEST_CASE("projective bundles") {
  BigradedDims pt = cellmot::motivic_cohomology(point());
  CHECK(cellmot::projective_bundle(pt, 1) == pt);
  CHECK(cellmot::projective_bundle(pt, 2) == cellmot::motivic_cohomology(projective_line()));
  for (int n = 1; n <= 4; ++n)
    CHECK(cellmot::projective_bundle(pt, n) == cellmot::motivic_cohomology(cell_chain(n)));

  BigradedDims p1 = cellmot::motivic_cohomology(projective_line());
  CHECK(cellmot::projective_bundle(p1, 2) ==
        BigradedDims{{{0, 0}, 1}, {{2, 1}, 2}, {{4, 2}, 1}});
  CHECK(cellmot::projective_bundle(p1, 1) == p1);

  CHECK_THROWS_AS(cellmot::projective_bundle(pt, 0), precondition_error);
}

TEST_CASE("localization splits the dimension tables") {
  auto p1 = projective_line();
  auto none = cellmot::localization_check(p1, {});
  CHECK(none.additive);
  CHECK(none.open_part == none.total);

  auto rep = cellmot::localization_check(p1, {"pt"});
  CHECK(rep.additive);
  CHECK(rep.closed_part == BigradedDims{{{0, 0}, 1}});
  CHECK(rep.open_part == BigradedDims{{{2, 1}, 1}});

  // the complement of the big cell in the A2 flag poset is closed
  auto a2 = flag_poset('A', 2);
  std::set<std::string> closed;
  for (auto& s : a2.strata())
    if (s.dim < a2.top_dimension()) closed.insert(s.label);
  auto rep2 = cellmot::localization_check(a2, closed);
  CHECK(rep2.additive);
  CHECK(rep2.open_part == BigradedDims{{{6, 3}, 1}});

  // every down-set works
  const int n = a2.size();
  int checked = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::set<std::string> sel;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) sel.insert(a2.strata()[i].label);
    if (!a2.is_down_set(sel)) continue;
    ++checked;
    CHECK(cellmot::localization_check(a2, sel).additive);
  }
  CHECK(checked > 2);

  CHECK_THROWS_AS(cellmot::localization_check(p1, {"cell"}), precondition_error);
}

TEST_CASE("poset validation") {
  // closure order must strictly increase dimension
  CHECK_THROWS_AS(StrataPoset({{"a", 1}, {"b", 1}}, {{"a", "b"}}), precondition_error);
  CHECK_THROWS_AS(StrataPoset({{"a", 0}, {"b", 1}}, {{"b", "a"}}), precondition_error);
  // duplicate labels
  CHECK_THROWS_AS(StrataPoset({{"a", 0}, {"a", 1}}, {}), precondition_error);
  // negative dimension
  CHECK_THROWS_AS(StrataPoset({{"a", -1}}, {}), precondition_error);
  // antisymmetry is implied by the dimension check, but cycles through equal
  // dims are caught either way
  CHECK_THROWS_AS(StrataPoset({{"a", 0}, {"b", 1}}, {{"a", "b"}, {"b", "a"}}),
                  precondition_error);
  // unknown label in a relation
  CHECK_THROWS_AS(StrataPoset({{"a", 0}}, {{"a", "zz"}}), precondition_error);
}

TEST_CASE("disconnected inputs are flagged") {
  StrataPoset two_points({{"p", 0}, {"q", 0}}, {});
  CHECK_FALSE(two_points.has_unique_open_stratum());
  CHECK(cellmot::motivic_cohomology(two_points) == BigradedDims{{{0, 0}, 2}});
  CHECK(projective_line().has_unique_open_stratum());
}
