#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "motkit/intmat.hpp"
#include "motkit/milnork.hpp"

using namespace motkit;
using milnork::AbGroupInvariants;
using milnork::FqUnits;

namespace {

const std::vector<long long> kPrimePowersTo16 = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

// independent oracle: K_2(F_q) presented literally on all (q-1)^2 pure
// tensor symbols u_a (x) u_b with full bilinearity and Steinberg relations,
// reduced by integer Smith normal form
std::vector<long long> k2_by_literal_presentation(long long q) {
  FqUnits fq(q);
  const long long m = q - 1;
  auto gen = [&](long long la, long long lb) { return la * m + lb; };  // (g^la) (x) (g^lb)
  std::vector<std::vector<long long>> rows;
  // bilinearity in the first slot: (a a') (x) b = a (x) b + a' (x) b
  for (long long a = 0; a < m; ++a)
    for (long long a2 = 0; a2 < m; ++a2)
      for (long long b = 0; b < m; ++b) {
        std::vector<long long> r(m * m, 0);
        r[gen((a + a2) % m, b)] += 1;
        r[gen(a, b)] -= 1;
        r[gen(a2, b)] -= 1;
        rows.push_back(std::move(r));
      }
  // bilinearity in the second slot
  for (long long a = 0; a < m; ++a)
    for (long long b = 0; b < m; ++b)
      for (long long b2 = 0; b2 < m; ++b2) {
        std::vector<long long> r(m * m, 0);
        r[gen(a, (b + b2) % m)] += 1;
        r[gen(a, b)] -= 1;
        r[gen(a, b2)] -= 1;
        rows.push_back(std::move(r));
      }
  // Steinberg: a (x) (1 - a)
  for (long long code = 2; code < q; ++code) {  // skip 0 and 1
    long long b = fq.one_minus(code);
    if (b == 0) continue;
    std::vector<long long> r(m * m, 0);
    r[gen(fq.log(code), fq.log(b))] += 1;
    rows.push_back(std::move(r));
  }
  zint::ZMat mat(static_cast<int>(rows.size()), static_cast<int>(m * m));
  for (size_t i = 0; i < rows.size(); ++i)
    for (long long j = 0; j < m * m; ++j) mat(static_cast<int>(i), static_cast<int>(j)) = static_cast<long>(rows[i][j]);
  // quotient invariants: Z^{m^2} / rowspace; SNF diagonal d_i, plus free
  // generators when rank < m^2
  std::vector<zint::Z> inv = zint::smith_invariants(mat);
  std::vector<long long> divisors;
  for (auto& d : inv)
    if (d > 1) divisors.push_back(d.get_si());
  long long free_rank = m * m - static_cast<long long>(inv.size());
  for (long long i = 0; i < free_rank; ++i) divisors.push_back(0);
  return divisors;
}

}  // namespace

TEST_CASE("unit group structure of small fields") {
  for (long long q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64}) {
    FqUnits fq(q);
    CHECK(fq.q() == q);
    // the log table is total on units and the generator has full order
    for (long long code = 1; code < q; ++code) CHECK(fq.log(code) >= 0);
    CHECK(fq.log(1) == 0);
    CHECK_THROWS_AS(fq.log(0), precondition_error);
    // 1 - a is an involution on codes away from the fixed locus
    for (long long code = 2; code < q; ++code) CHECK(fq.one_minus(fq.one_minus(code)) == code);
  }
  CHECK_THROWS_AS(FqUnits(6), precondition_error);
  CHECK_THROWS_AS(FqUnits(12), precondition_error);
}

TEST_CASE("K_0 and K_1") {
  AbGroupInvariants k0 = milnork::milnor_k(7, 0);
  CHECK(k0.free_rank == 1);
  CHECK(k0.divisors.empty());

  CHECK(milnork::milnor_k(4, 1).divisors == std::vector<long long>{3});
  CHECK(milnork::milnor_k(2, 1).trivial());
  for (long long q : kPrimePowersTo16) {
    AbGroupInvariants k1 = milnork::milnor_k(q, 1);
    CHECK(k1.free_rank == 0);
    CHECK(k1.order() == q - 1);
  }
}

TEST_CASE("K_2 vanishes for small finite fields") {
  for (long long q : kPrimePowersTo16) CHECK(milnork::milnor_k(q, 2).trivial());
  // and against the literal tensor presentation for a few fields
  for (long long q : {3, 4, 5, 7, 8, 9}) {
    auto oracle = k2_by_literal_presentation(q);
    CHECK(oracle.empty());
    CHECK(milnork::milnor_k(q, 2).trivial());
  }
}

TEST_CASE("K_3 vanishes as well") {
  for (long long q : {2, 3, 4, 5, 8, 9, 16}) {
    CHECK(milnork::milnor_k(q, 2).trivial());
    CHECK(milnork::milnor_k(q, 3).trivial());
  }
}

TEST_CASE("degree and size bounds are enforced") {
  CHECK_THROWS_AS(milnork::milnor_k(5, 4), precondition_error);
  CHECK_THROWS_AS(milnork::milnor_k(5, -1), precondition_error);
  CHECK_THROWS_AS(milnork::milnor_k(67, 2), precondition_error);
  CHECK_THROWS_AS(milnork::milnor_k(128, 1), precondition_error);
  CHECK_THROWS_AS(milnork::milnor_k(1, 1), precondition_error);
}

TEST_CASE("the Tate Hom table is the delta at the origin") {
  for (long long p : {2, 3, 5, 7, 11}) {
    CHECK(milnork::tate_hom(p, 0, 0) == 1);
    CHECK(milnork::tate_hom(p, 1, 1) == 0);
    CHECK(milnork::tate_hom(p, 2, 4) == 0);
    CHECK(milnork::tate_hom(p, 2, 2) == 0);
    CHECK(milnork::tate_hom(p, 3, 3) == 0);
    CHECK(milnork::tate_hom(p, -1, -1) == 0);
    CHECK(milnork::tate_hom(p, 0, 1) == 0);
  }
  CHECK_THROWS_AS(milnork::tate_hom(6, 0, 0), precondition_error);
}
