#include <map>

#include "doctest.h"
#include "simsim/branching.hpp"
#include "simsim/error.hpp"
#include "simsim/partcert.hpp"
#include "simsim/polyq.hpp"

using namespace simsim;

namespace {

// Partitions of j into exactly k parts, each between 1 and max_part, by
// recursion on the largest part.
std::int64_t brute(int j, int k, int max_part) {
  if (k == 0) return j == 0;
  if (j <= 0) return 0;
  std::int64_t s = 0;
  for (int p = 1; p <= max_part && p <= j; ++p) s += brute(j - p, k - 1, p);
  return s;
}

}  // namespace

TEST_CASE("restricted partition counts") {
  CHECK(p5(7, 3) == 4);  // 5+1+1, 4+2+1, 3+3+1, 3+2+2
  CHECK(p5(6, 1) == 0);
  CHECK(p5(5, 1) == 1);
  CHECK(p5(0, 0) == 1);
  CHECK(p5(-1, 2) == 0);
  CHECK(p5(3, -1) == 0);
  for (int k = 0; k <= 40; ++k) {
    CHECK(p5(k, k) == 1);
    CHECK(p5(5 * k, k) == 1);
    CHECK(p5(5 * k + 1, k) == 0);
  }
  for (int k = 0; k <= 8; ++k)
    for (int j = 0; j <= 25; ++j) {
      CAPTURE(j);
      CAPTURE(k);
      REQUIRE(p5(j, k) == brute(j, k, 5));
    }
  const PartitionTable T(10);
  CHECK(T.kmax() == 10);
  CHECK(T(7, 3) == 4);
  CHECK(T(7, 11) == 0);
  // Symmetry p_{5,k}(j) = p_{5,k}(6k - j).
  for (int k = 1; k <= 10; ++k)
    for (int j = k; j <= 5 * k; ++j) CHECK(T(j, k) == T(6 * k - j, k));
}

TEST_CASE("d_jk examples") {
  CHECK(d_coeff(0, 0) == 1);
  CHECK(d_coeff(2, 1) == 2);
  CHECK(d_coeff(1, 1) == 1);
  CHECK(d_coeff(5, 1) == 0);
  CHECK(d_coeff(8, 2) == 1);
  CHECK(d_coeff(16, 4) == 1);
  CHECK(d_coeff(3, 0) == 0);
  CHECK(d_coeff(-1, 3) == 0);
}

TEST_CASE("d_jk equals the coefficients of the closed form and of count(4, k)") {
  const SeriesQ s = closed_form(4).expand(25);
  const PartitionTable T(25);
  for (int k = 0; k <= 25; ++k) {
    const PolyQ ck = k == 0 ? PolyQ(1) : count(4, k);
    for (int j = 0; j <= 5 * k + 10; ++j) {
      CAPTURE(j);
      CAPTURE(k);
      REQUIRE(s[k].coeff(j) == d_coeff(T, j, k));
      REQUIRE(ck.coeff(j) == d_coeff(j, k));
    }
  }
}

TEST_CASE("non-negativity certificate") {
  const CertReport r = certify_nonneg(60);
  CHECK(r.kmax == 60);
  CHECK(r.clean());
  CHECK(r.checked > 10000);
  CHECK_THROWS_AS(certify_nonneg(-1), InvalidArgument);
}

TEST_CASE("basic inequalities hold") {
  const CertReport r = check_inequalities(50, IneqSet::Basic);
  CHECK(r.checked > 0);
  CHECK(r.clean());
}

TEST_CASE("the two main inequalities fail for small j") {
  // Exhaustive checking exposes counterexamples to both; d_jk >= 0 itself is
  // unaffected (see the certificate above).  Example: for k = 5, j = 13,
  // p_{5,3}(10) = 4 < 2 p_{5,2}(6) = 6.
  const CertReport r = check_inequalities(50, IneqSet::Main);
  std::map<std::string, int> by;
  for (const auto& v : r.violations) {
    ++by[v.what];
    CHECK(v.value < 0);
  }
  CHECK(by["PC57"] == 42);
  CHECK(by["PC58"] == 4109);
  bool seen = false;
  for (const auto& v : r.violations)
    if (v.what == "PC58" && v.j == 13 && v.k == 5) {
      CHECK(v.value == -2);
      seen = true;
    }
  CHECK(seen);
  CHECK(p5(10, 3) == 4);
  CHECK(p5(6, 2) == 3);
  const CertReport all = check_inequalities(50);
  CHECK(all.violations.size() == r.violations.size());
}
