#include "doctest.h"
#include "simsim/error.hpp"
#include "simsim/gfield.hpp"

using namespace simsim;

namespace {

PolyFq P(std::initializer_list<int> c) {
  std::vector<int> v(c);
  return poly_from_ints(v);
}

}  // namespace

TEST_CASE("field construction") {
  const FieldCtx F2 = make_field(2);
  CHECK(F2.q() == 2);
  CHECK(F2.add(1, 1) == 0);
  const FieldCtx F4 = make_field(4);
  CHECK(F4.p() == 2);
  CHECK(F4.e() == 2);
  CHECK(F4.modulus() == std::vector<int>{1, 1, 1});
  CHECK(make_field(8).modulus() == std::vector<int>{1, 1, 0, 1});
  CHECK(make_field(16).modulus() == std::vector<int>{1, 1, 0, 0, 1});
  CHECK(make_field(9).modulus() == std::vector<int>{1, 0, 1});
  CHECK(make_field(4) == F4);
  CHECK_THROWS_AS(make_field(6), InvalidArgument);
  CHECK_THROWS_WITH(make_field(6), doctest::Contains("not a prime power"));
  CHECK_THROWS_AS(make_field(1), InvalidArgument);
  CHECK_THROWS_AS(make_field(17), InvalidArgument);
  CHECK_THROWS_AS(make_field(12), InvalidArgument);
}

TEST_CASE("field axioms hold exhaustively") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    const FieldCtx F = make_field(q);
    CAPTURE(q);
    for (int a = 0; a < q; ++a) {
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
      for (int b = 0; b < q; ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        for (int c = 0; c < q; ++c) {
          REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
          REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
          REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
    CHECK_THROWS_AS(F.inv(0), InvalidArgument);
  }
}

TEST_CASE("irreducible monics") {
  const FieldCtx F2 = make_field(2);
  auto i2 = irreducible_monics(F2, 2);
  REQUIRE(i2.size() == 1);
  CHECK(i2[0] == P({1, 1, 1}));
  CHECK(irreducible_monics(make_field(3), 2).size() == 3);
  CHECK(irreducible_monics(F2, 4).size() == 3);
  CHECK(irreducible_monics(F2, 1) == std::vector<PolyFq>{P({0, 1}), P({1, 1})});
  CHECK_THROWS_AS(irreducible_monics(F2, 5), InvalidArgument);
  CHECK_THROWS_AS(irreducible_monics(F2, 0), InvalidArgument);
  CHECK(irreducible_count(3, 2) == 3);
  CHECK(irreducible_count(2, 4) == 3);
  CHECK(irreducible_count(2, 3) == 2);
}

TEST_CASE("degrees of irreducibles dividing d sum to q^d") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const FieldCtx F = make_field(q);
    for (int d = 1; d <= 4; ++d) {
      if (q >= 7 && d == 4) continue;  // slow, and covered by the count formula below
      long long total = 0, qd = 1;
      for (int i = 0; i < d; ++i) qd *= q;
      for (int e = 1; e <= d; ++e)
        if (d % e == 0) total += e * static_cast<long long>(irreducible_monics(F, e).size());
      CAPTURE(q);
      CAPTURE(d);
      CHECK(total == qd);
      CHECK(static_cast<long long>(irreducible_monics(F, d).size()) == irreducible_count(q, d));
    }
  }
}

TEST_CASE("factor_monic") {
  const FieldCtx F2 = make_field(2);
  auto f = factor_monic(F2, P({0, 0, 0, 0, 1}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].first == P({0, 1}));
  CHECK(f[0].second == 4);
  // (t^2 + t + 1)^2 = t^4 + t^2 + 1 over F_2.
  f = factor_monic(F2, P({1, 0, 1, 0, 1}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].first == P({1, 1, 1}));
  CHECK(f[0].second == 2);
  f = factor_monic(F2, P({1, 1, 1}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].second == 1);
  CHECK_THROWS_AS(factor_monic(F2, P({1})), InvalidArgument);
  CHECK_THROWS_AS(factor_monic(make_field(3), P({1, 2})), InvalidArgument);
}

TEST_CASE("factorisations re-multiply to the input") {
  for (int q : {2, 3}) {
    const FieldCtx F = make_field(q);
    for (int d = 1; d <= 4; ++d) {
      int total = 1;
      for (int i = 0; i < d; ++i) total *= q;
      for (int idx = 0; idx < total; ++idx) {
        PolyFq f;
        f.coeffs.assign(d + 1, 0);
        for (int i = 0, v = idx; i < d; ++i, v /= q) f.coeffs[i] = static_cast<Elem>(v % q);
        f.coeffs[d] = 1;
        PolyFq prod{{1}};
        for (const auto& [g, m] : factor_monic(F, f)) {
          CHECK(g.lead() == 1);
          prod = poly_mul(F, prod, poly_pow(F, g, m));
        }
        REQUIRE(prod == f);
      }
    }
  }
}

TEST_CASE("polynomial helpers") {
  const FieldCtx F3 = make_field(3);
  const PolyFq a = P({1, 2, 1}), b = P({2, 1});
  const auto [quo, rem] = poly_divmod(F3, a, b);
  CHECK(poly_add(F3, poly_mul(F3, quo, b), rem) == a);
  CHECK(poly_mul(F3, a, b).degree() == 3);
  CHECK(poly_sub(F3, a, a).is_zero());
  CHECK(poly_str(P({1, 0, 1})) == "t^2 + 1");
  CHECK(poly_str(P({})) == "0");
  CHECK(poly_less(P({1, 1}), P({0, 0, 1})));
  CHECK(poly_less(P({0, 1}), P({1, 1})));
}
