#include "doctest.h"
#include "simsim/error.hpp"
#include "simsim/polyq.hpp"

using namespace simsim;

TEST_CASE("rendering and parsing") {
  const PolyQ f = PolyQ::parse("q^6 + q^5 + 2*q^4 + q^3 + 2*q^2");
  CHECK(f.degree() == 6);
  CHECK(f.coeff(4) == 2);
  CHECK(f.str() == "q^6 + q^5 + 2*q^4 + q^3 + 2*q^2");
  CHECK(PolyQ(0).str() == "0");
  CHECK(PolyQ::q().str() == "q");
  CHECK(PolyQ::parse("q^3 - q^2").str() == "q^3 - q^2");
  CHECK(PolyQ::parse("-q + 1").str() == "-q + 1");
  CHECK(PolyQ::parse("1/2*q^2 - 1/2*q").str() == "1/2*q^2 - 1/2*q");
  CHECK(PolyQ::parse("q^2 + q^2") == PolyQ::parse("2*q^2"));
  CHECK(PolyQ::parse(" 7 ") == PolyQ(7));
  for (const char* bad : {"", "q^", "2*", "q q", "x", "+", "1/0*q"}) {
    CAPTURE(bad);
    CHECK_THROWS(PolyQ::parse(bad));
  }
}

TEST_CASE("evaluation") {
  CHECK(PolyQ::parse("q^3 + q^2 + q").eval_at(2) == 14);
  CHECK(PolyQ::parse("q^4 + q^3 + 2*q^2 + q").eval_at(2) == 34);
  CHECK(PolyQ(0).eval_at(7) == 0);
  CHECK(PolyQ::parse("1/2*q^2 - 1/2*q").eval_at(3) == 3);
  CHECK_THROWS_AS(PolyQ::parse("1/2*q").eval_at(3), ConsistencyError);
  // Values beyond 64 bits stay exact.
  const mpz_class big = PolyQ::monomial(80).eval_at(3);
  mpz_class want;
  mpz_ui_pow_ui(want.get_mpz_t(), 3, 80);
  CHECK(big == want);
}

TEST_CASE("ring operations agree with evaluation") {
  const PolyQ f = PolyQ::parse("q^3 - 2*q + 5"), g = PolyQ::parse("1/2*q^2 + q");
  for (long x : {-3L, 0L, 1L, 2L, 9L}) {
    const mpq_class X(x);
    CHECK((f * g).eval(X) == f.eval(X) * g.eval(X));
    CHECK((f + g).eval(X) == f.eval(X) + g.eval(X));
    CHECK((f - g).eval(X) == f.eval(X) - g.eval(X));
  }
  CHECK(divide_exact(f * g, g) == f);
  CHECK_THROWS_AS(divide_exact(f, PolyQ::parse("q")), ConsistencyError);
  CHECK((f - f).is_zero());
}

TEST_CASE("quotients") {
  const RatQ a(PolyQ::parse("q - 1"), PolyQ::parse("2*q"));
  const RatQ b(PolyQ(1), PolyQ::parse("q"));
  CHECK(a + a + b == RatQ(PolyQ(1)));
  CHECK((a * RatQ(PolyQ::parse("2*q^2"))).to_poly() == PolyQ::parse("q^2 - q"));
  CHECK_THROWS_AS(b.to_poly(), ConsistencyError);
}

TEST_CASE("closed forms") {
  const RationalGF h2 = closed_form(2);
  CHECK(h2.numerator == SeriesQ{PolyQ(1)});
  CHECK(h2.denominator == std::vector<int>{1, 2});
  const RationalGF h3 = closed_form(3);
  CHECK(h3.numerator[2] == PolyQ::parse("q^2"));
  CHECK(h3.denominator == std::vector<int>{1, 2, 3});
  const RationalGF h4 = closed_form(4);
  CHECK(h4.numerator[0] == PolyQ(1));
  CHECK(h4.numerator[1] == PolyQ::parse("-q^5 + q^2"));
  CHECK(h4.numerator[2] == PolyQ::parse("-q^7 + 2*q^4 + q^3 + 2*q^2"));
  CHECK(h4.numerator[3] == PolyQ::parse("-2*q^9 - 2*q^7 + q^6 - q^3"));
  CHECK(h4.numerator[4] == PolyQ::parse("-q^10"));
  CHECK(h4.denominator == std::vector<int>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(closed_form(5), InvalidArgument);
  // h_2 series: c_{2,k} = q^k + ... + q^{2k}.
  const SeriesQ s = h2.expand(3);
  CHECK(s[2] == PolyQ::parse("q^4 + q^3 + q^2"));
  CHECK(h2.times_denominator(s, 3) == SeriesQ{PolyQ(1), PolyQ(0), PolyQ(0), PolyQ(0)});
}

TEST_CASE("closed forms agree with branching series") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    const GFReport r = verify_closed_form(n, 10);
    CHECK(r.verified);
    CHECK_FALSE(r.first_mismatch.has_value());
  }
  // The h_3 expansion reproduces the t^2 count of the 3x3 table.
  CHECK(closed_form(3).expand(2)[2] == PolyQ::parse("q^6 + q^5 + 2*q^4 + q^3 + 2*q^2"));
  CHECK(closed_form(4).expand(4)[4] ==
        PolyQ::parse("q^16 + q^15 + 3*q^14 + 5*q^13 + 9*q^12 + 12*q^11 + 16*q^10 + 17*q^9 + 17*q^8 + 13*q^7 + "
                     "9*q^6 + 4*q^5 + 2*q^4"));
  CHECK_THROWS_AS(verify_closed_form(2, 0), InvalidArgument);
}
