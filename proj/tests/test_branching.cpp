#include <map>

#include "doctest.h"
#include "simsim/branching.hpp"
#include "simsim/error.hpp"

using namespace simsim;

namespace {

PolyQ P(const char* s) { return PolyQ::parse(s); }

std::map<std::string, PolyQ> by_target(const std::vector<std::pair<TypeDescriptor, PolyQ>>& br) {
  std::map<std::string, PolyQ> out;
  for (const auto& [t, c] : br) out[t.is_regular() ? "Regular" : t.str()] += c;
  return out;
}

}  // namespace

TEST_CASE("stored matrices") {
  const BranchingMatrix& B2 = branching_matrix(2);
  CHECK(B2.index == std::vector<std::string>{"(1,1)", "(2)"});
  CHECK(B2.at("(1,1)", "(1,1)") == P("q"));
  CHECK(B2.at("(2)", "(1,1)") == P("q^2"));
  CHECK(B2.at("(1,1)", "(2)").is_zero());
  const BranchingMatrix& B3 = branching_matrix(3);
  CHECK(B3.at("(3)", "(2,1)") == P("q^3 + 1"));
  const BranchingMatrix& B4 = branching_matrix(4);
  CHECK(B4.index.size() == 11);
  CHECK(B4.at("(3,1)", "(2,1,1)") == P("q^3 + q^2 - q - 1"));
  CHECK(B4.at("NT2", "(2,2)") == P("1/2*q^2 - 1/2*q"));
  CHECK(B4.at("NT6", "NT6") == P("q^5"));
  CHECK(B4.position("NT1") == 5);
  CHECK_THROWS_AS(B4.position("(5)"), InvalidArgument);
  CHECK_THROWS_AS(branching_matrix(5), InvalidArgument);
  // The central column counts the branches of a scalar class, i.e. the
  // similarity classes of M_n.
  for (int n : {2, 3, 4}) {
    const BranchingMatrix& B = branching_matrix(n);
    PolyQ s;
    for (std::size_t i = 0; i < B.index.size(); ++i) s += B.entries[i][0];
    CHECK(s == count(n, 1));
  }
}

TEST_CASE("symbolic tables") {
  CHECK(count(2, 1).str() == "q^2 + q");
  CHECK(count(2, 2).str() == "q^4 + q^3 + q^2");
  CHECK(count(3, 1).str() == "q^3 + q^2 + q");
  CHECK(count(3, 2).str() == "q^6 + q^5 + 2*q^4 + q^3 + 2*q^2");
  CHECK(count(3, 3).str() == "q^9 + q^8 + 2*q^7 + 2*q^6 + 3*q^5 + 2*q^4 + 2*q^3");
  CHECK(count(4, 1).str() == "q^4 + q^3 + 2*q^2 + q");
  CHECK(count(4, 2).str() == "q^8 + q^7 + 3*q^6 + 3*q^5 + 5*q^4 + 3*q^3 + 3*q^2");
  CHECK(count(4, 3).str() == "q^12 + q^11 + 3*q^10 + 4*q^9 + 8*q^8 + 8*q^7 + 11*q^6 + 8*q^5 + 5*q^4 + 2*q^3");
  CHECK(count(4, 4).str() ==
        "q^16 + q^15 + 3*q^14 + 5*q^13 + 9*q^12 + 12*q^11 + 16*q^10 + 17*q^9 + 17*q^8 + 13*q^7 + 9*q^6 + "
        "4*q^5 + 2*q^4");
  CHECK_THROWS_AS(count(3, 0), InvalidArgument);
  CHECK(count_series(3, 0) == SeriesQ{PolyQ(1)});
  CHECK(count(2, 1).eval_at(2) == 6);
  CHECK(count(2, 2).eval_at(2) == 28);
  CHECK(count(3, 2).eval_at(2) == 144);
  CHECK(count(4, 2).eval_at(2) == 788);
  CHECK_THROWS_AS(count(1, 1), InvalidArgument);
  CHECK_THROWS_AS(count(3, -1), InvalidArgument);
}

TEST_CASE("series shape") {
  for (int n : {2, 3, 4}) {
    const SeriesQ s = count_series(n, 30);
    REQUIRE(s.size() == 31);
    for (int k = 1; k <= 30; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(s[k] == count(n, k));
      CHECK(s[k].integral());
      CHECK(s[k].nonnegative());
      CHECK(s[k].coeff(0) == 0);
      // Polynomials in one regular matrix give the q^{nk} term.  For n = 4
      // the chain Central -> (2,2) -> NT3 -> NT6 -> NT6 ... has degree
      // 5k - 7; the two tie at k = 7.
      if (n <= 3 || k < 7) {
        CHECK(s[k].degree() == n * k);
        CHECK(s[k].coeff(n * k) == 1);
      } else if (k == 7) {
        CHECK(s[k].degree() == 28);
        CHECK(s[k].coeff(28) == 2);
      } else {
        CHECK(s[k].degree() == 5 * k - 7);
        CHECK(s[k].coeff(5 * k - 7) == 1);
      }
    }
  }
  // c_{2,k} = q^k + q^{k+1} + ... + q^{2k}.
  for (int k = 1; k <= 12; ++k) {
    PolyQ want;
    for (int e = k; e <= 2 * k; ++e) want += PolyQ::monomial(e);
    CHECK(count(2, k) == want);
  }
}

TEST_CASE("node assignment") {
  CHECK(node_of(TypeDescriptor::parse("(2,1)_1(1)_1")) == "(3,1)");
  CHECK(node_of(TypeDescriptor::parse("(1,1)_2")) == "(2,2)");
  CHECK(node_of(TypeDescriptor::parse("(1,1)_1(1)_1", 3)) == "(2,1)");
  CHECK(node_of(TypeDescriptor::regular(4)) == "(4)");
  CHECK(node_of(TypeDescriptor::new_type(3)) == "NT3");
}

TEST_CASE("per-type branch tables of M_3") {
  // Unreduced branching matrix in the order Central, (2,1)_1, (1,1)_1(1)_1, Regular.
  const auto central = by_target(lemma_branches(TypeDescriptor::central(3)));
  CHECK(central.at("(1,1,1)_1") == P("q"));
  CHECK(central.at("(2,1)_1") == P("q"));
  CHECK(central.at("(1,1)_1(1)_1") == P("q^2 - q"));
  CHECK(central.at("Regular") == P("q^3"));
  const auto m21 = by_target(lemma_branches(TypeDescriptor::parse("(2,1)_1", 3)));
  CHECK(m21.size() == 2);
  CHECK(m21.at("(2,1)_1") == P("q^2"));
  CHECK(m21.at("Regular") == P("q^3 + q"));
  const auto m111 = by_target(lemma_branches(TypeDescriptor::parse("(1,1)_1(1)_1", 3)));
  CHECK(m111.at("(1,1)_1(1)_1") == P("q^2"));
  CHECK(m111.at("Regular") == P("q^3"));
  const auto reg = by_target(lemma_branches(TypeDescriptor::regular(3)));
  CHECK(reg.size() == 1);
  CHECK(reg.at("Regular") == P("q^3"));
}

TEST_CASE("new-type branch rows") {
  const auto nt6 = by_target(lemma_branches(TypeDescriptor::new_type(6)));
  CHECK(nt6.size() == 1);
  CHECK(nt6.at("NT6") == P("q^5"));
  const auto nt1 = by_target(lemma_branches(TypeDescriptor::new_type(1)));
  CHECK(nt1.at("NT1") == P("q^3"));
  CHECK(nt1.at("NT6") == P("q^4 - q^2"));
  CHECK(nt1.at("Regular") == P("q^4 - q^3"));
  const auto m22 = by_target(lemma_branches(TypeDescriptor::parse("(2,2)_1")));
  CHECK(m22.at("NT1") == P("q^2"));
  CHECK(m22.at("NT2") == P("1/2*q^3 - 1/2*q^2"));
  CHECK(m22.at("NT3") == P("1/2*q^3 - 1/2*q^2"));
  CHECK(m22.at("Regular") == P("q^4"));
}

TEST_CASE("probabilities are class-count ratios") {
  for (int n : {2, 3, 4}) {
    const auto& rows = type_rows(n);
    std::map<std::string, PolyQ> node_total;
    for (const auto& r : rows)
      if (r.type.is_classical()) node_total[r.node] += class_count(r.type);
    for (const auto& r : rows) {
      CAPTURE(r.type.str());
      if (!r.type.is_classical()) {
        CHECK(r.probability == RatQ(PolyQ(1)));
        continue;
      }
      CHECK(r.node == node_of(r.type));
      CHECK(r.probability == RatQ(class_count(r.type), node_total[r.node]));
    }
    // The regular classes are exactly q^n in number.
    CHECK(node_total.at("(" + std::to_string(n) + ")") == PolyQ::monomial(n));
  }
}

TEST_CASE("reduced matrices are re-derived from the per-type tables") {
  for (int n : {2, 3, 4}) {
    const BranchingMatrix& B = branching_matrix(n);
    for (std::size_t j = 0; j < B.index.size(); ++j) {
      const auto col = average_branches(type_rows(n), B.index[j]);
      for (std::size_t i = 0; i < B.index.size(); ++i) {
        CAPTURE(n);
        CAPTURE(B.index[i]);
        CAPTURE(B.index[j]);
        const auto it = col.find(B.index[i]);
        const PolyQ got = it == col.end() ? PolyQ(0) : it->second;
        CHECK(got == B.entries[i][j]);
      }
      for (const auto& [node, v] : col) CHECK(B.position(node) >= 0);
    }
  }
  CHECK_THROWS_AS(average_branches(type_rows(4), "(5)"), InvalidArgument);
  // Dropping a type breaks the probability sum.
  auto rows = type_rows(3);
  rows.erase(rows.begin() + 1);
  bool threw = false;
  for (const char* node : {"(2,1)", "(1,1,1)", "(3)"}) {
    try {
      average_branches(rows, node);
    } catch (const InvalidArgument&) {
      threw = true;
    }
  }
  CHECK(threw);
}
