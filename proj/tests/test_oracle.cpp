#include "doctest.h"
#include "simsim/branching.hpp"
#include "simsim/error.hpp"
#include "simsim/oracle.hpp"

using namespace simsim;

namespace {

// Commuting k-tuples of M_n(F_q) by plain recursion over all matrices.
std::uint64_t brute_tuples(const std::vector<Matrix>& all, std::vector<Matrix>& cur, int k) {
  if (static_cast<int>(cur.size()) == k) return 1;
  std::uint64_t s = 0;
  for (const Matrix& X : all) {
    bool ok = true;
    for (const Matrix& Y : cur) ok = ok && X * Y == Y * X;
    if (!ok) continue;
    cur.push_back(X);
    s += brute_tuples(all, cur, k);
    cur.pop_back();
  }
  return s;
}

TypeDescriptor T(const char* s, int n = 4) { return TypeDescriptor::parse(s, n); }

}  // namespace

TEST_CASE("commuting tuple counts") {
  const FieldCtx F2 = make_field(2), F3 = make_field(3);
  CHECK(commuting_tuple_count(2, F2, 1) == 16);
  CHECK(commuting_tuple_count(2, F2, 2) == 88);
  CHECK(commuting_tuple_count(3, F2, 1) == 512);
  CHECK(commuting_tuple_count(2, F3, 0) == 1);
  for (auto [n, q, k] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 2}}) {
    const FieldCtx F = make_field(q);
    const auto all = all_matrices(n, F);
    std::vector<Matrix> cur;
    CAPTURE(n);
    CAPTURE(q);
    CAPTURE(k);
    CHECK(commuting_tuple_count(n, F, k) == brute_tuples(all, cur, k));
  }
  const Subalgebra Z = centralizer_basis({Matrix::unit(F3, 3, 1, 2)});
  CHECK(commuting_tuple_count(Z, 1) == 243);
  CHECK_THROWS_AS(commuting_tuple_count(2, F2, -1), InvalidArgument);
}

TEST_CASE("direct orbit counts") {
  for (int q : {2, 3}) {
    const FieldCtx F = make_field(q);
    for (int k = 1; k <= 3; ++k) {
      const OrbitReport r = orbit_count_direct(2, F, k);
      CAPTURE(q);
      CAPTURE(k);
      CHECK(r.method == OrbitMethod::Direct);
      CHECK(r.orbit_count == count(2, k).eval_at(q));
      CHECK(r.total_tuples == commuting_tuple_count(2, F, k));
    }
  }
  const FieldCtx F2 = make_field(2);
  CHECK(orbit_count_direct(2, F2, 1).orbit_count == 6);
  CHECK(orbit_count_direct(2, F2, 2).orbit_count == 28);
  CHECK(orbit_count_direct(2, F2, 2).total_tuples == 88);
  CHECK(orbit_count_direct(3, F2, 1).orbit_count == 14);
  CHECK(orbit_count_direct(3, F2, 2).orbit_count == 144);
  CHECK(orbit_count_direct(3, F2, 2, 1).orbit_count == 144);
  CHECK_THROWS_AS(orbit_count_direct(3, make_field(3), 1), ResourceError);
}

TEST_CASE("Burnside orbit counts") {
  const FieldCtx F2 = make_field(2), F3 = make_field(3);
  for (int k = 1; k <= 3; ++k) CHECK(orbit_count_burnside(2, F2, k).orbit_count == count(2, k).eval_at(2));
  CHECK(orbit_count_burnside(2, F3, 3).orbit_count == 1080);
  CHECK(orbit_count_burnside(3, F2, 1).orbit_count == 14);
  CHECK(orbit_count_burnside(3, F2, 2).orbit_count == 144);
  CHECK(orbit_count_burnside(3, F2, 3).orbit_count == count(3, 3).eval_at(2));
  CHECK(orbit_count_burnside(3, F3, 1).orbit_count == 39);
  CHECK(orbit_count_burnside(4, F2, 1).orbit_count == 34);
  const OrbitReport r = orbit_count_burnside(4, F2, 2);
  CHECK(r.method == OrbitMethod::Burnside);
  CHECK(r.orbit_count == 788);
  CHECK(method_name(OrbitMethod::Burnside) == "burnside");
  CHECK_THROWS_AS(orbit_count_burnside(4, F2, 3), ResourceError);
}

TEST_CASE("branch censuses") {
  const FieldCtx F2 = make_field(2);
  const CensusReport c21 = branch_census(representative(T("(2,1)_1", 3), F2));
  CHECK(c21.dim == 5);
  CHECK(c21.unit_count == 8);
  auto agg = c21.aggregated();
  CHECK(agg.size() == 2);
  CHECK(agg[T("(2,1)_1", 3)] == 4);
  CHECK(agg[TypeDescriptor::regular(3)] == 10);
  std::uint64_t elements = 0;
  for (const auto& row : c21.rows) elements += row.elements;
  CHECK(elements == 32);

  const CensusReport c22 = branch_census(representative(T("(2,2)_1"), F2));
  agg = c22.aggregated();
  CHECK(agg[T("(2,2)_1")] == 4);
  CHECK(agg[T("NT1")] == 4);
  CHECK(agg[T("NT2")] == 2);
  CHECK(agg[T("NT3")] == 2);
  CHECK(agg[TypeDescriptor::regular(4)] == 16);

  const CensusReport nt6 = branch_census(representative(T("NT6"), F2));
  agg = nt6.aggregated();
  CHECK(agg.size() == 1);
  CHECK(agg[T("NT6")] == 32);
}

TEST_CASE("censuses agree with the predicted branch tables") {
  const FieldCtx F2 = make_field(2);
  for (int n : {3, 4})
    for (const auto& e : catalog(n, F2)) {
      CAPTURE(e.type.str());
      const auto got = branch_census(e.rep).aggregated();
      const auto want = predicted_census(e.type, 2);
      REQUIRE(got.size() == want.size());
      for (const auto& [t, c] : want) CHECK(mpz_class(static_cast<unsigned long>(got.at(t))) == c);
    }
}
