#include "simsim/branching.hpp"

#include <memory>
#include <mutex>

#include "simsim/error.hpp"

namespace simsim {

namespace {

PolyQ P(const char* s) { return PolyQ::parse(s); }

BranchingMatrix make_matrix(int n, std::vector<std::string> index, const std::vector<std::vector<const char*>>& rows) {
  BranchingMatrix B;
  B.n = n;
  B.index = std::move(index);
  for (const auto& r : rows) {
    std::vector<PolyQ> pr;
    for (const char* s : r) pr.push_back(P(s));
    B.entries.push_back(std::move(pr));
  }
  return B;
}

BranchingMatrix make_b2() { return make_matrix(2, {"(1,1)", "(2)"}, {{"q", "0"}, {"q^2", "q^2"}}); }

BranchingMatrix make_b3() {
  return make_matrix(3, {"(1,1,1)", "(2,1)", "(3)"},
                     {{"q", "0", "0"}, {"q^2", "q^2", "0"}, {"q^3", "q^3 + 1", "q^3"}});
}

BranchingMatrix make_b4() {
  const char* h = "1/2*q^2 - 1/2*q";
  return make_matrix(
      4, {"(1,1,1,1)", "(2,1,1)", "(2,2)", "(3,1)", "(4)", "NT1", "NT2", "NT3", "NT4", "NT5", "NT6"},
      {
          {"q", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"},
          {"q^2", "q^2", "0", "0", "0", "0", "0", "0", "0", "0", "0"},
          {"q^2", "0", "q^2", "0", "0", "0", "0", "0", "0", "0", "0"},
          {"q^3", "q^3 + q^2 - q - 1", "q^3 - q^2", "q^3", "0", "0", "0", "0", "0", "0", "0"},
          {"q^4", "q^4 + q", "q^4", "q^4 + q", "q^4", "q^4 - q^3", "q^4 - q^3", "q^4 - q^3", "q^4", "q^4", "0"},
          {"0", "1", "q", "0", "0", "q^3", "0", "0", "0", "0", "0"},
          {"0", "0", h, "0", "0", "0", "q^3", "0", "0", "0", "0"},
          {"0", "q", h, "0", "0", "0", "0", "q^3", "0", "0", "0"},
          {"0", "1", "0", "0", "0", "0", "0", "0", "q^3", "0", "0"},
          {"0", "1", "0", "0", "0", "0", "0", "0", "0", "q^3", "0"},
          {"0", "0", "0", "0", "0", "q^4 - q^2", "q^4 - q^3", "q^4 + q^3", "q^3 + q^2", "q^3 + q^2", "q^5"},
      });
}

void check_n(int n) {
  if (n < 2 || n > 4) throw InvalidArgument("branching matrices exist for n in {2,3,4}, got " + std::to_string(n));
}

}  // namespace

int BranchingMatrix::position(const std::string& node) const {
  for (std::size_t i = 0; i < index.size(); ++i)
    if (index[i] == node) return static_cast<int>(i);
  throw InvalidArgument("no node " + node + " in B_" + std::to_string(n));
}

const PolyQ& BranchingMatrix::at(const std::string& row, const std::string& col) const {
  return entries[position(row)][position(col)];
}

const BranchingMatrix& branching_matrix(int n) {
  check_n(n);
  static const BranchingMatrix b2 = make_b2(), b3 = make_b3(), b4 = make_b4();
  return n == 2 ? b2 : n == 3 ? b3 : b4;
}

SeriesQ count_series(int n, int kmax) {
  const BranchingMatrix& B = branching_matrix(n);
  const std::size_t m = B.index.size();
  std::vector<PolyQ> v(m, PolyQ(0));
  v[0] = PolyQ(1);
  SeriesQ out{PolyQ(1)};
  for (int k = 1; k <= kmax; ++k) {
    std::vector<PolyQ> w(m, PolyQ(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!B.entries[i][j].is_zero() && !v[j].is_zero()) w[i] += B.entries[i][j] * v[j];
    v = std::move(w);
    PolyQ c;
    for (const auto& x : v) c += x;
    if (!c.integral()) throw ConsistencyError("c_{" + std::to_string(n) + "," + std::to_string(k) + "} = " + c.str() +
                                              " has non-integer coefficients");
    if (n <= 3 && !c.nonnegative())
      throw ConsistencyError("c_{" + std::to_string(n) + "," + std::to_string(k) + "} has a negative coefficient");
    out.push_back(std::move(c));
  }
  return out;
}

PolyQ count(int n, int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  return count_series(n, k)[k];
}

std::string node_of(const TypeDescriptor& t) {
  switch (t.kind()) {
    case TypeKind::NewType:
      return t.str();
    case TypeKind::Regular:
      return partition_str({t.n()});
    case TypeKind::Classical:
      break;
  }
  return partition_str(rcf_type(t));
}

namespace {

using Branches = std::vector<std::pair<const char*, const char*>>;

TypeRow row(const char* type, const char* num, const char* den, const Branches& br, int n = 4) {
  TypeRow r;
  r.type = TypeDescriptor::parse(type, n);
  r.node = node_of(r.type);
  r.probability = RatQ(P(num), P(den));
  for (const auto& [t, c] : br) r.branches.emplace_back(TypeDescriptor::parse(t, n), P(c));
  return r;
}

void add_regular_rows(std::vector<TypeRow>& rows, int n) {
  const PolyQ qn = PolyQ::monomial(n);
  for (const auto& t : classical_types(n)) {
    if (!t.is_regular()) continue;
    TypeRow r;
    r.type = t;
    r.node = node_of(t);
    r.probability = RatQ(class_count(t), qn);
    r.branches = {{TypeDescriptor::regular(n), qn}};
    rows.push_back(std::move(r));
  }
}

std::vector<TypeRow> make_rows(int n) {
  std::vector<TypeRow> rows;
  if (n == 2) {
    rows.push_back(row("(1,1)_1", "1", "1", {{"(1,1)_1", "q"}, {"Regular", "q^2"}}, 2));
  } else if (n == 3) {
    rows.push_back(row("(1,1,1)_1", "1", "1",
                       {{"(1,1,1)_1", "q"}, {"(2,1)_1", "q"}, {"(1,1)_1(1)_1", "q^2 - q"}, {"Regular", "q^3"}}, 3));
    rows.push_back(row("(2,1)_1", "1", "q", {{"(2,1)_1", "q^2"}, {"Regular", "q^3 + q"}}, 3));
    rows.push_back(row("(1,1)_1(1)_1", "q - 1", "q", {{"(1,1)_1(1)_1", "q^2"}, {"Regular", "q^3"}}, 3));
  } else {
    const char* h = "1/2*q^2 - 1/2*q";
    rows.push_back(row("(1,1,1,1)_1", "1", "1",
                       {{"(1,1,1,1)_1", "q"},
                        {"(2,1,1)_1", "q"},
                        {"(1,1,1)_1(1)_1", "q^2 - q"},
                        {"(2,2)_1", "q"},
                        {"(1,1)_1(1,1)_1", h},
                        {"(1,1)_2", h},
                        {"(3,1)_1", "q"},
                        {"(2,1)_1(1)_1", "q^2 - q"},
                        {"(1,1)_1(1)_1(1)_1", "1/2*q^3 - 3/2*q^2 + q"},
                        {"(2)_1(1,1)_1", "q^2 - q"},
                        {"(1,1)_1(1)_2", "1/2*q^3 - 1/2*q^2"},
                        {"Regular", "q^4"}}));
    rows.push_back(row("(2,1,1)_1", "1", "q",
                       {{"(2,1,1)_1", "q^2"},
                        {"(3,1)_1", "q^2 - q"},
                        {"(2)_1(1,1)_1", "q^3 - q^2"},
                        {"(2,1)_1(1)_1", "q^3 - q^2"},
                        {"Regular", "q^4 + q^2"},
                        {"NT1", "q"},
                        {"NT3", "q^2"},
                        {"NT4", "q"},
                        {"NT5", "q"}}));
    rows.push_back(row("(1,1,1)_1(1)_1", "q - 1", "q",
                       {{"(1,1,1)_1(1)_1", "q^2"},
                        {"(2,1)_1(1)_1", "q^2"},
                        {"(1,1)_1(1)_1(1)_1", "q^3 - q^2"},
                        {"Regular", "q^4"}}));
    rows.push_back(row("(2,2)_1", "1", "q",
                       {{"(2,2)_1", "q^2"},
                        {"Regular", "q^4"},
                        {"NT1", "q^2"},
                        {"NT2", "1/2*q^3 - 1/2*q^2"},
                        {"NT3", "1/2*q^3 - 1/2*q^2"}}));
    rows.push_back(row("(1,1)_1(1,1)_1", "q - 1", "2*q",
                       {{"(1,1)_1(1,1)_1", "q^2"},
                        {"(2)_1(1,1)_1", "2*q^2"},
                        {"(1,1)_1(1)_2", "q^3 - q^2"},
                        {"(1,1)_1(1)_1(1)_1", "q^3 - q^2"},
                        {"Regular", "q^4"}}));
    rows.push_back(row("(1,1)_2", "q - 1", "2*q", {{"(1,1)_2", "q^2"}, {"Regular", "q^4"}}));
    rows.push_back(row("(3,1)_1", "1", "q^2", {{"(3,1)_1", "q^3"}, {"Regular", "q^4 + q^2"}}));
    // Same branches as (2,1)_1 joined with one scalar block: q^2 * q own-type.
    rows.push_back(row("(2,1)_1(1)_1", "q - 1", "q^2", {{"(2,1)_1(1)_1", "q^3"}, {"Regular", "q^4 + q^2"}}));
    rows.push_back(row("(2)_1(1,1)_1", "q - 1", "q^2", {{"(2)_1(1,1)_1", "q^3"}, {"Regular", "q^4"}}));
    rows.push_back(row("(1,1)_1(1)_2", "q - 1", "2*q", {{"(1,1)_1(1)_2", "q^3"}, {"Regular", "q^4"}}));
    rows.push_back(row("(1,1)_1(1)_1(1)_1", "q^2 - 3*q + 2", "2*q^2",
                       {{"(1,1)_1(1)_1(1)_1", "q^3"}, {"Regular", "q^4"}}));
    rows.push_back(row("NT1", "1", "1", {{"NT1", "q^3"}, {"Regular", "q^4 - q^3"}, {"NT6", "q^4 - q^2"}}));
    rows.push_back(row("NT2", "1", "1", {{"NT2", "q^3"}, {"Regular", "q^4 - q^3"}, {"NT6", "q^4 - q^3"}}));
    rows.push_back(row("NT3", "1", "1", {{"NT3", "q^3"}, {"Regular", "q^4 - q^3"}, {"NT6", "q^4 + q^3"}}));
    rows.push_back(row("NT4", "1", "1", {{"NT4", "q^3"}, {"NT6", "q^3 + q^2"}, {"Regular", "q^4"}}));
    rows.push_back(row("NT5", "1", "1", {{"NT5", "q^3"}, {"NT6", "q^3 + q^2"}, {"Regular", "q^4"}}));
    rows.push_back(row("NT6", "1", "1", {{"NT6", "q^5"}}));
  }
  add_regular_rows(rows, n);
  return rows;
}

}  // namespace

const std::vector<TypeRow>& type_rows(int n) {
  check_n(n);
  static std::once_flag once[3];
  static std::vector<TypeRow> rows[3];
  std::call_once(once[n - 2], [&] { rows[n - 2] = make_rows(n); });
  return rows[n - 2];
}

std::vector<std::pair<TypeDescriptor, PolyQ>> lemma_branches(const TypeDescriptor& t) {
  if (t.kind() == TypeKind::Regular) {
    check_n(t.n());
    return {{TypeDescriptor::regular(t.n()), PolyQ::monomial(t.n())}};
  }
  for (const auto& r : type_rows(t.n()))
    if (r.type == t) return r.branches;
  throw InvalidArgument("no branch table for type " + t.str());
}

std::map<std::string, PolyQ> average_branches(const std::vector<TypeRow>& rows, const std::string& node) {
  RatQ total;
  std::map<std::string, RatQ> acc;
  bool any = false;
  for (const auto& r : rows) {
    if (r.node != node) continue;
    any = true;
    total = total + r.probability;
    for (const auto& [t, c] : r.branches) {
      RatQ& a = acc[node_of(t)];
      a = a + r.probability * RatQ(c);
    }
  }
  if (!any) throw InvalidArgument("no types with node " + node);
  if (!(total == RatQ(PolyQ(1))))
    throw InvalidArgument("probabilities of node " + node + " sum to " + total.str() + ", not 1");
  std::map<std::string, PolyQ> out;
  for (const auto& [k, v] : acc) {
    PolyQ p = v.to_poly();
    if (!p.is_zero()) out[k] = p;
  }
  return out;
}

}  // namespace simsim
