#include "simsim/typeclass.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <mutex>

namespace simsim {

std::string partition_str(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

namespace {

bool part_order(const PrimaryPart& a, const PrimaryPart& b) {
  if (a.d != b.d) return a.d < b.d;
  return a.lambda > b.lambda;
}

int part_size(const PrimaryPart& p) {
  int s = 0;
  for (int x : p.lambda) s += x;
  return s * p.d;
}

}  // namespace

TypeDescriptor TypeDescriptor::classical(std::vector<PrimaryPart> parts) {
  if (parts.empty()) throw InvalidArgument("classical type needs at least one primary part");
  TypeDescriptor t;
  t.kind_ = TypeKind::Classical;
  for (auto& p : parts) {
    if (p.d < 1 || p.lambda.empty()) throw InvalidArgument("invalid primary part");
    for (int x : p.lambda)
      if (x < 1) throw InvalidArgument("partition parts must be positive");
    std::sort(p.lambda.begin(), p.lambda.end(), std::greater<>());
    t.n_ += part_size(p);
  }
  if (t.n_ > kMaxN) throw InvalidArgument("type size " + std::to_string(t.n_) + " exceeds 4");
  std::sort(parts.begin(), parts.end(), part_order);
  t.parts_ = std::move(parts);
  return t;
}

TypeDescriptor TypeDescriptor::new_type(int tag) {
  if (tag < 1 || tag > 6) throw InvalidArgument("new type tag must be 1..6");
  TypeDescriptor t;
  t.kind_ = TypeKind::NewType;
  t.n_ = 4;
  t.tag_ = tag;
  return t;
}

TypeDescriptor TypeDescriptor::regular(int n) {
  TypeDescriptor t;
  t.kind_ = TypeKind::Regular;
  t.n_ = n;
  return t;
}

TypeDescriptor TypeDescriptor::central(int n) { return classical({{1, Partition(n, 1)}}); }

TypeDescriptor TypeDescriptor::parse(std::string_view s, int n) {
  auto fail = [&](const std::string& why) {
    return InvalidArgument("cannot parse type '" + std::string(s) + "': " + why);
  };
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "Regular") return regular(n);
  if (t.size() == 3 && t.rfind("NT", 0) == 0 && t[2] >= '1' && t[2] <= '6') return new_type(t[2] - '0');
  std::vector<PrimaryPart> parts;
  std::size_t i = 0;
  auto number = [&]() {
    if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i]))) throw fail("expected a number");
    int v = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
      v = v * 10 + (t[i] - '0');
      if (v > 64) throw fail("number too large");
      ++i;
    }
    return v;
  };
  while (i < t.size()) {
    if (!parts.empty() && t[i] == ',') ++i;
    if (i >= t.size() || t[i] != '(') throw fail("expected '('");
    ++i;
    PrimaryPart p;
    p.lambda.push_back(number());
    while (i < t.size() && t[i] == ',') {
      ++i;
      p.lambda.push_back(number());
    }
    if (i >= t.size() || t[i] != ')') throw fail("expected ')'");
    ++i;
    if (i >= t.size() || t[i] != '_') throw fail("expected '_'");
    ++i;
    p.d = number();
    parts.push_back(std::move(p));
  }
  if (parts.empty()) throw fail("empty");
  return classical(std::move(parts));
}

bool TypeDescriptor::is_regular() const {
  if (kind_ == TypeKind::Regular) return true;
  if (kind_ != TypeKind::Classical) return false;
  return std::all_of(parts_.begin(), parts_.end(), [](const PrimaryPart& p) { return p.lambda.size() == 1; });
}

bool TypeDescriptor::is_central() const {
  return kind_ == TypeKind::Classical && parts_.size() == 1 && parts_[0].d == 1 &&
         parts_[0].lambda == Partition(n_, 1);
}

std::string TypeDescriptor::str() const {
  switch (kind_) {
    case TypeKind::NewType:
      return "NT" + std::to_string(tag_);
    case TypeKind::Regular:
      return "Regular";
    case TypeKind::Classical:
      break;
  }
  std::string s;
  for (const auto& p : parts_) s += partition_str(p.lambda) + "_" + std::to_string(p.d);
  return s;
}

std::tuple<int, int, std::vector<std::pair<int, Partition>>, int> TypeDescriptor::key() const {
  std::vector<std::pair<int, Partition>> k;
  for (const auto& p : parts_) k.emplace_back(p.d, p.lambda);
  return {static_cast<int>(kind_), n_, std::move(k), tag_};
}

std::string ClassLabel::str() const {
  std::string s;
  for (const auto& [p, lam] : parts) {
    if (!s.empty()) s += "; ";
    s += poly_str(p) + ":" + partition_str(lam);
  }
  return s;
}

std::pair<ClassLabel, TypeDescriptor> classify_matrix(const Matrix& A) {
  const FieldCtx& F = A.field();
  const int n = A.n();
  ClassLabel label;
  std::vector<PrimaryPart> parts;
  for (const auto& [p, mult] : factor_monic(F, char_poly(A))) {
    const int d = p.degree();
    const Matrix P = poly_eval(p, A);
    Matrix Pi = Matrix::identity(F, n);
    // ge[i-1] = number of parts >= i.
    std::vector<int> ge;
    int prev = 0;
    for (int i = 1; i <= mult; ++i) {
      Pi = Pi * P;
      const int k = n - rank(Pi);
      if ((k - prev) % d != 0) throw ConsistencyError("kernel dimensions not divisible by the degree");
      if (k == prev) break;
      ge.push_back((k - prev) / d);
      prev = k;
    }
    Partition lam;
    for (int j = 1; !ge.empty() && j <= ge[0]; ++j) {
      int c = 0;
      for (int g : ge)
        if (g >= j) ++c;
      lam.push_back(c);
    }
    label.parts.emplace_back(p, lam);
    parts.push_back({d, lam});
  }
  return {label, TypeDescriptor::classical(std::move(parts))};
}

Partition rcf_type(const TypeDescriptor& desc) {
  if (!desc.is_classical()) throw InvalidArgument("rcf type is only defined for classical types, not " + desc.str());
  Partition l;
  for (const auto& p : desc.parts()) {
    if (l.size() < p.lambda.size()) l.resize(p.lambda.size(), 0);
    for (std::size_t j = 0; j < p.lambda.size(); ++j) l[j] += p.lambda[j] * p.d;
  }
  return l;
}

namespace {

Matrix block_diag(const FieldCtx& F, const std::vector<Matrix>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.n();
  Matrix M(F, n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.n(); ++i)
      for (int j = 0; j < b.n(); ++j) M(off + i, off + j) = b(i, j);
    off += b.n();
  }
  return M;
}

// Superdiagonal ones, last row minus the low coefficients of monic f.
Matrix companion(const FieldCtx& F, const PolyFq& f) {
  const int m = f.degree();
  Matrix C(F, m);
  for (int i = 0; i + 1 < m; ++i) C(i, i + 1) = 1;
  for (int j = 0; j < m; ++j) C(m - 1, j) = F.neg(f.coeffs[j]);
  return C;
}

// Primary blocks of an irreducible p with partition lam.
std::vector<Matrix> primary_blocks(const FieldCtx& F, const PolyFq& p, const Partition& lam) {
  std::vector<Matrix> out;
  for (int m : lam) {
    if (p.degree() == 1) {
      Matrix J = Matrix::scalar(F, m, F.neg(p.coeffs[0]));
      for (int i = 0; i + 1 < m; ++i) J(i, i + 1) = 1;
      out.push_back(J);
    } else {
      out.push_back(companion(F, poly_pow(F, p, m)));
    }
  }
  return out;
}

// Map each part to an irreducible of its degree: distinct, smallest first, or
// (when distinct == false) always the smallest.
std::optional<std::vector<PolyFq>> choose_irreducibles(const TypeDescriptor& desc, const FieldCtx& F, bool distinct) {
  std::map<int, std::size_t> used;
  std::vector<PolyFq> out;
  for (const auto& p : desc.parts()) {
    const auto irr = irreducible_monics(F, p.d);
    std::size_t& u = used[p.d];
    const std::size_t idx = distinct ? u++ : 0;
    if (idx >= irr.size()) return std::nullopt;
    out.push_back(irr[idx]);
  }
  return out;
}

Matrix upper_block(const FieldCtx& F, const std::vector<std::vector<int>>& D) {
  // Block basis (e1, e2 | e3, e4), conjugated by the swap of e2 and e3 so
  // that [[0, I], [0, 0]] becomes J_2(0) + J_2(0).
  static const int s[4] = {0, 2, 1, 3};
  Matrix M(F, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) M(s[r], s[c + 2]) = static_cast<Elem>(((D[r][c] % F.q()) + F.q()) % F.q());
  return M;
}

std::vector<Matrix> new_type_rep(int tag, const FieldCtx& F) {
  auto E = [&](int i, int j) { return Matrix::unit(F, 4, i, j); };
  const Matrix A = E(1, 2) + E(3, 4);
  switch (tag) {
    case 1:
      return {A, upper_block(F, {{0, 1}, {0, 0}})};
    case 2: {
      const PolyFq p = irreducible_monics(F, 2).front();
      Matrix D = companion(F, p);
      return {A, upper_block(F, {{D(0, 0), D(0, 1)}, {D(1, 0), D(1, 1)}})};
    }
    case 3:
      return {A, upper_block(F, {{0, 0}, {0, 1}})};
    case 4:
      return {E(1, 2), E(1, 4)};
    case 5:
      return {E(1, 2), E(4, 2)};
    case 6:
      return {A, upper_block(F, {{0, 1}, {0, 0}}), upper_block(F, {{0, 0}, {1, 0}})};
    default:
      throw InvalidArgument("bad new type tag");
  }
}

}  // namespace

std::vector<Matrix> representative(const TypeDescriptor& desc, const FieldCtx& F) {
  switch (desc.kind()) {
    case TypeKind::NewType:
      return new_type_rep(desc.tag(), F);
    case TypeKind::Regular:
      throw InvalidArgument("the generic Regular type has no canonical representative");
    case TypeKind::Classical:
      break;
  }
  const auto irr = choose_irreducibles(desc, F, true);
  if (!irr)
    throw InfeasibleError("type " + desc.str() + " needs more distinct irreducibles than F_" + std::to_string(F.q()) +
                          " has");
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < desc.parts().size(); ++i) {
    auto b = primary_blocks(F, (*irr)[i], desc.parts()[i].lambda);
    blocks.insert(blocks.end(), b.begin(), b.end());
  }
  return {block_diag(F, blocks)};
}

std::vector<Matrix> tuple_representative(const TypeDescriptor& desc, const FieldCtx& F) {
  try {
    return representative(desc, F);
  } catch (const InfeasibleError&) {
  }
  const auto irr = choose_irreducibles(desc, F, false);
  std::vector<Matrix> blocks;
  std::vector<std::pair<int, int>> ranges;
  int off = 0;
  for (std::size_t i = 0; i < desc.parts().size(); ++i) {
    auto b = primary_blocks(F, (*irr)[i], desc.parts()[i].lambda);
    const int start = off;
    for (const auto& m : b) off += m.n();
    ranges.emplace_back(start, off);
    blocks.insert(blocks.end(), b.begin(), b.end());
  }
  std::vector<Matrix> tuple{block_diag(F, blocks)};
  for (const auto& [a, b] : ranges) {
    Matrix P(F, desc.n());
    for (int i = a; i < b; ++i) P(i, i) = 1;
    tuple.push_back(P);
  }
  return tuple;
}

namespace {

// Incrementally maintained echelon basis of a subspace of F^N.
class Span {
 public:
  Span(const FieldCtx& F, int N) : F_(F), N_(N) {}
  std::vector<Elem> reduce(std::vector<Elem> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Elem c = v[piv_[r]];
      if (c == 0) continue;
      for (int j = 0; j < N_; ++j) v[j] = F_.sub(v[j], F_.mul(c, rows_[r][j]));
    }
    return v;
  }
  bool add(std::vector<Elem> v) {
    v = reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < N_; ++j)
      if (v[j] != 0) {
        p = j;
        break;
      }
    if (p < 0) return false;
    const Elem inv = F_.inv(v[p]);
    for (auto& x : v) x = F_.mul(inv, x);
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }
  bool contains(const std::vector<Elem>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
  }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<Elem>>& rows() const { return rows_; }

 private:
  FieldCtx F_;
  int N_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<int> piv_;
};

std::optional<std::vector<int>> nil_chain(const Subalgebra& Z, const std::vector<Matrix>& basis, const Span& V,
                                          std::uint64_t nilpotent_count) {
  const FieldCtx& F = Z.field();
  const int n = Z.n();
  std::uint64_t size = 1;
  for (int i = 0; i < V.dim(); ++i) size *= F.q();
  if (size != nilpotent_count) return std::nullopt;
  std::vector<Matrix> vb;
  for (const auto& r : V.rows()) vb.push_back(Matrix::from_flat(F, n, r));
  for (const auto& b : basis)
    for (const auto& v : vb)
      if (!V.contains((b * v).flat()) || !V.contains((v * b).flat())) return std::nullopt;
  std::vector<int> chain{V.dim()};
  std::vector<Matrix> cur = vb;
  while (!cur.empty()) {
    Span next(F, n * n);
    for (const auto& v : vb)
      for (const auto& u : cur) next.add((v * u).flat());
    if (next.dim() >= static_cast<int>(cur.size())) return std::nullopt;
    chain.push_back(next.dim());
    cur.clear();
    for (const auto& r : next.rows()) cur.push_back(Matrix::from_flat(F, n, r));
  }
  return chain;
}

}  // namespace

std::string Fingerprint::str() const {
  std::string s = "{dim=" + std::to_string(dim) + ", commutative=" + (commutative ? "true" : "false") +
                  ", center_dim=" + std::to_string(center_dim) + ", units=" + std::to_string(unit_count) +
                  ", nilpotents=" + std::to_string(nilpotent_count) +
                  ", idempotents=" + std::to_string(idempotent_count) + ", nil_ideal_chain=";
  if (nil_ideal_chain)
    s += partition_str(*nil_ideal_chain);
  else
    s += "absent";
  s += ", ideal_profile=[";
  bool first = true;
  for (const auto& [k, v] : ideal_profile) {
    if (!first) s += ",";
    first = false;
    s += "(" + std::to_string(k.first) + "," + std::to_string(k.second) + "):" + std::to_string(v);
  }
  return s + "]}";
}

Fingerprint fingerprint(const Subalgebra& Z) {
  const FieldCtx& F = Z.field();
  const int n = Z.n();
  const int N = n * n;
  const std::uint64_t total = Z.size_checked(1ull << 20);
  const auto basis = Z.basis();
  Fingerprint fp;
  fp.dim = Z.dim();
  Subalgebra C = Z;
  for (const auto& b : basis) C = C.intersect_centralizer(b);
  fp.center_dim = C.dim();
  fp.commutative = fp.center_dim == fp.dim;
  Span nil(F, N);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Matrix X = Z.element_at(idx);
    if (invertible(X)) ++fp.unit_count;
    const Matrix X2 = X * X;
    if (X2 == X) ++fp.idempotent_count;
    if (power(X, n).is_zero()) {
      ++fp.nilpotent_count;
      if (nil.dim() < fp.dim) nil.add(X.flat());
    }
    std::vector<std::vector<Elem>> left, right;
    left.reserve(basis.size());
    right.reserve(basis.size());
    for (const auto& b : basis) {
      left.push_back((b * X).flat());
      right.push_back((X * b).flat());
    }
    ++fp.ideal_profile[{rank_of(F, std::move(left)), rank_of(F, std::move(right))}];
  }
  fp.nil_ideal_chain = nil_chain(Z, basis, nil, fp.nilpotent_count);
  return fp;
}

std::vector<TypeDescriptor> classical_types(int n) {
  // Candidate primary parts (d, lambda) of size <= n, then multisets of them.
  std::vector<PrimaryPart> cand;
  std::vector<std::vector<Partition>> parts_of(n + 1);
  parts_of[0] = {{}};
  for (int m = 1; m <= n; ++m) {
    std::vector<Partition> ps;
    std::function<void(int, int, Partition&)> rec = [&](int rest, int maxp, Partition& cur) {
      if (rest == 0) {
        ps.push_back(cur);
        return;
      }
      for (int x = std::min(rest, maxp); x >= 1; --x) {
        cur.push_back(x);
        rec(rest - x, x, cur);
        cur.pop_back();
      }
    };
    Partition cur;
    rec(m, m, cur);
    parts_of[m] = ps;
  }
  for (int d = 1; d <= n; ++d)
    for (int m = 1; d * m <= n; ++m)
      for (const auto& lam : parts_of[m]) cand.push_back({d, lam});
  std::vector<TypeDescriptor> out;
  std::vector<PrimaryPart> chosen;
  std::function<void(std::size_t, int)> pick = [&](std::size_t start, int rest) {
    if (rest == 0) {
      out.push_back(TypeDescriptor::classical(chosen));
      return;
    }
    for (std::size_t i = start; i < cand.size(); ++i) {
      const int s = part_size(cand[i]);
      if (s > rest) continue;
      chosen.push_back(cand[i]);
      pick(i, rest - s);
      chosen.pop_back();
    }
  };
  pick(0, n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PolyQ class_count(const TypeDescriptor& desc) {
  if (!desc.is_classical()) return PolyQ(0);
  // Irreducibles of each degree are assigned injectively to the parts of
  // that degree, up to permuting identical parts.
  std::map<int, std::vector<Partition>> by_degree;
  for (const auto& p : desc.parts()) by_degree[p.d].push_back(p.lambda);
  PolyQ total(1);
  for (const auto& [d, lams] : by_degree) {
    PolyQ Nd;
    for (int e = 1; e <= d; ++e) {
      if (d % e != 0) continue;
      int m = d / e, mu = 1;
      for (int p = 2; p <= m; ++p)
        if (m % p == 0) {
          m /= p;
          mu = (m % p == 0) ? 0 : -mu;
        }
      Nd += PolyQ::monomial(e, mpq_class(mu, d));
    }
    for (std::size_t i = 0; i < lams.size(); ++i) total *= Nd - PolyQ(static_cast<long>(i));
    std::map<Partition, int> mult;
    for (const auto& l : lams) ++mult[l];
    for (const auto& [l, m] : mult)
      for (int i = 2; i <= m; ++i) total *= mpq_class(1, i);
  }
  return total;
}

namespace {

std::vector<CatalogEntry> build_catalog(int n, const FieldCtx& F) {
  std::vector<TypeDescriptor> types = classical_types(n);
  if (n == 4)
    for (int t = 1; t <= 6; ++t) types.push_back(TypeDescriptor::new_type(t));
  std::vector<CatalogEntry> out;
  for (const auto& t : types) {
    CatalogEntry e{t, {}, false, 0, std::nullopt, class_count(t)};
    try {
      e.rep = representative(t, F);
      e.single_matrix = t.is_classical();
    } catch (const InfeasibleError&) {
      e.rep = tuple_representative(t, F);
    }
    const Subalgebra Z = centralizer_basis(e.rep);
    e.centralizer_dim = Z.dim();
    try {
      e.fingerprint = fingerprint(Z);
    } catch (const ResourceError&) {
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog(int n, const FieldCtx& F) {
  if (n < 1 || n > kMaxN) throw InvalidArgument("catalog size must be 1..4");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<CatalogEntry>>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({n, F.q()});
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<std::vector<CatalogEntry>>(build_catalog(n, F));
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(n, F.q()), std::move(built));
  return *it->second;
}

TypeDescriptor classify_centralizer(const Subalgebra& Z) {
  const int n = Z.n();
  if (Z.dim() == n * n) return TypeDescriptor::central(n);
  const Fingerprint fp = fingerprint(Z);
  const TypeDescriptor* match = nullptr;
  for (const auto& e : catalog(n, Z.field())) {
    if (!e.fingerprint || !(*e.fingerprint == fp)) continue;
    if (match) throw ConsistencyError("fingerprint matches both " + match->str() + " and " + e.type.str());
    match = &e.type;
  }
  if (match) return *match;
  if (fp.commutative && fp.dim == n) return TypeDescriptor::regular(n);
  throw UnknownTypeError(fp);
}

TypeDescriptor classify_tuple(const std::vector<Matrix>& tuple) {
  return classify_centralizer(centralizer_basis(tuple));
}

}  // namespace simsim
