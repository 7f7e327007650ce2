#include "simsim/gfield.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>

#include "simsim/error.hpp"

namespace simsim {

struct FieldCtx::Tables {
  int q = 0;
  int p = 0;
  int e = 0;
  std::vector<int> modulus;
  std::vector<Elem> add;
  std::vector<Elem> mul;
  std::vector<Elem> neg;
  std::vector<Elem> inv;
  mutable std::array<std::once_flag, 5> irr_once;
  mutable std::array<std::vector<PolyFq>, 5> irr;
};

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p as int vectors, lowest degree first; used only while
// building extension tables.
std::vector<int> fp_mod(std::vector<int> a, const std::vector<int>& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;  // m monic
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    int c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), dm));
  return a;
}

bool fp_irreducible(const std::vector<int>& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    int total = 1;
    for (int i = 0; i < dd; ++i) total *= p;
    for (int idx = 0; idx < total; ++idx) {
      std::vector<int> g(dd + 1, 0);
      int v = idx;
      for (int i = 0; i < dd; ++i) {
        g[i] = v % p;
        v /= p;
      }
      g[dd] = 1;
      auto r = fp_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; })) return false;
    }
  }
  return true;
}

std::unique_ptr<FieldCtx::Tables> build_tables(int q) {
  if (q < 2 || q > 16) throw InvalidArgument("field order " + std::to_string(q) + " out of range 2..16");
  int p = 0;
  for (int c = 2; c <= q; ++c)
    if (q % c == 0) {
      p = c;
      break;
    }
  int e = 0;
  for (int v = q; v > 1; v /= p) {
    if (v % p != 0) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    ++e;
  }
  if (!is_prime(p)) throw InvalidArgument(std::to_string(q) + " is not a prime power");

  auto t = std::make_unique<FieldCtx::Tables>();
  t->q = q;
  t->p = p;
  t->e = e;
  if (e == 1) {
    t->modulus = {0, 1};
  } else {
    // Smallest packed value among monic irreducibles of degree e.
    int total = 1;
    for (int i = 0; i < e; ++i) total *= p;
    for (int idx = 0; idx < total; ++idx) {
      std::vector<int> f(e + 1, 0);
      int v = idx;
      for (int i = 0; i < e; ++i) {
        f[i] = v % p;
        v /= p;
      }
      f[e] = 1;
      if (fp_irreducible(f, p)) {
        t->modulus = f;
        break;
      }
    }
  }

  auto unpack = [&](int a) {
    std::vector<int> c(e, 0);
    for (int i = 0; i < e; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  };
  auto pack = [&](const std::vector<int>& c) {
    int v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
    return v;
  };

  t->add.resize(q * q);
  t->mul.resize(q * q);
  t->neg.resize(q);
  t->inv.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    auto ca = unpack(a);
    std::vector<int> cn(e);
    for (int i = 0; i < e; ++i) cn[i] = (p - ca[i]) % p;
    t->neg[a] = static_cast<Elem>(pack(cn));
    for (int b = 0; b < q; ++b) {
      auto cb = unpack(b);
      std::vector<int> s(e);
      for (int i = 0; i < e; ++i) s[i] = (ca[i] + cb[i]) % p;
      t->add[a * q + b] = static_cast<Elem>(pack(s));
      std::vector<int> prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      if (e > 1) prod = fp_mod(prod, t->modulus, p);
      prod.resize(e, 0);
      t->mul[a * q + b] = static_cast<Elem>(pack(prod));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (t->mul[a * q + b] == 1) t->inv[a] = static_cast<Elem>(b);
  return t;
}

}  // namespace

FieldCtx::FieldCtx(const Tables* t)
    : tables_(t), add_(t->add.data()), mul_(t->mul.data()), neg_(t->neg.data()), q_(t->q), p_(t->p), e_(t->e) {}

const std::vector<int>& FieldCtx::modulus() const { return tables_->modulus; }

Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw InvalidArgument("inverse of zero");
  return tables_->inv[a];
}

FieldCtx make_field(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldCtx::Tables>> interned;
  std::lock_guard lock(mu);
  auto it = interned.find(q);
  if (it == interned.end()) it = interned.emplace(q, build_tables(q)).first;
  return FieldCtx(it->second.get());
}

bool poly_less(const PolyFq& a, const PolyFq& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
  return false;
}

PolyFq poly_trim(PolyFq f) {
  while (!f.coeffs.empty() && f.coeffs.back() == 0) f.coeffs.pop_back();
  return f;
}

PolyFq poly_add(const FieldCtx& F, const PolyFq& a, const PolyFq& b) {
  PolyFq r;
  r.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    Elem x = i < a.coeffs.size() ? a.coeffs[i] : Elem{0};
    Elem y = i < b.coeffs.size() ? b.coeffs[i] : Elem{0};
    r.coeffs[i] = F.add(x, y);
  }
  return poly_trim(std::move(r));
}

PolyFq poly_sub(const FieldCtx& F, const PolyFq& a, const PolyFq& b) {
  PolyFq nb = b;
  for (auto& c : nb.coeffs) c = F.neg(c);
  return poly_add(F, a, nb);
}

PolyFq poly_mul(const FieldCtx& F, const PolyFq& a, const PolyFq& b) {
  if (a.is_zero() || b.is_zero()) return {};
  PolyFq r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r.coeffs[i + j] = F.add(r.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
  return poly_trim(std::move(r));
}

PolyFq poly_pow(const FieldCtx& F, const PolyFq& a, int e) {
  PolyFq r{{1}};
  for (int i = 0; i < e; ++i) r = poly_mul(F, r, a);
  return r;
}

std::pair<PolyFq, PolyFq> poly_divmod(const FieldCtx& F, const PolyFq& a, const PolyFq& b) {
  if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
  PolyFq r = poly_trim(a);
  PolyFq quo;
  const int db = b.degree();
  if (r.degree() < db) return {quo, r};
  quo.coeffs.assign(r.degree() - db + 1, 0);
  const Elem linv = F.inv(b.lead());
  while (!r.is_zero() && r.degree() >= db) {
    const int shift = r.degree() - db;
    const Elem c = F.mul(r.lead(), linv);
    quo.coeffs[shift] = c;
    for (int j = 0; j <= db; ++j)
      r.coeffs[shift + j] = F.sub(r.coeffs[shift + j], F.mul(c, b.coeffs[j]));
    r = poly_trim(std::move(r));
  }
  return {poly_trim(std::move(quo)), r};
}

PolyFq poly_from_ints(std::span<const int> c) {
  PolyFq f;
  for (int v : c) f.coeffs.push_back(static_cast<Elem>(v));
  return poly_trim(std::move(f));
}

std::string poly_str(const PolyFq& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    const int c = f.coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

std::vector<PolyFq> compute_irreducibles(const FieldCtx& F, int d) {
  const int q = F.q();
  std::vector<PolyFq> lower;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    auto v = irreducible_monics(F, dd);
    lower.insert(lower.end(), v.begin(), v.end());
  }
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  std::vector<PolyFq> out;
  for (long long idx = 0; idx < total; ++idx) {
    PolyFq f;
    f.coeffs.assign(d + 1, 0);
    long long v = idx;
    for (int i = 0; i < d; ++i) {
      f.coeffs[i] = static_cast<Elem>(v % q);
      v /= q;
    }
    f.coeffs[d] = 1;
    bool irreducible = true;
    for (const auto& g : lower)
      if (poly_divmod(F, f, g).second.is_zero()) {
        irreducible = false;
        break;
      }
    if (irreducible) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<PolyFq> irreducible_monics(const FieldCtx& F, int d) {
  if (d < 1 || d > 4) throw InvalidArgument("irreducible degree " + std::to_string(d) + " out of range 1..4");
  const auto* t = F.tables_;
  std::call_once(t->irr_once[d], [&] { t->irr[d] = compute_irreducibles(F, d); });
  return t->irr[d];
}

long long irreducible_count(long long q, int d) {
  auto mobius = [](int m) {
    int r = 1;
    for (int p = 2; p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        r = -r;
      }
    return r;
  };
  long long s = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    long long pw = 1;
    for (int i = 0; i < e; ++i) pw *= q;
    s += mobius(d / e) * pw;
  }
  return s / d;
}

std::vector<std::pair<PolyFq, int>> factor_monic(const FieldCtx& F, const PolyFq& f0) {
  PolyFq f = poly_trim(f0);
  if (f.degree() < 1 || f.degree() > 4) throw InvalidArgument("factor_monic needs degree 1..4");
  if (f.lead() != 1) throw InvalidArgument("factor_monic needs a monic polynomial");
  std::vector<std::pair<PolyFq, int>> out;
  for (int d = 1; d <= 2 && f.degree() >= d; ++d) {
    for (const auto& g : irreducible_monics(F, d)) {
      int mult = 0;
      while (f.degree() >= d) {
        auto [quo, rem] = poly_divmod(F, f, g);
        if (!rem.is_zero()) break;
        f = quo;
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
    }
  }
  // Anything left has no factor of degree <= 2, hence is irreducible.
  if (f.degree() >= 1) out.emplace_back(f, 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

}  // namespace simsim
