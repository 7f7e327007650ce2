#pragma once

// Small finite fields F_q (q = p^e <= 16) and monic polynomials over them.
//
// Elements are the integers 0..q-1.  For prime fields an element is its
// residue; for extensions the element c_0 + c_1 x + ... + c_{e-1} x^{e-1}
// (x a root of the modulus) is packed as sum c_i p^i.  All arithmetic goes
// through precomputed q*q tables.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace simsim {

using Elem = std::uint8_t;

class FieldCtx {
 public:
  struct Tables;

  int q() const { return q_; }
  int p() const { return p_; }
  int e() const { return e_; }
  /// Defining polynomial over F_p, lowest degree first; {0, 1} (i.e. t) for prime fields.
  const std::vector<int>& modulus() const;

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  /// Multiplicative inverse; throws InvalidArgument for 0.
  Elem inv(Elem a) const;

  const Elem* add_table() const { return add_; }
  const Elem* mul_table() const { return mul_; }

  bool operator==(const FieldCtx& o) const { return tables_ == o.tables_; }

 private:
  friend FieldCtx make_field(int q);
  friend std::vector<struct PolyFq> irreducible_monics(const FieldCtx& F, int d);
  explicit FieldCtx(const Tables* t);

  const Tables* tables_ = nullptr;
  const Elem* add_ = nullptr;
  const Elem* mul_ = nullptr;
  const Elem* neg_ = nullptr;
  int q_ = 0;
  int p_ = 0;
  int e_ = 0;
};

/// Field of order q.  Instances are interned: repeated calls share tables,
/// which live for the whole program, so a FieldCtx is a cheap copyable handle.
FieldCtx make_field(int q);

/// Dense polynomial over a FieldCtx in the variable t, lowest degree first.
/// The zero polynomial has no coefficients.
struct PolyFq {
  std::vector<Elem> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  Elem lead() const { return coeffs.empty() ? Elem{0} : coeffs.back(); }
  bool operator==(const PolyFq&) const = default;
};

/// Ordering used for irreducible lists and factor output: by degree, then by
/// packed value sum c_i q^i (i.e. coefficients compared from the top down).
bool poly_less(const PolyFq& a, const PolyFq& b);

PolyFq poly_trim(PolyFq f);
PolyFq poly_add(const FieldCtx& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_sub(const FieldCtx& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_mul(const FieldCtx& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_pow(const FieldCtx& F, const PolyFq& a, int e);
/// Division with remainder by a polynomial with nonzero leading coefficient.
std::pair<PolyFq, PolyFq> poly_divmod(const FieldCtx& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_from_ints(std::span<const int> c);
std::string poly_str(const PolyFq& f);

/// All monic irreducibles of degree d (1 <= d <= 4) in poly_less order.
std::vector<PolyFq> irreducible_monics(const FieldCtx& F, int d);

/// Number of monic irreducibles of degree d over F_q (necklace formula).
long long irreducible_count(long long q, int d);

/// Factorisation of a monic polynomial of degree 1..4 into monic irreducible
/// powers, factors in poly_less order.
std::vector<std::pair<PolyFq, int>> factor_monic(const FieldCtx& F, const PolyFq& f);

}  // namespace simsim
