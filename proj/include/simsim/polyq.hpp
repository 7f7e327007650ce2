#pragma once

// Polynomials in the symbol q with exact rational coefficients, quotients of
// such polynomials (probabilities), truncated power series in t, and the
// closed-form generating functions h_n(q, t) for n = 2, 3, 4.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simsim {

class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(long c);  // NOLINT: constants convert implicitly
  static PolyQ monomial(int e, const mpq_class& c = 1);
  static PolyQ q() { return monomial(1); }
  /// Parse the rendering produced by str(); throws InvalidArgument.
  static PolyQ parse(std::string_view s);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  mpq_class coeff(int e) const;
  const std::vector<mpq_class>& coeffs() const { return c_; }

  /// True when every coefficient is an integer.
  bool integral() const;
  bool nonnegative() const;

  PolyQ& operator+=(const PolyQ& o);
  PolyQ& operator-=(const PolyQ& o);
  PolyQ& operator*=(const PolyQ& o);
  PolyQ& operator*=(const mpq_class& s);
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(PolyQ a, const PolyQ& b) { return a *= b; }
  friend PolyQ operator*(PolyQ a, const mpq_class& s) { return a *= s; }
  PolyQ operator-() const;
  bool operator==(const PolyQ& o) const { return c_ == o.c_; }

  mpq_class eval(const mpq_class& x) const;
  /// Exact integer value at q = q0; throws ConsistencyError if not integral there.
  mpz_class eval_at(long q0) const;

  /// "q^6 + q^5 + 2*q^4 + q^3 + 2*q^2"; rational coefficients as "1/2*q^2".
  std::string str() const;

 private:
  void trim();
  std::vector<mpq_class> c_;  // lowest degree first, no trailing zeros
};

/// Exact quotient a / b; throws ConsistencyError if b does not divide a.
PolyQ divide_exact(const PolyQ& a, const PolyQ& b);

/// A quotient num/den of polynomials, compared by cross-multiplication.
struct RatQ {
  PolyQ num{0};
  PolyQ den{1};

  RatQ() = default;
  RatQ(PolyQ n) : num(std::move(n)) {}  // NOLINT
  RatQ(PolyQ n, PolyQ d);

  friend RatQ operator+(const RatQ& a, const RatQ& b);
  friend RatQ operator*(const RatQ& a, const RatQ& b);
  bool operator==(const RatQ& o) const { return num * o.den == o.num * den; }
  /// The polynomial this quotient equals; throws ConsistencyError otherwise.
  PolyQ to_poly() const { return divide_exact(num, den); }
  std::string str() const;
};

/// Truncated power series in t: entry k is the coefficient of t^k.
using SeriesQ = std::vector<PolyQ>;

/// numerator(t) / prod_i (1 - q^{a_i} t).
struct RationalGF {
  SeriesQ numerator;
  std::vector<int> denominator;

  /// Power-series expansion through t^K.
  SeriesQ expand(int K) const;
  /// series * prod_i (1 - q^{a_i} t), truncated at t^K.
  SeriesQ times_denominator(const SeriesQ& series, int K) const;
  std::string str() const;
};

/// Closed-form generating function of c_{n,k}(q) for n in {2, 3, 4}.
RationalGF closed_form(int n);

struct GFReport {
  int n = 0;
  int kmax = 0;
  bool verified = false;
  /// First power of t where series * denominator differs from the numerator.
  std::optional<int> first_mismatch;
  PolyQ expected;
  PolyQ actual;
};

/// Expand sum_k count(n, k) t^k to order kmax from the branching matrices,
/// multiply by the closed-form denominator and compare with the numerator.
GFReport verify_closed_form(int n, int kmax);

}  // namespace simsim
