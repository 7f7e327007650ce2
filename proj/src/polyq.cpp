#include "simsim/polyq.hpp"

#include <cctype>

#include "simsim/branching.hpp"
#include "simsim/error.hpp"

namespace simsim {

PolyQ::PolyQ(long c) {
  if (c != 0) c_.emplace_back(c);
}

PolyQ PolyQ::monomial(int e, const mpq_class& c) {
  PolyQ r;
  if (c == 0) return r;
  r.c_.assign(e + 1, mpq_class(0));
  r.c_[e] = c;
  return r;
}

void PolyQ::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class PolyQ::coeff(int e) const {
  if (e < 0 || e >= static_cast<int>(c_.size())) return 0;
  return c_[e];
}

bool PolyQ::integral() const {
  for (const auto& c : c_)
    if (c.get_den() != 1) return false;
  return true;
}

bool PolyQ::nonnegative() const {
  for (const auto& c : c_)
    if (c < 0) return false;
  return true;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

PolyQ& PolyQ::operator*=(const PolyQ& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

PolyQ& PolyQ::operator*=(const mpq_class& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

PolyQ PolyQ::operator-() const {
  PolyQ r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

mpq_class PolyQ::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

mpz_class PolyQ::eval_at(long q0) const {
  mpq_class v = eval(mpq_class(q0));
  if (v.get_den() != 1) throw ConsistencyError(str() + " is not an integer at q=" + std::to_string(q0));
  return v.get_num();
}

std::string PolyQ::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = c_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    mpq_class a = abs(c);
    if (out.empty())
      out = neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (i == 0) {
      out += a.get_str();
      continue;
    }
    if (a != 1) out += a.get_str() + "*";
    out += "q";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool digit() {
    ws();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  std::string digits() {
    ws();
    std::size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return std::string(s.substr(b, i - b));
  }
  bool done() {
    ws();
    return i == s.size();
  }
};

}  // namespace

PolyQ PolyQ::parse(std::string_view s) {
  Cursor cur{s};
  auto fail = [&] {
    return InvalidArgument("cannot parse polynomial '" + std::string(s) + "' at offset " + std::to_string(cur.i));
  };
  if (cur.done()) throw fail();
  PolyQ out;
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    if (cur.eat('-'))
      sign = -1;
    else if (!cur.eat('+') && !first)
      throw fail();
    first = false;
    mpq_class coef = 1;
    bool have_coef = false;
    if (cur.digit()) {
      std::string num = cur.digits();
      if (cur.eat('/')) {
        if (!cur.digit()) throw fail();
        const std::string den = cur.digits();
        if (den.find_first_not_of('0') == std::string::npos) throw fail();
        num += "/" + den;
      }
      coef = mpq_class(num);
      coef.canonicalize();
      have_coef = true;
    }
    int e = 0;
    if (have_coef && cur.eat('*')) {
      if (!cur.eat('q')) throw fail();
      e = 1;
    } else if (cur.eat('q')) {
      e = 1;
    } else if (!have_coef) {
      throw fail();
    }
    if (e == 1 && cur.eat('^')) {
      if (!cur.digit()) throw fail();
      const std::string ds = cur.digits();
      if (ds.size() > 6) throw fail();
      e = std::stoi(ds);
    }
    out += monomial(e, coef * sign);
  }
  return out;
}

PolyQ divide_exact(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw ConsistencyError("division by the zero polynomial");
  PolyQ rem = a;
  PolyQ quo;
  const int db = b.degree();
  const mpq_class lead = b.coeff(db);
  while (!rem.is_zero() && rem.degree() >= db) {
    const int shift = rem.degree() - db;
    PolyQ t = PolyQ::monomial(shift, rem.coeff(rem.degree()) / lead);
    quo += t;
    rem -= t * b;
  }
  if (!rem.is_zero()) throw ConsistencyError("(" + b.str() + ") does not divide (" + a.str() + ")");
  return quo;
}

RatQ::RatQ(PolyQ n, PolyQ d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw InvalidArgument("zero denominator");
}

RatQ operator+(const RatQ& a, const RatQ& b) {
  if (a.den == b.den) return RatQ(a.num + b.num, a.den);
  return RatQ(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatQ operator*(const RatQ& a, const RatQ& b) { return RatQ(a.num * b.num, a.den * b.den); }

std::string RatQ::str() const {
  if (den == PolyQ(1)) return num.str();
  return "(" + num.str() + ")/(" + den.str() + ")";
}

SeriesQ RationalGF::expand(int K) const {
  SeriesQ s(K + 1);
  for (int k = 0; k <= K && k < static_cast<int>(numerator.size()); ++k) s[k] = numerator[k];
  // Divide by each (1 - q^a t): s_k <- s_k + q^a s_{k-1}.
  for (int a : denominator) {
    const PolyQ qa = PolyQ::monomial(a);
    for (int k = 1; k <= K; ++k) s[k] += qa * s[k - 1];
  }
  return s;
}

SeriesQ RationalGF::times_denominator(const SeriesQ& series, int K) const {
  SeriesQ s(K + 1);
  for (int k = 0; k <= K && k < static_cast<int>(series.size()); ++k) s[k] = series[k];
  for (int a : denominator) {
    const PolyQ qa = PolyQ::monomial(a);
    for (int k = K; k >= 1; --k) s[k] -= qa * s[k - 1];
  }
  return s;
}

std::string RationalGF::str() const {
  std::string num;
  for (std::size_t k = 0; k < numerator.size(); ++k) {
    if (numerator[k].is_zero()) continue;
    if (!num.empty()) num += " + ";
    std::string c = numerator[k].str();
    if (k == 0) {
      num += c;
      continue;
    }
    std::string t = k == 1 ? "t" : "t^" + std::to_string(k);
    num += c == "1" ? t : "(" + c + ")*" + t;
  }
  if (num.empty()) num = "0";
  std::string den;
  for (int a : denominator) {
    if (!den.empty()) den += "*";
    den += a == 1 ? "(1 - q*t)" : "(1 - q^" + std::to_string(a) + "*t)";
  }
  return "(" + num + ")/(" + den + ")";
}

RationalGF closed_form(int n) {
  const PolyQ q = PolyQ::q();
  auto m = [](int e, long c = 1) { return PolyQ::monomial(e, c); };
  RationalGF g;
  switch (n) {
    case 2:
      g.numerator = {PolyQ(1)};
      g.denominator = {1, 2};
      break;
    case 3:
      g.numerator = {PolyQ(1), PolyQ(0), m(2)};
      g.denominator = {1, 2, 3};
      break;
    case 4: {
      const SeriesQ rplus = {PolyQ(1), m(2), m(2, 2) + m(3) + m(4, 2), m(6)};
      const SeriesQ rminus = {PolyQ(0), m(5), m(7), m(3) + m(7, 2) + m(9, 2), m(10)};
      g.numerator.resize(5);
      for (std::size_t k = 0; k < 5; ++k)
        g.numerator[k] = (k < rplus.size() ? rplus[k] : PolyQ(0)) - rminus[k];
      g.denominator = {1, 2, 3, 4, 5};
      break;
    }
    default:
      throw InvalidArgument("closed form only for n in {2,3,4}, got " + std::to_string(n));
  }
  return g;
}

GFReport verify_closed_form(int n, int kmax) {
  if (kmax < 1) throw InvalidArgument("kmax must be >= 1");
  const RationalGF g = closed_form(n);
  SeriesQ series = count_series(n, kmax);
  SeriesQ prod = g.times_denominator(series, kmax);
  GFReport r;
  r.n = n;
  r.kmax = kmax;
  r.verified = true;
  for (int k = 0; k <= kmax; ++k) {
    PolyQ want = k < static_cast<int>(g.numerator.size()) ? g.numerator[k] : PolyQ(0);
    if (prod[k] != want) {
      r.verified = false;
      r.first_mismatch = k;
      r.expected = want;
      r.actual = prod[k];
      break;
    }
  }
  return r;
}

}  // namespace simsim
