#include "simsim/partcert.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "simsim/branching.hpp"
#include "simsim/error.hpp"

namespace simsim {

PartitionTable::PartitionTable(int kmax) : kmax_(kmax) {
  if (kmax < 0) throw InvalidArgument("kmax must be >= 0");
  // Coefficient of q^j t^k in prod_{i=1..5} 1/(1 - q^i t): each factor adds
  // any number of parts equal to i.
  const int J = 5 * kmax;
  p_.assign(kmax + 1, std::vector<std::int64_t>(J + 1, 0));
  p_[0][0] = 1;
  for (int part = 1; part <= 5; ++part)
    for (int k = 1; k <= kmax; ++k)
      for (int j = part; j <= J; ++j) p_[k][j] += p_[k - 1][j - part];
}

std::int64_t PartitionTable::operator()(int j, int k) const {
  if (k < 0 || j < 0 || k > kmax_ || j > 5 * k) return 0;
  return p_[k][j];
}

namespace {

const PartitionTable& shared_table(int kmax) {
  // Grown tables are kept so references handed out stay valid.
  static std::mutex mu;
  static std::vector<std::unique_ptr<PartitionTable>> tables;
  std::lock_guard lock(mu);
  if (tables.empty() || tables.back()->kmax() < kmax)
    tables.push_back(std::make_unique<PartitionTable>(std::max(kmax, tables.empty() ? 64 : 2 * tables.back()->kmax())));
  return *tables.back();
}

}  // namespace

std::int64_t p5(int j, int k) {
  if (k < 0 || j < 0) return 0;
  return shared_table(k)(j, k);
}

std::int64_t d_coeff(const PartitionTable& p, int j, int k) {
  return (p(j, k) - p(j - 5, k - 1)) + (p(j - 2, k - 1) - p(j - 7, k - 2)) + (2 * p(j - 2, k - 2) - p(j - 3, k - 3)) +
         (p(j - 3, k - 2) - 2 * p(j - 7, k - 3)) + (2 * p(j - 4, k - 2) - 2 * p(j - 9, k - 3)) +
         (p(j - 6, k - 3) - p(j - 10, k - 4));
}

std::int64_t d_coeff(int j, int k) { return d_coeff(shared_table(std::max(k, 0)), j, k); }

CertReport certify_nonneg(int kmax) {
  if (kmax < 1) throw InvalidArgument("kmax must be >= 1");
  const PartitionTable T(kmax);
  CertReport r;
  r.kmax = kmax;
  for (int k = 0; k <= kmax; ++k)
    for (int j = 0; j <= 5 * k + 10; ++j) {
      ++r.checked;
      const std::int64_t d = d_coeff(T, j, k);
      if (d < 0) r.violations.push_back({"d<0", j, k, 0, d});
    }
  const int kc = std::min(kmax, 20);
  const SeriesQ c = count_series(4, kc);
  for (int k = 1; k <= kc; ++k)
    for (int j = 0; j <= std::max(5 * k + 10, c[k].degree()); ++j) {
      ++r.checked;
      const std::int64_t d = d_coeff(T, j, k);
      const mpq_class want = c[k].coeff(j);
      if (want != d) r.violations.push_back({"d!=coeff", j, k, 0, d});
    }
  return r;
}

CertReport check_inequalities(int kmax, IneqSet which) {
  if (kmax < 4) throw InvalidArgument("kmax must be >= 4");
  const PartitionTable p(kmax);
  CertReport r;
  r.kmax = kmax;
  auto test = [&](const char* name, int j, int k, int l, std::int64_t lhs, std::int64_t rhs) {
    ++r.checked;
    if (lhs < rhs) r.violations.push_back({name, j, k, l, lhs - rhs});
  };
  const bool basic = which != IneqSet::Main;
  const bool main = which != IneqSet::Basic;
  for (int k = 1; k <= kmax; ++k)
    for (int j = k; j <= 5 * k; ++j) {
      if (basic) {
        for (int l = 1; l <= 5; ++l) test("L512", j, k, l, p(j, k), p(j - l, k - 1));
        test("PC51", j, k, 0, p(j, k), p(j - 5, k - 1));
        test("PC52", j, k, 0, p(j - 2, k - 1), p(j - 7, k - 2));
        test("PC53", j, k, 0, p(j - 2, k - 2), p(j - 3, k - 3));
        test("PC54", j, k, 0, p(j - 3, k - 2), p(j - 7, k - 3));
        test("PC55", j, k, 0, p(j - 4, k - 2), p(j - 9, k - 3));
        test("PC56", j, k, 0, p(j - 6, k - 3), p(j - 10, k - 4));
      }
      if (main && k >= 4 && j - 7 >= k - 3) {
        if (j - 7 == 5 * (k - 3))
          test("PC57", j, k, 0, (p(j, k) - p(j - 5, k - 1)) + (p(j - 3, k - 2) - 2 * p(j - 7, k - 3)), 0);
        else if (j - 7 < 5 * (k - 3))
          test("PC58", j, k, 0, p(j - 3, k - 2), 2 * p(j - 7, k - 3));
      }
    }
  return r;
}

}  // namespace simsim
