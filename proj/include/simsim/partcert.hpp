#pragma once

// Non-negativity certificate for the coefficients of c_{4,k}(q): partitions
// into k parts of size <= 5, the coefficient formula d_{jk}, and the
// inequalities the argument rests on.

#include <cstdint>
#include <string>
#include <vector>

namespace simsim {

/// p5[k][j] = number of partitions of j into exactly k parts, each <= 5.
class PartitionTable {
 public:
  explicit PartitionTable(int kmax);
  int kmax() const { return kmax_; }
  /// 0 outside the table (including negative arguments and j > 5k).
  std::int64_t operator()(int j, int k) const;

 private:
  int kmax_;
  std::vector<std::vector<std::int64_t>> p_;
};

/// p_{5,k}(j) from a table grown on demand.
std::int64_t p5(int j, int k);

/// d_{jk}, the coefficient of q^j t^k in the expansion of h_4.
std::int64_t d_coeff(int j, int k);
std::int64_t d_coeff(const PartitionTable& T, int j, int k);

struct Violation {
  std::string what;  // "d<0", "d!=coeff", "PC51", ..., "L512"
  int j = 0;
  int k = 0;
  int l = 0;  // only for L512
  std::int64_t value = 0;
};

struct CertReport {
  int kmax = 0;
  /// Number of (j, k) pairs / inequality instances examined.
  std::uint64_t checked = 0;
  std::vector<Violation> violations;
  bool clean() const { return violations.empty(); }
};

/// d_{jk} >= 0 for 0 <= k <= kmax, 0 <= j <= 5k + 10, and d_{jk} equal to
/// the q^j coefficient of count(4, k) for k <= min(kmax, 20).
CertReport certify_nonneg(int kmax);

/// Which inequalities check_inequalities() covers.
enum class IneqSet {
  All,
  Basic,  // p_{5,k}(j) >= p_{5,k-1}(j-l) and PC51..PC56
  Main,   // PC57, PC58
};

/// Exhaustive check over k <= kmax, k <= j <= 5k, 1 <= l <= 5.  Violation
/// values are the (negative) left-hand side minus right-hand side.
CertReport check_inequalities(int kmax, IneqSet which = IneqSet::All);

}  // namespace simsim
