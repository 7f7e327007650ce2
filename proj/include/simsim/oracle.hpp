#pragma once

// Brute-force verification over small F_q: commuting tuple counts, orbit
// counts under simultaneous conjugation (canonical representatives and
// Burnside), and branch censuses of centralizer algebras.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "simsim/matspace.hpp"
#include "simsim/typeclass.hpp"

namespace simsim {

/// Worker count from SIMSIM_THREADS, else the hardware concurrency.
int default_threads();

/// Number of pairwise commuting k-tuples in M_n(F_q); q^{n^2} <= 2^16.
mpz_class commuting_tuple_count(int n, const FieldCtx& F, int k);
/// Number of pairwise commuting k-tuples of elements of W.
mpz_class commuting_tuple_count(const Subalgebra& W, int k);

enum class OrbitMethod { Direct, Burnside };
std::string method_name(OrbitMethod m);

struct OrbitReport {
  int n = 0;
  int k = 0;
  int q = 0;
  OrbitMethod method = OrbitMethod::Direct;
  mpz_class orbit_count;
  mpz_class total_tuples;
  double elapsed_seconds = 0;
};

/// Counts tuples that are lexicographically minimal among all their
/// conjugates.  Requires |GL_n(F_q)| <= 10^4 and at most 10^7 commuting
/// tuples.  Checks that the orbit sizes sum to the number of tuples.
OrbitReport orbit_count_direct(int n, const FieldCtx& F, int k, int threads = 0);

/// (1/|G|) sum over conjugacy classes of class size times the number of
/// commuting k-tuples in Z(g).  Requires k <= 2, or q^{n^2} <= 2^12.
OrbitReport orbit_count_burnside(int n, const FieldCtx& F, int k, int threads = 0);

struct CensusRow {
  TypeDescriptor type;
  std::uint64_t orbits = 0;
  std::uint64_t elements = 0;
};

struct CensusReport {
  std::vector<Matrix> base;
  TypeDescriptor base_type;
  int q = 0;
  int dim = 0;
  std::uint64_t unit_count = 0;
  std::vector<CensusRow> rows;

  /// Orbit counts with all regular types merged into Regular.
  std::map<TypeDescriptor, std::uint64_t> aggregated() const;
};

/// Orbits of Z(base) under conjugation by its units, each classified by
/// classify_tuple(base ++ [B]).  Requires q^dim <= 2^20.
CensusReport branch_census(const std::vector<Matrix>& base, int threads = 0);

/// Branch table of a type evaluated at q, zero rows dropped.
std::map<TypeDescriptor, mpz_class> predicted_census(const TypeDescriptor& t, long q);

}  // namespace simsim
