#pragma once

// Dense n x n matrices over F_q (n <= 4), linear algebra over F_q,
// centralizer subalgebras and conjugacy classes of GL_n(F_q).

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "simsim/gfield.hpp"

namespace simsim {

constexpr int kMaxN = 4;

class Matrix {
 public:
  Matrix(FieldCtx F, int n);
  static Matrix identity(FieldCtx F, int n);
  static Matrix scalar(FieldCtx F, int n, Elem a);
  static Matrix from_rows(FieldCtx F, const std::vector<std::vector<int>>& rows);
  /// 1-based matrix unit E_{ij}.
  static Matrix unit(FieldCtx F, int n, int i, int j);

  const FieldCtx& field() const { return F_; }
  int n() const { return n_; }
  Elem operator()(int i, int j) const { return a_[i * kMaxN + j]; }
  Elem& operator()(int i, int j) { return a_[i * kMaxN + j]; }
  /// Row-major entries with stride kMaxN; unused slots are zero.
  const std::array<Elem, 16>& raw() const { return a_; }

  bool is_zero() const;
  bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }
  /// Lexicographic comparison of the row-major entries.
  bool operator<(const Matrix& o) const { return a_ < o.a_; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(Elem s) const;
  Matrix transpose() const;

  /// Entries as a flat length-n^2 vector.
  std::vector<Elem> flat() const;
  static Matrix from_flat(FieldCtx F, int n, const std::vector<Elem>& v);

  std::string str() const;

 private:
  FieldCtx F_;
  int n_;
  std::array<Elem, 16> a_{};
};

/// Rank of a list of row vectors over F.
int rank_of(const FieldCtx& F, std::vector<std::vector<Elem>> rows);
/// Reduced row echelon form (zero rows dropped); pivots returned in order.
std::vector<std::vector<Elem>> rref(const FieldCtx& F, std::vector<std::vector<Elem>> rows,
                                    std::vector<int>* pivots = nullptr);
/// Basis (in reduced echelon form) of {x : M x = 0} for M given by rows of length ncols.
std::vector<std::vector<Elem>> nullspace(const FieldCtx& F, std::vector<std::vector<Elem>> rows, int ncols);

int rank(const Matrix& A);
bool invertible(const Matrix& A);
/// Throws InvalidArgument if A is singular.
Matrix inverse(const Matrix& A);
Matrix power(const Matrix& A, int e);
/// det(tI - A), by cofactor expansion over F_q[t].
PolyFq char_poly(const Matrix& A);
/// f(A).
Matrix poly_eval(const PolyFq& f, const Matrix& A);
/// g A g^{-1}.
inline Matrix conjugate(const Matrix& g, const Matrix& A, const Matrix& ginv) { return g * A * ginv; }

/// Unital subalgebra of M_n(F_q) stored by its canonical basis: the reduced
/// row echelon form of the flattened spanning matrices.
class Subalgebra {
 public:
  Subalgebra(FieldCtx F, int n, std::vector<std::vector<Elem>> rref_rows, std::vector<int> pivots);
  static Subalgebra full(FieldCtx F, int n);

  const FieldCtx& field() const { return F_; }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  std::vector<Matrix> basis() const;
  Matrix basis_element(int i) const;
  /// Element with the given coordinates (one per basis element).
  Matrix element(const std::vector<Elem>& coords) const;
  /// Element number idx in the mixed-radix enumeration of all q^dim elements
  /// (coordinate 0 is the least significant digit).
  Matrix element_at(std::uint64_t idx) const;
  /// Coordinates of a member, read off at the pivot positions.
  std::vector<Elem> coords(const Matrix& X) const;
  std::uint64_t index_of(const Matrix& X) const;
  bool contains(const Matrix& X) const;
  /// q^dim, or throws ResourceError if it exceeds limit.
  std::uint64_t size_checked(std::uint64_t limit) const;

  /// Intersection with Z(a), solved in this algebra's coordinates.
  Subalgebra intersect_centralizer(const Matrix& a) const;
  /// Dimension of the intersection with Z(a) without building it.
  int centralizer_dim(const Matrix& a) const;

  /// Byte string identifying the subalgebra (equal iff same field and subspace).
  std::string key() const;
  bool operator==(const Subalgebra& o) const { return F_ == o.F_ && n_ == o.n_ && rows_ == o.rows_; }

  const std::vector<std::vector<Elem>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

 private:
  FieldCtx F_;
  int n_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<int> pivots_;
};

/// Canonical basis of the common centralizer of a pairwise commuting tuple.
/// Throws NonCommutingError(i, j) (0-based) for the first non-commuting pair.
Subalgebra centralizer_basis(const std::vector<Matrix>& tuple);

/// Number of invertible elements of Z; requires q^dim <= 2^24.
std::uint64_t unit_count(const Subalgebra& Z);
/// All invertible elements of Z with their inverses.
std::vector<std::pair<Matrix, Matrix>> units(const Subalgebra& Z, std::uint64_t limit = 1ull << 24);

mpz_class gl_order(int n, long q);

struct ConjClass {
  Matrix rep;
  std::uint64_t size;
};

/// Conjugacy classes of GL_n(F_q), found by orbit marking over all invertible
/// matrices (requires q^{n^2} <= 2^20).  Representatives are the minimal
/// matrices of their classes, listed in increasing order.
std::vector<ConjClass> gl_conjugacy_classes(int n, const FieldCtx& F);

/// All elements of GL_n(F_q) with inverses, in increasing order.
/// Requires q^{n^2} <= 2^20.
std::vector<std::pair<Matrix, Matrix>> gl_elements(int n, const FieldCtx& F);

/// Enumerate all q^{n^2} matrices; requires q^{n^2} <= limit.
std::vector<Matrix> all_matrices(int n, const FieldCtx& F, std::uint64_t limit = 1ull << 20);

}  // namespace simsim
