#pragma once

// Similarity class types of matrices and commuting tuples (n <= 4):
// classification, canonical representatives, rcf types, centralizer
// fingerprints and the per-(n, q) catalog of types.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "simsim/error.hpp"
#include "simsim/matspace.hpp"
#include "simsim/polyq.hpp"

namespace simsim {

using Partition = std::vector<int>;

/// "(2,1,1)".
std::string partition_str(const Partition& p);

struct PrimaryPart {
  int d = 1;
  Partition lambda;
  bool operator==(const PrimaryPart&) const = default;
};

enum class TypeKind {
  Classical,
  NewType,
  /// A commutative n-dimensional centralizer not isomorphic to any single
  /// matrix centralizer; counted together with the regular classical types.
  Regular,
};

class TypeDescriptor {
 public:
  static TypeDescriptor classical(std::vector<PrimaryPart> parts);
  static TypeDescriptor new_type(int tag);
  static TypeDescriptor regular(int n);
  /// Central type (1,...,1)_1.
  static TypeDescriptor central(int n);
  /// Accepts "(2,1)_1(1)_1" (factors in any order, optional commas between
  /// them), "NT1".."NT6", and "Regular" (which needs the size n).
  static TypeDescriptor parse(std::string_view s, int n = 4);

  TypeKind kind() const { return kind_; }
  int n() const { return n_; }
  /// Canonically ordered: by degree ascending, then partition descending.
  const std::vector<PrimaryPart>& parts() const { return parts_; }
  int tag() const { return tag_; }

  bool is_classical() const { return kind_ == TypeKind::Classical; }
  /// Regular kind, or classical with every partition a single part.
  bool is_regular() const;
  bool is_central() const;

  std::string str() const;
  auto operator<=>(const TypeDescriptor& o) const { return key() <=> o.key(); }
  bool operator==(const TypeDescriptor& o) const { return key() == o.key(); }

 private:
  std::tuple<int, int, std::vector<std::pair<int, Partition>>, int> key() const;

  TypeKind kind_ = TypeKind::Classical;
  int n_ = 0;
  std::vector<PrimaryPart> parts_;
  int tag_ = 0;
};

/// The map nu: irreducible -> partition, ordered by irreducible.
struct ClassLabel {
  std::vector<std::pair<PolyFq, Partition>> parts;
  std::string str() const;
};

std::pair<ClassLabel, TypeDescriptor> classify_matrix(const Matrix& A);

/// rcf partition (l_1, l_2, ...) with l_j = sum_i lambda^{(i)}_j d_i.
Partition rcf_type(const TypeDescriptor& desc);

/// Canonical representative: a single matrix for classical types, the
/// defining tuple for new types.  Throws InfeasibleError when the field
/// lacks enough distinct irreducibles.
std::vector<Matrix> representative(const TypeDescriptor& desc, const FieldCtx& F);

/// Like representative(), but types that are infeasible as a single matrix
/// are realised by a tuple (A, E_1, ..., E_l) of a block matrix and the
/// block projections, whose common centralizer is the direct sum of the
/// primary-block centralizers.
std::vector<Matrix> tuple_representative(const TypeDescriptor& desc, const FieldCtx& F);

/// Element statistics of a subalgebra, invariant under algebra isomorphism.
struct Fingerprint {
  int dim = 0;
  bool commutative = false;
  int center_dim = 0;
  std::uint64_t unit_count = 0;
  std::uint64_t nilpotent_count = 0;
  std::uint64_t idempotent_count = 0;
  /// Dimensions of V, V^2, ..., 0 for V the span of the nilpotents; absent
  /// unless V is a two-sided ideal consisting of nilpotents.
  std::optional<std::vector<int>> nil_ideal_chain;
  /// Histogram of (dim Zx, dim xZ) over all elements x.  Separates an
  /// algebra from its opposite, which the other statistics cannot.
  std::map<std::pair<int, int>, std::uint64_t> ideal_profile;

  bool operator==(const Fingerprint&) const = default;
  std::string str() const;
};

/// Exhaustive over the q^dim elements; requires q^dim <= 2^20.
Fingerprint fingerprint(const Subalgebra& Z);

class UnknownTypeError : public ConsistencyError {
 public:
  explicit UnknownTypeError(Fingerprint fp)
      : ConsistencyError("unknown type: no catalog entry has fingerprint " + fp.str()), fingerprint(std::move(fp)) {}
  Fingerprint fingerprint;
};

/// All classical types of size n, sorted.
std::vector<TypeDescriptor> classical_types(int n);

/// Number of similarity classes of M_n(F_q) of a classical type, as a
/// polynomial in q.  New types get 0.
PolyQ class_count(const TypeDescriptor& desc);

struct CatalogEntry {
  TypeDescriptor type;
  std::vector<Matrix> rep;
  /// True when rep is the single-matrix representative.
  bool single_matrix = false;
  int centralizer_dim = 0;
  /// Absent when q^dim exceeds the fingerprint bound.
  std::optional<Fingerprint> fingerprint;
  PolyQ class_count;
};

/// Classical types plus (for n = 4) NT1..NT6.  Built once per (n, q).
const std::vector<CatalogEntry>& catalog(int n, const FieldCtx& F);

/// Type of a commuting tuple, by fingerprint match in the catalog.  The full
/// algebra M_n is the central type directly; an unmatched commutative
/// n-dimensional centralizer is the generic Regular type.  Throws
/// UnknownTypeError when nothing matches, ConsistencyError when ambiguous.
TypeDescriptor classify_tuple(const std::vector<Matrix>& tuple);
TypeDescriptor classify_centralizer(const Subalgebra& Z);

}  // namespace simsim
