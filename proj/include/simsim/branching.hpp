#pragma once

// Branching matrices B_2, B_3, B_4, the per-type branch tables they are
// averaged from, and the counts c_{n,k}(q) = 1' B_n^k e_1.

#include <map>
#include <string>
#include <vector>

#include "simsim/polyq.hpp"
#include "simsim/typeclass.hpp"

namespace simsim {

struct BranchingMatrix {
  int n = 0;
  /// Node names: rcf partitions such as "(2,1,1)", then "NT1".."NT6".
  std::vector<std::string> index;
  /// entries[i][j] = number of type-i branches of a type-j class.
  std::vector<std::vector<PolyQ>> entries;

  int position(const std::string& node) const;
  const PolyQ& at(const std::string& row, const std::string& col) const;
};

/// The stored matrix for n in {2, 3, 4}.
const BranchingMatrix& branching_matrix(int n);

/// c_{n,k}(q).
PolyQ count(int n, int k);
/// c_{n,0}, ..., c_{n,kmax}.
SeriesQ count_series(int n, int kmax);

/// Node of the branching matrix a type belongs to.
std::string node_of(const TypeDescriptor& t);

/// One branch table: a type, its probability inside its rcf node, and the
/// number of branches of each target type (Regular aggregates every regular
/// target).
struct TypeRow {
  TypeDescriptor type;
  std::string node;
  RatQ probability;
  std::vector<std::pair<TypeDescriptor, PolyQ>> branches;
};

/// Branch tables of every classical type of size n plus, for n = 4, NT1..NT6.
const std::vector<TypeRow>& type_rows(int n);

/// Predicted branch counts of a type; the generic Regular type behaves like
/// any regular class.  Throws InvalidArgument for unknown types.
std::vector<std::pair<TypeDescriptor, PolyQ>> lemma_branches(const TypeDescriptor& t);

/// Column `node` of the reduced matrix: sum over the types of that node of
/// probability times branch counts, grouped by target node.  Throws
/// InvalidArgument if the probabilities do not sum to 1.
std::map<std::string, PolyQ> average_branches(const std::vector<TypeRow>& rows, const std::string& node);

}  // namespace simsim
