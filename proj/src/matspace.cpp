#include "simsim/matspace.hpp"

#include <algorithm>
#include <unordered_map>

#include "simsim/error.hpp"

namespace simsim {

namespace {

std::uint64_t int_pow(std::uint64_t b, int e, std::uint64_t limit, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    if (r > limit)
      throw ResourceError(std::string(what) + ": " + std::to_string(b) + "^" + std::to_string(e) +
                          " exceeds the enumeration bound " + std::to_string(limit));
  }
  return r;
}

void check_n(int n) {
  if (n < 1 || n > kMaxN) throw InvalidArgument("matrix size " + std::to_string(n) + " out of range 1..4");
}

}  // namespace

Matrix::Matrix(FieldCtx F, int n) : F_(F), n_(n) { check_n(n); }

Matrix Matrix::identity(FieldCtx F, int n) { return scalar(F, n, 1); }

Matrix Matrix::scalar(FieldCtx F, int n, Elem a) {
  Matrix m(F, n);
  for (int i = 0; i < n && i < kMaxN; ++i) m(i, i) = a;
  return m;
}

Matrix Matrix::from_rows(FieldCtx F, const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(F, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw InvalidArgument("matrix rows must have length " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      const int v = rows[i][j];
      if (v < 0 || v >= F.q())
        throw InvalidArgument("entry " + std::to_string(v) + " is not an element of F_" + std::to_string(F.q()));
      m(i, j) = static_cast<Elem>(v);
    }
  }
  return m;
}

Matrix Matrix::unit(FieldCtx F, int n, int i, int j) {
  Matrix m(F, n);
  m(i - 1, j - 1) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elem e) { return e == 0; });
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(F_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = F_.add((*this)(i, j), o(i, j));
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(F_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = F_.sub((*this)(i, j), o(i, j));
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(F_, n_);
  const Elem* add = F_.add_table();
  const Elem* mul = F_.mul_table();
  const int q = F_.q();
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Elem a = (*this)(i, k);
      if (a == 0) continue;
      const Elem* mrow = mul + a * q;
      for (int j = 0; j < n_; ++j) r(i, j) = add[r(i, j) * q + mrow[o(k, j)]];
    }
  return r;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix r(F_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = F_.mul(s, (*this)(i, j));
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(F_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
  return r;
}

std::vector<Elem> Matrix::flat() const {
  std::vector<Elem> v(n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) v[i * n_ + j] = (*this)(i, j);
  return v;
}

Matrix Matrix::from_flat(FieldCtx F, int n, const std::vector<Elem>& v) {
  Matrix m(F, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

std::string Matrix::str() const {
  std::string s = "[";
  for (int i = 0; i < n_; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < n_; ++j) {
      if (j) s += ",";
      s += std::to_string((*this)(i, j));
    }
    s += "]";
  }
  return s + "]";
}

std::vector<std::vector<Elem>> rref(const FieldCtx& F, std::vector<std::vector<Elem>> rows, std::vector<int>* pivots) {
  if (pivots) pivots->clear();
  if (rows.empty()) return rows;
  const int ncols = static_cast<int>(rows[0].size());
  int r = 0;
  const int nrows = static_cast<int>(rows.size());
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int p = -1;
    for (int i = r; i < nrows; ++i)
      if (rows[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[r], rows[p]);
    const Elem inv = F.inv(rows[r][c]);
    if (inv != 1)
      for (int j = c; j < ncols; ++j) rows[r][j] = F.mul(inv, rows[r][j]);
    for (int i = 0; i < nrows; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Elem f = rows[i][c];
      for (int j = c; j < ncols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  rows.resize(r);
  return rows;
}

int rank_of(const FieldCtx& F, std::vector<std::vector<Elem>> rows) {
  return static_cast<int>(rref(F, std::move(rows)).size());
}

std::vector<std::vector<Elem>> nullspace(const FieldCtx& F, std::vector<std::vector<Elem>> rows, int ncols) {
  std::vector<int> piv;
  auto R = rref(F, std::move(rows), &piv);
  std::vector<char> is_pivot(ncols, 0);
  for (int c : piv) is_pivot[c] = 1;
  std::vector<std::vector<Elem>> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Elem> x(ncols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = F.neg(R[r][f]);
    out.push_back(std::move(x));
  }
  return rref(F, std::move(out));
}

int rank(const Matrix& A) {
  std::vector<std::vector<Elem>> rows(A.n(), std::vector<Elem>(A.n()));
  for (int i = 0; i < A.n(); ++i)
    for (int j = 0; j < A.n(); ++j) rows[i][j] = A(i, j);
  return rank_of(A.field(), std::move(rows));
}

bool invertible(const Matrix& A) {
  const FieldCtx& F = A.field();
  const int n = A.n();
  Elem m[kMaxN][kMaxN];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = A(i, j);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) return false;
    if (p != c)
      for (int j = 0; j < n; ++j) std::swap(m[c][j], m[p][j]);
    const Elem inv = F.inv(m[c][c]);
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Elem f = F.mul(m[i][c], inv);
      for (int j = c; j < n; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[c][j]));
    }
  }
  return true;
}

Matrix inverse(const Matrix& A) {
  const FieldCtx& F = A.field();
  const int n = A.n();
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = A(i, j);
    rows[i][n + i] = 1;
  }
  std::vector<int> piv;
  rows = rref(F, std::move(rows), &piv);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw InvalidArgument("matrix is singular");
  Matrix r(F, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = rows[i][n + j];
  return r;
}

Matrix power(const Matrix& A, int e) {
  Matrix r = Matrix::identity(A.field(), A.n());
  for (int i = 0; i < e; ++i) r = r * A;
  return r;
}

namespace {

using PolyMat = std::vector<std::vector<PolyFq>>;

PolyFq det_poly(const FieldCtx& F, const PolyMat& M) {
  const std::size_t n = M.size();
  if (n == 1) return M[0][0];
  PolyFq acc;
  for (std::size_t c = 0; c < n; ++c) {
    if (M[0][c].is_zero()) continue;
    PolyMat minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor[i - 1].push_back(M[i][j]);
    PolyFq term = poly_mul(F, M[0][c], det_poly(F, minor));
    acc = (c % 2 == 0) ? poly_add(F, acc, term) : poly_sub(F, acc, term);
  }
  return acc;
}

}  // namespace

PolyFq char_poly(const Matrix& A) {
  const FieldCtx& F = A.field();
  const int n = A.n();
  PolyMat M(n, std::vector<PolyFq>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyFq e = poly_trim(PolyFq{{F.neg(A(i, j))}});
      if (i == j) e = poly_add(F, e, PolyFq{{0, 1}});
      M[i][j] = e;
    }
  return det_poly(F, M);
}

Matrix poly_eval(const PolyFq& f, const Matrix& A) {
  Matrix r(A.field(), A.n());
  for (int i = f.degree(); i >= 0; --i) r = r * A + Matrix::scalar(A.field(), A.n(), f.coeffs[i]);
  return r;
}

Subalgebra::Subalgebra(FieldCtx F, int n, std::vector<std::vector<Elem>> rref_rows, std::vector<int> pivots)
    : F_(F), n_(n), rows_(std::move(rref_rows)), pivots_(std::move(pivots)) {}

Subalgebra Subalgebra::full(FieldCtx F, int n) {
  check_n(n);
  std::vector<std::vector<Elem>> rows(n * n, std::vector<Elem>(n * n, 0));
  std::vector<int> piv(n * n);
  for (int i = 0; i < n * n; ++i) {
    rows[i][i] = 1;
    piv[i] = i;
  }
  return Subalgebra(F, n, std::move(rows), std::move(piv));
}

Matrix Subalgebra::basis_element(int i) const { return Matrix::from_flat(F_, n_, rows_[i]); }

std::vector<Matrix> Subalgebra::basis() const {
  std::vector<Matrix> b;
  for (int i = 0; i < dim(); ++i) b.push_back(basis_element(i));
  return b;
}

Matrix Subalgebra::element(const std::vector<Elem>& coords) const {
  std::vector<Elem> v(n_ * n_, 0);
  for (int m = 0; m < dim(); ++m) {
    const Elem c = coords[m];
    if (c == 0) continue;
    for (int e = 0; e < n_ * n_; ++e) v[e] = F_.add(v[e], F_.mul(c, rows_[m][e]));
  }
  return Matrix::from_flat(F_, n_, v);
}

Matrix Subalgebra::element_at(std::uint64_t idx) const {
  std::vector<Elem> c(dim());
  const std::uint64_t q = F_.q();
  for (int m = 0; m < dim(); ++m) {
    c[m] = static_cast<Elem>(idx % q);
    idx /= q;
  }
  return element(c);
}

std::vector<Elem> Subalgebra::coords(const Matrix& X) const {
  std::vector<Elem> c(dim());
  for (int m = 0; m < dim(); ++m) {
    const int p = pivots_[m];
    c[m] = X(p / n_, p % n_);
  }
  return c;
}

std::uint64_t Subalgebra::index_of(const Matrix& X) const {
  const auto c = coords(X);
  std::uint64_t idx = 0;
  for (int m = dim() - 1; m >= 0; --m) idx = idx * F_.q() + c[m];
  return idx;
}

bool Subalgebra::contains(const Matrix& X) const { return element(coords(X)) == X; }

std::uint64_t Subalgebra::size_checked(std::uint64_t limit) const {
  return int_pow(F_.q(), dim(), limit, "subalgebra size");
}

namespace {

// Rows of the linear system sum_m c_m (a b_m - b_m a) = 0 in coordinates c.
std::vector<std::vector<Elem>> commutator_system(const Subalgebra& W, const Matrix& a) {
  const int n = W.n();
  const int d = W.dim();
  std::vector<std::vector<Elem>> rows(n * n, std::vector<Elem>(d, 0));
  for (int m = 0; m < d; ++m) {
    const Matrix b = W.basis_element(m);
    const Matrix c = a * b - b * a;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i * n + j][m] = c(i, j);
  }
  return rows;
}

}  // namespace

Subalgebra Subalgebra::intersect_centralizer(const Matrix& a) const {
  const auto null = nullspace(F_, commutator_system(*this, a), dim());
  std::vector<std::vector<Elem>> mats;
  mats.reserve(null.size());
  for (const auto& c : null) mats.push_back(element(c).flat());
  std::vector<int> piv;
  auto R = rref(F_, std::move(mats), &piv);
  return Subalgebra(F_, n_, std::move(R), std::move(piv));
}

int Subalgebra::centralizer_dim(const Matrix& a) const {
  return dim() - rank_of(F_, commutator_system(*this, a));
}

std::string Subalgebra::key() const {
  std::string k;
  k.reserve(2 + rows_.size() * n_ * n_);
  k.push_back(static_cast<char>(F_.q()));
  k.push_back(static_cast<char>(n_));
  for (const auto& r : rows_)
    for (Elem e : r) k.push_back(static_cast<char>(e));
  return k;
}

Subalgebra centralizer_basis(const std::vector<Matrix>& tuple) {
  if (tuple.empty()) throw InvalidArgument("empty tuple");
  const FieldCtx F = tuple[0].field();
  const int n = tuple[0].n();
  for (const auto& A : tuple)
    if (A.n() != n || !(A.field() == F)) throw InvalidArgument("tuple entries must share field and size");
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      if (!(tuple[i] * tuple[j] == tuple[j] * tuple[i])) throw NonCommutingError(i, j);
  const int N = n * n;
  std::vector<std::vector<Elem>> rows;
  rows.reserve(tuple.size() * N);
  for (const auto& A : tuple) {
    // Row (i,j) of X -> AX - XA; column (k,l) is the coefficient of X_kl.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Elem> r(N, 0);
        for (int k = 0; k < n; ++k) r[k * n + j] = F.add(r[k * n + j], A(i, k));
        for (int l = 0; l < n; ++l) r[i * n + l] = F.sub(r[i * n + l], A(l, j));
        rows.push_back(std::move(r));
      }
  }
  auto null = nullspace(F, std::move(rows), N);
  std::vector<int> piv;
  auto R = rref(F, std::move(null), &piv);
  return Subalgebra(F, n, std::move(R), std::move(piv));
}

std::uint64_t unit_count(const Subalgebra& Z) {
  const std::uint64_t total = Z.size_checked(1ull << 24);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx)
    if (invertible(Z.element_at(idx))) ++count;
  return count;
}

std::vector<std::pair<Matrix, Matrix>> units(const Subalgebra& Z, std::uint64_t limit) {
  const std::uint64_t total = Z.size_checked(limit);
  std::vector<std::pair<Matrix, Matrix>> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix X = Z.element_at(idx);
    if (invertible(X)) out.emplace_back(X, inverse(X));
  }
  return out;
}

mpz_class gl_order(int n, long q) {
  mpz_class qn, r = 1;
  mpz_ui_pow_ui(qn.get_mpz_t(), q, n);
  for (int i = 0; i < n; ++i) {
    mpz_class qi;
    mpz_ui_pow_ui(qi.get_mpz_t(), q, i);
    r *= qn - qi;
  }
  return r;
}

namespace {

// Position of M in the increasing-order enumeration of all_matrices().
std::uint64_t matrix_code(const Matrix& M) {
  const int n = M.n();
  const std::uint64_t q = M.field().q();
  std::uint64_t c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c = c * q + M(i, j);
  return c;
}

}  // namespace

std::vector<Matrix> all_matrices(int n, const FieldCtx& F, std::uint64_t limit) {
  check_n(n);
  const std::uint64_t total = int_pow(F.q(), n * n, limit, "matrix enumeration");
  std::vector<Matrix> out;
  out.reserve(total);
  const int N = n * n;
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix M(F, n);
    std::uint64_t v = code;
    for (int e = N - 1; e >= 0; --e) {
      M(e / n, e % n) = static_cast<Elem>(v % F.q());
      v /= F.q();
    }
    out.push_back(M);
  }
  return out;
}

std::vector<std::pair<Matrix, Matrix>> gl_elements(int n, const FieldCtx& F) {
  std::vector<std::pair<Matrix, Matrix>> out;
  for (const Matrix& M : all_matrices(n, F))
    if (invertible(M)) out.emplace_back(M, inverse(M));
  return out;
}

std::vector<ConjClass> gl_conjugacy_classes(int n, const FieldCtx& F) {
  const auto G = gl_elements(n, F);
  const std::uint64_t total = int_pow(F.q(), n * n, 1ull << 20, "matrix enumeration");
  std::vector<char> seen(total, 0);
  std::vector<ConjClass> out;
  for (const auto& [M, Minv] : G) {
    if (seen[matrix_code(M)]) continue;
    std::uint64_t size = 0;
    for (const auto& [g, ginv] : G) {
      const std::uint64_t c = matrix_code(conjugate(g, M, ginv));
      if (!seen[c]) {
        seen[c] = 1;
        ++size;
      }
    }
    const std::uint64_t via_units = mpz_class(gl_order(n, F.q()) / unit_count(centralizer_basis({M}))).get_ui();
    if (via_units != size)
      throw ConsistencyError("class of " + M.str() + ": orbit size " + std::to_string(size) +
                             " but |GL|/|Z*| = " + std::to_string(via_units));
    out.push_back({M, size});
  }
  return out;
}

}  // namespace simsim
