#include "simsim/oracle.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "simsim/branching.hpp"
#include "simsim/error.hpp"

namespace simsim {

int default_threads() {
  if (const char* env = std::getenv("SIMSIM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

namespace {

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) threads = default_threads();
  threads = static_cast<int>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

mpz_class ipow(long b, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

std::mutex memo_mu;
std::map<std::string, mpz_class>& memo() {
  static std::map<std::string, mpz_class> m;
  return m;
}

}  // namespace

mpz_class commuting_tuple_count(const Subalgebra& W, int k) {
  if (k < 0) throw InvalidArgument("k must be >= 0");
  const long q = W.field().q();
  if (k == 0) return 1;
  if (k == 1) return ipow(q, W.dim());
  const std::string key = W.key() + static_cast<char>(k);
  {
    std::lock_guard lock(memo_mu);
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  const std::uint64_t total = W.size_checked(1ull << 24);
  mpz_class sum = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Matrix a = W.element_at(idx);
    if (k == 2)
      sum += ipow(q, W.centralizer_dim(a));
    else
      sum += commuting_tuple_count(W.intersect_centralizer(a), k - 1);
  }
  std::lock_guard lock(memo_mu);
  memo().emplace(key, sum);
  return sum;
}

mpz_class commuting_tuple_count(int n, const FieldCtx& F, int k) {
  const Subalgebra M = Subalgebra::full(F, n);
  M.size_checked(1ull << 16);
  return commuting_tuple_count(M, k);
}

std::string method_name(OrbitMethod m) { return m == OrbitMethod::Direct ? "direct" : "burnside"; }

namespace {

using GL = std::vector<std::pair<Matrix, Matrix>>;

struct DirectTally {
  std::uint64_t orbits = 0;
  std::uint64_t mass = 0;
};

// T is minimal in its orbit and stab lists the group elements fixing T.  A
// tuple (T, B) is minimal iff B is minimal under conjugation by stab.
void extend(const GL& G, int k, std::vector<Matrix>& T, const Subalgebra& W, const std::vector<std::uint32_t>& stab,
            DirectTally& tally) {
  const std::uint64_t total = W.size_checked(1ull << 24);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Matrix B = W.element_at(idx);
    std::vector<std::uint32_t> fix;
    bool minimal = true;
    for (std::uint32_t gi : stab) {
      const Matrix C = conjugate(G[gi].first, B, G[gi].second);
      if (C < B) {
        minimal = false;
        break;
      }
      if (C == B) fix.push_back(gi);
    }
    if (!minimal) continue;
    if (static_cast<int>(T.size()) + 1 == k) {
      ++tally.orbits;
      tally.mass += G.size() / fix.size();
      continue;
    }
    T.push_back(B);
    extend(G, k, T, W.intersect_centralizer(B), fix, tally);
    T.pop_back();
  }
}

}  // namespace

OrbitReport orbit_count_direct(int n, const FieldCtx& F, int k, int threads) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const mpz_class order = gl_order(n, F.q());
  if (order > 10000)
    throw ResourceError("direct method needs |GL_" + std::to_string(n) + "(F_" + std::to_string(F.q()) +
                        ")| <= 10^4, got " + order.get_str());
  const mpz_class total = commuting_tuple_count(n, F, k);
  if (total > 10000000)
    throw ResourceError("direct method needs at most 10^7 commuting tuples, got " + total.get_str());
  const GL G = gl_elements(n, F);
  const Subalgebra M = Subalgebra::full(F, n);
  const std::uint64_t size = M.size_checked(1ull << 16);
  std::vector<DirectTally> tallies(size);
  parallel_for(size, threads, [&](std::size_t idx) {
    const Matrix A = M.element_at(idx);
    std::vector<std::uint32_t> fix;
    for (std::uint32_t gi = 0; gi < G.size(); ++gi) {
      const Matrix C = conjugate(G[gi].first, A, G[gi].second);
      if (C < A) return;
      if (C == A) fix.push_back(gi);
    }
    DirectTally& t = tallies[idx];
    if (k == 1) {
      t.orbits = 1;
      t.mass = G.size() / fix.size();
      return;
    }
    std::vector<Matrix> T{A};
    extend(G, k, T, centralizer_basis(T), fix, t);
  });
  OrbitReport r{n, k, F.q(), OrbitMethod::Direct, 0, total, 0};
  mpz_class mass = 0;
  for (const auto& t : tallies) {
    r.orbit_count += t.orbits;
    mass += t.mass;
  }
  if (mass != total)
    throw ConsistencyError("orbit sizes sum to " + mass.get_str() + " but there are " + total.get_str() + " tuples");
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

OrbitReport orbit_count_burnside(int n, const FieldCtx& F, int k, int threads) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  mpz_class qn2 = ipow(F.q(), n * n);
  if (k >= 3 && qn2 > 4096)
    throw ResourceError("burnside method for k >= 3 needs q^{n^2} <= 2^12, got " + qn2.get_str());
  const auto classes = gl_conjugacy_classes(n, F);
  const mpz_class order = gl_order(n, F.q());
  mpz_class class_total = 0;
  for (const auto& c : classes) class_total += c.size;
  if (class_total != order) throw ConsistencyError("class sizes sum to " + class_total.get_str());
  std::vector<mpz_class> fixed(classes.size());
  parallel_for(classes.size(), threads, [&](std::size_t i) {
    fixed[i] = commuting_tuple_count(centralizer_basis({classes[i].rep}), k) * classes[i].size;
  });
  mpz_class sum = 0;
  for (const auto& f : fixed) sum += f;
  if (sum % order != 0) throw ConsistencyError("burnside sum " + sum.get_str() + " not divisible by |GL|");
  OrbitReport r{n, k, F.q(), OrbitMethod::Burnside, sum / order, 0, 0};
  if (qn2 <= 65536 && k <= 2) r.total_tuples = commuting_tuple_count(n, F, k);
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::map<TypeDescriptor, std::uint64_t> CensusReport::aggregated() const {
  std::map<TypeDescriptor, std::uint64_t> out;
  for (const auto& r : rows) {
    const TypeDescriptor t = r.type.is_regular() ? TypeDescriptor::regular(r.type.n()) : r.type;
    out[t] += r.orbits;
  }
  return out;
}

CensusReport branch_census(const std::vector<Matrix>& base, int threads) {
  const Subalgebra Z = centralizer_basis(base);
  const std::uint64_t total = Z.size_checked(1ull << 20);
  const auto U = units(Z, 1ull << 20);
  CensusReport rep;
  rep.base = base;
  rep.base_type = classify_centralizer(Z);
  rep.q = Z.field().q();
  rep.dim = Z.dim();
  rep.unit_count = U.size();
  // Orbit representatives: the first element of each orbit in index order.
  std::vector<char> seen(total, 0);
  std::vector<std::pair<Matrix, std::uint64_t>> reps;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (seen[idx]) continue;
    const Matrix X = Z.element_at(idx);
    std::uint64_t size = 0;
    for (const auto& [u, uinv] : U) {
      const std::uint64_t j = Z.index_of(conjugate(u, X, uinv));
      if (!seen[j]) {
        seen[j] = 1;
        ++size;
      }
    }
    reps.emplace_back(X, size);
  }
  std::vector<TypeDescriptor> types(reps.size(), TypeDescriptor::central(Z.n()));
  parallel_for(reps.size(), threads, [&](std::size_t i) {
    std::vector<Matrix> t = base;
    t.push_back(reps[i].first);
    types[i] = classify_tuple(t);
  });
  std::map<TypeDescriptor, CensusRow> rows;
  std::uint64_t mass = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    CensusRow& r = rows[types[i]];
    r.type = types[i];
    ++r.orbits;
    r.elements += reps[i].second;
    mass += reps[i].second;
  }
  if (mass != total) throw ConsistencyError("census orbits cover " + std::to_string(mass) + " of " + std::to_string(total));
  for (auto& [t, r] : rows) rep.rows.push_back(r);
  return rep;
}

std::map<TypeDescriptor, mpz_class> predicted_census(const TypeDescriptor& t, long q) {
  std::map<TypeDescriptor, mpz_class> out;
  for (const auto& [target, c] : lemma_branches(t)) {
    const mpz_class v = c.eval_at(q);
    if (v != 0) out[target] += v;
  }
  return out;
}

}  // namespace simsim
