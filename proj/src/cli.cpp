#include "simsim/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "simsim/branching.hpp"
#include "simsim/error.hpp"
#include "simsim/oracle.hpp"
#include "simsim/partcert.hpp"
#include "simsim/polyq.hpp"
#include "simsim/typeclass.hpp"

namespace simsim::cli {

using json = nlohmann::ordered_json;

namespace {

bool is_small_prime(long q) { return q == 2 || q == 3 || q == 5 || q == 7; }

FieldCtx input_field(long q) {
  if (!is_small_prime(q)) throw InvalidArgument("q must be a prime <= 7, got " + std::to_string(q));
  return make_field(static_cast<int>(q));
}

struct Common {
  bool json = false;
  int threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json, "Machine-readable output");
  sub->add_option("--threads", c.threads, "Worker cap (default: SIMSIM_THREADS or all cores)")->check(CLI::Range(1, 1024));
}

json envelope(const std::string& command, json params, json result) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["params"] = std::move(params);
  j["result"] = std::move(result);
  return j;
}

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  void report(std::ostream& err, const std::string& what) const {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    err << what << " elapsed: " << std::fixed << std::setprecision(3) << s << " s\n";
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

// ---- count

struct CountArgs {
  Common c;
  int n = 0;
  int k = 0;
  std::optional<long> q;
};

int do_count(const CountArgs& a, std::ostream& out) {
  const PolyQ c = count(a.n, a.k);
  json params{{"n", a.n}, {"k", a.k}};
  json result{{"polynomial", c.str()}};
  std::string text = c.str();
  if (a.q) {
    if (*a.q < 2) throw InvalidArgument("q must be >= 2");
    params["q"] = *a.q;
    const std::string v = c.eval_at(*a.q).get_str();
    result["value"] = v;
    text = v;
  }
  if (a.c.json)
    out << envelope("count", params, result).dump(2) << "\n";
  else
    out << text << "\n";
  return kOk;
}

// ---- genfun

struct GenfunArgs {
  Common c;
  int n = 0;
  int terms = 0;
  bool verify = false;
};

int do_genfun(const GenfunArgs& a, std::ostream& out) {
  const RationalGF g = closed_form(a.n);
  json params{{"n", a.n}, {"terms", a.terms}, {"verify", a.verify}};
  json result;
  json num = json::array();
  for (const auto& c : g.numerator) num.push_back(c.str());
  result["numerator"] = num;
  result["denominator_exponents"] = g.denominator;
  result["closed_form"] = g.str();
  std::ostringstream text;
  text << "h_" << a.n << "(q,t) = " << g.str() << "\n";
  if (a.terms > 0) {
    const SeriesQ s = g.expand(a.terms - 1);
    json series = json::array();
    for (std::size_t k = 0; k < s.size(); ++k) {
      series.push_back(s[k].str());
      text << "t^" << k << ": " << s[k].str() << "\n";
    }
    result["series"] = series;
  }
  int code = kOk;
  if (a.verify) {
    const int kmax = a.terms > 0 ? a.terms : 10;
    const GFReport r = verify_closed_form(a.n, kmax);
    json v{{"kmax", kmax}, {"verified", r.verified}};
    if (r.first_mismatch) {
      v["first_mismatch"] = {{"k", *r.first_mismatch}, {"expected", r.expected.str()}, {"actual", r.actual.str()}};
      text << "MISMATCH at t^" << *r.first_mismatch << ": expected " << r.expected.str() << ", got "
           << r.actual.str() << "\n";
      code = kMismatch;
    } else {
      text << "verified: branching series times denominator equals the numerator through t^" << kmax << "\n";
    }
    result["verify"] = v;
  }
  if (a.c.json)
    out << envelope("genfun", params, result).dump(2) << "\n";
  else
    out << text.str();
  return code;
}

// ---- oracle

struct OracleArgs {
  Common c;
  int n = 0;
  int k = 0;
  long q = 0;
  std::string method = "direct";
};

json report_json(const OrbitReport& r) {
  json j{{"method", method_name(r.method)}, {"orbit_count", r.orbit_count.get_str()}};
  j["total_tuples"] = r.total_tuples == 0 ? json(nullptr) : json(r.total_tuples.get_str());
  return j;
}

int do_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const FieldCtx F = input_field(a.q);
  json params{{"n", a.n}, {"k", a.k}, {"q", a.q}, {"method", a.method}};
  json result;
  std::ostringstream text;
  Timer timer;
  if (a.method == "tuples") {
    const mpz_class c = commuting_tuple_count(a.n, F, a.k);
    result = json{{"method", "tuples"}, {"commuting_tuples", c.get_str()}};
    text << "commuting " << a.k << "-tuples in M_" << a.n << "(F_" << a.q << "): " << c.get_str() << "\n";
  } else {
    const OrbitReport r = a.method == "direct" ? orbit_count_direct(a.n, F, a.k, a.c.threads)
                                               : orbit_count_burnside(a.n, F, a.k, a.c.threads);
    result = report_json(r);
    text << "orbits (" << method_name(r.method) << "), n=" << a.n << " k=" << a.k << " q=" << a.q << ": "
         << r.orbit_count.get_str() << "\n";
    if (r.total_tuples != 0) text << "commuting tuples: " << r.total_tuples.get_str() << "\n";
  }
  timer.report(err, "oracle");
  if (a.c.json)
    out << envelope("oracle", params, result).dump(2) << "\n";
  else
    out << text.str();
  return kOk;
}

// ---- verify

struct VerifyArgs {
  Common c;
  int n = 0;
  int kmax = 0;
  long q = 0;
};

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const FieldCtx F = input_field(a.q);
  json rows = json::array();
  std::ostringstream text;
  bool all = true;
  Timer timer;
  const mpz_class order = gl_order(a.n, a.q);
  for (int k = 1; k <= a.kmax; ++k) {
    const PolyQ c = count(a.n, k);
    const mpz_class want = c.eval_at(a.q);
    OrbitReport r;
    bool direct = order <= 10000;
    if (direct) {
      try {
        r = orbit_count_direct(a.n, F, k, a.c.threads);
      } catch (const ResourceError&) {
        direct = false;
      }
    }
    if (!direct) r = orbit_count_burnside(a.n, F, k, a.c.threads);
    const bool ok = r.orbit_count == want;
    all = all && ok;
    rows.push_back({{"k", k},
                    {"polynomial", c.str()},
                    {"expected", want.get_str()},
                    {"oracle", r.orbit_count.get_str()},
                    {"method", method_name(r.method)},
                    {"agree", ok}});
    text << "k=" << k << " " << (ok ? "OK" : "MISMATCH") << " symbolic=" << want.get_str()
         << " oracle=" << r.orbit_count.get_str() << " (" << method_name(r.method) << ")\n";
  }
  timer.report(err, "verify");
  json params{{"n", a.n}, {"kmax", a.kmax}, {"q", a.q}};
  if (a.c.json)
    out << envelope("verify", params, json{{"rows", rows}, {"all_agree", all}}).dump(2) << "\n";
  else
    out << text.str();
  return all ? kOk : kMismatch;
}

// ---- classify

struct ClassifyArgs {
  Common c;
  std::string input;
};

int do_classify(const ClassifyArgs& a, std::ostream& out) {
  std::ifstream f(a.input);
  if (!f) throw InvalidArgument("cannot open input file " + a.input);
  std::stringstream buf;
  buf << f.rdbuf();
  const auto tuples = parse_matrix_file(buf.str());
  json items = json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const auto& t = tuples[i];
    const Subalgebra Z = centralizer_basis(t);
    const TypeDescriptor type = classify_centralizer(Z);
    const std::uint64_t units = unit_count(Z);
    json item{{"index", i + 1}, {"type", type.str()}, {"centralizer_dim", Z.dim()}, {"unit_count", units}};
    text << "tuple " << i + 1 << ": " << type.str() << "  centralizer dim " << Z.dim() << ", units " << units;
    if (t.size() == 1) {
      const auto [label, desc] = classify_matrix(t[0]);
      item["class_label"] = label.str();
      text << "  [" << label.str() << "]";
    }
    text << "\n";
    items.push_back(item);
  }
  if (a.c.json)
    out << envelope("classify", json{{"input", a.input}}, json{{"tuples", items}}).dump(2) << "\n";
  else
    out << text.str();
  return kOk;
}

// ---- census

struct CensusArgs {
  Common c;
  std::string type;
  long q = 0;
  int n = 4;
};

int do_census(const CensusArgs& a, std::ostream& out, std::ostream& err) {
  const FieldCtx F = input_field(a.q);
  const TypeDescriptor t = TypeDescriptor::parse(a.type, a.n);
  if (t.kind() == TypeKind::Regular) throw InvalidArgument("census needs a concrete type, not Regular");
  Timer timer;
  const auto base = tuple_representative(t, F);
  const CensusReport r = branch_census(base, a.c.threads);
  timer.report(err, "census");
  const auto got = r.aggregated();
  const auto want = predicted_census(t, a.q);
  bool match = got.size() == want.size();
  for (const auto& [k, v] : want) {
    auto it = got.find(k);
    if (it == got.end() || mpz_class(static_cast<unsigned long>(it->second)) != v) match = false;
  }
  std::ostringstream text;
  text << "census of " << t.str() << " at q=" << a.q << ": centralizer dim " << r.dim << ", " << r.unit_count
       << " units\n";
  text << std::left << std::setw(24) << "type" << std::setw(10) << "census" << "predicted\n";
  std::map<TypeDescriptor, std::pair<std::string, std::string>> table;
  for (const auto& [k, v] : got) table[k].first = std::to_string(v);
  for (const auto& [k, v] : want) table[k].second = v.get_str();
  json aggregated = json::object(), predicted = json::object(), rows = json::array();
  for (const auto& [k, v] : table) {
    text << std::setw(24) << k.str() << std::setw(10) << (v.first.empty() ? "0" : v.first)
         << (v.second.empty() ? "0" : v.second) << "\n";
  }
  for (const auto& [k, v] : got) aggregated[k.str()] = v;
  for (const auto& [k, v] : want) predicted[k.str()] = v.get_str();
  for (const auto& row : r.rows)
    rows.push_back({{"type", row.type.str()}, {"orbits", row.orbits}, {"elements", row.elements}});
  text << (match ? "MATCH" : "MISMATCH") << "\n";
  json params{{"type", t.str()}, {"q", a.q}};
  json result{{"base_type", r.base_type.str()}, {"dim", r.dim},         {"unit_count", r.unit_count},
              {"rows", rows},                   {"aggregated", aggregated}, {"predicted", predicted},
              {"match", match}};
  if (a.c.json)
    out << envelope("census", params, result).dump(2) << "\n";
  else
    out << text.str();
  return match ? kOk : kMismatch;
}

// ---- nonneg

struct NonnegArgs {
  Common c;
  int kmax = 60;
  int ineq_kmax = 50;
};

json cert_json(const CertReport& r, std::ostringstream& text, const std::string& label) {
  std::map<std::string, int> by_kind;
  for (const auto& v : r.violations) ++by_kind[v.what];
  json j{{"kmax", r.kmax}, {"checked", r.checked}, {"violation_count", r.violations.size()}};
  j["by_kind"] = by_kind;
  json first = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < 20; ++i) {
    const auto& v = r.violations[i];
    first.push_back({{"what", v.what}, {"j", v.j}, {"k", v.k}, {"l", v.l}, {"value", v.value}});
  }
  j["first_violations"] = first;
  text << label << " (kmax=" << r.kmax << "): " << r.checked << " checks, " << r.violations.size() << " violations\n";
  for (const auto& [kind, c] : by_kind) text << "  " << kind << ": " << c << "\n";
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
    const auto& v = r.violations[i];
    text << "  e.g. " << v.what << " at j=" << v.j << " k=" << v.k << " (lhs - rhs = " << v.value << ")\n";
  }
  return j;
}

int do_nonneg(const NonnegArgs& a, std::ostream& out, std::ostream& err) {
  Timer timer;
  const CertReport cert = certify_nonneg(a.kmax);
  const CertReport ineq = check_inequalities(a.ineq_kmax);
  timer.report(err, "nonneg");
  std::ostringstream text;
  json result;
  result["certify"] = cert_json(cert, text, "coefficients d_jk");
  result["inequalities"] = cert_json(ineq, text, "inequalities");
  const bool clean = cert.clean() && ineq.clean();
  result["clean"] = clean;
  text << (clean ? "CLEAN" : "VIOLATIONS FOUND") << "\n";
  if (a.c.json)
    out << envelope("nonneg", json{{"kmax", a.kmax}, {"ineq_kmax", a.ineq_kmax}}, result).dump(2) << "\n";
  else
    out << text.str();
  return clean ? kOk : kMismatch;
}

}  // namespace

std::vector<std::vector<Matrix>> parse_matrix_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = 0, k = 0;
  long q = 0;
  bool header = false;
  std::optional<FieldCtx> F;
  std::vector<std::vector<Matrix>> tuples;
  std::vector<std::vector<int>> rows;  // rows of the tuple in progress
  auto fail = [&](const std::string& why) { return InvalidArgument("line " + std::to_string(lineno) + ": " + why); };
  auto finish = [&]() {
    if (rows.empty()) return;
    if (static_cast<int>(rows.size()) != n * k)
      throw fail("tuple has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n * k));
    std::vector<Matrix> t;
    for (int b = 0; b < k; ++b)
      t.push_back(Matrix::from_rows(*F, std::vector<std::vector<int>>(rows.begin() + b * n, rows.begin() + (b + 1) * n)));
    tuples.push_back(std::move(t));
    rows.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string s = line.substr(first);
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s == "---") {
      if (!header) throw fail("separator before header");
      if (rows.empty()) throw fail("empty tuple");
      finish();
      continue;
    }
    std::istringstream ls(s);
    std::vector<long> vals;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        vals.push_back(v);
      } catch (const std::exception&) {
        throw fail("not an integer: '" + tok + "'");
      }
    }
    if (!header) {
      if (vals.size() != 3) throw fail("header must be 'n k q'");
      if (vals[0] < 1 || vals[0] > 4) throw fail("n must be 1..4");
      if (vals[1] < 1 || vals[1] > 16) throw fail("k must be 1..16");
      if (!is_small_prime(vals[2])) throw fail("q must be a prime <= 7");
      n = static_cast<int>(vals[0]);
      k = static_cast<int>(vals[1]);
      q = vals[2];
      F = make_field(static_cast<int>(q));
      header = true;
      continue;
    }
    if (static_cast<int>(vals.size()) != n) throw fail("expected " + std::to_string(n) + " entries");
    for (long v : vals)
      if (v < 0 || v >= q) throw fail("entry " + std::to_string(v) + " outside 0.." + std::to_string(q - 1));
    if (static_cast<int>(rows.size()) == n * k) throw fail("too many rows in tuple (missing '---'?)");
    rows.emplace_back(vals.begin(), vals.end());
  }
  if (!header) throw InvalidArgument("missing header 'n k q'");
  finish();
  if (tuples.empty()) throw InvalidArgument("no tuples in input");
  return tuples;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simultaneous similarity classes of commuting matrix tuples over finite fields"};
  app.name("simsim");
  app.require_subcommand(1);

  CountArgs count_a;
  auto* count_cmd = app.add_subcommand("count", "c_{n,k}(q) as a polynomial, or its value at q");
  count_cmd->add_option("--n", count_a.n, "Matrix size")->required()->check(CLI::Range(2, 4));
  count_cmd->add_option("--k", count_a.k, "Tuple length")->required()->check(CLI::Range(1, 200));
  count_cmd->add_option("--q", count_a.q, "Evaluate at this q");
  add_common(count_cmd, count_a.c);

  GenfunArgs gen_a;
  auto* gen_cmd = app.add_subcommand("genfun", "Closed-form generating function h_n(q,t)");
  gen_cmd->add_option("--n", gen_a.n, "Matrix size")->required()->check(CLI::Range(2, 4));
  gen_cmd->add_option("--terms", gen_a.terms, "Print this many series terms")->check(CLI::Range(0, 200));
  gen_cmd->add_flag("--verify", gen_a.verify, "Check against the branching-matrix series");
  add_common(gen_cmd, gen_a.c);

  OracleArgs or_a;
  auto* or_cmd = app.add_subcommand("oracle", "Brute-force orbit or tuple count");
  or_cmd->add_option("--n", or_a.n, "Matrix size")->required()->check(CLI::Range(1, 4));
  or_cmd->add_option("--k", or_a.k, "Tuple length")->required()->check(CLI::Range(1, 16));
  or_cmd->add_option("--q", or_a.q, "Field order (prime <= 7)")->required();
  or_cmd->add_option("--method", or_a.method, "direct | burnside | tuples")
      ->check(CLI::IsMember({"direct", "burnside", "tuples"}));
  add_common(or_cmd, or_a.c);

  VerifyArgs ver_a;
  auto* ver_cmd = app.add_subcommand("verify", "Oracle against symbolic counts for all k <= kmax");
  ver_cmd->add_option("--n", ver_a.n, "Matrix size")->required()->check(CLI::Range(2, 4));
  ver_cmd->add_option("--kmax", ver_a.kmax, "Largest tuple length")->required()->check(CLI::Range(1, 16));
  ver_cmd->add_option("--q", ver_a.q, "Field order (prime <= 7)")->required();
  add_common(ver_cmd, ver_a.c);

  ClassifyArgs cl_a;
  auto* cl_cmd = app.add_subcommand("classify", "Classify the tuples in a matrix file");
  cl_cmd->add_option("--input", cl_a.input, "Matrix file")->required();
  add_common(cl_cmd, cl_a.c);

  CensusArgs ce_a;
  auto* ce_cmd = app.add_subcommand("census", "Branch census of a type against its predicted table");
  ce_cmd->add_option("--type", ce_a.type, "Type, e.g. (2,1)_1 or NT3")->required();
  ce_cmd->add_option("--q", ce_a.q, "Field order (prime <= 7)")->required();
  add_common(ce_cmd, ce_a.c);

  NonnegArgs nn_a;
  auto* nn_cmd = app.add_subcommand("nonneg", "Non-negativity certificate for c_{4,k}(q)");
  nn_cmd->add_option("--kmax", nn_a.kmax, "Largest k for the coefficient check")->check(CLI::Range(1, 400));
  nn_cmd->add_option("--ineq-kmax", nn_a.ineq_kmax, "Largest k for the inequality check")->check(CLI::Range(4, 400));
  add_common(nn_cmd, nn_a.c);

  std::vector<const char*> argv{"simsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count_cmd) return do_count(count_a, out);
    if (*gen_cmd) return do_genfun(gen_a, out);
    if (*or_cmd) return do_oracle(or_a, out, err);
    if (*ver_cmd) return do_verify(ver_a, out, err);
    if (*cl_cmd) return do_classify(cl_a, out);
    if (*ce_cmd) return do_census(ce_a, out, err);
    if (*nn_cmd) return do_nonneg(nn_a, out, err);
  } catch (const ResourceError& e) {
    err << "resource bound exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "verification failure: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}

}  // namespace simsim::cli
