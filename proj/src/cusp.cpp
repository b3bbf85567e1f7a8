#include "ffdens/cusp.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <stdexcept>

#include "ffdens/exact_lp.hpp"
#include "ffdens/weights.hpp"
#include "json.hpp"

namespace ffdens {

namespace {

void check_n(int n) {
  if (n != 3 && n != 4) throw std::invalid_argument("unsupported");
}

bool contains(const CoordSet& U, const std::string& a) { return std::find(U.begin(), U.end(), a) != U.end(); }

CoordSet sorted(int n, const CoordSet& U) {
  CoordSet out;
  for (auto& c : coordinate_names(n))
    if (contains(U, c)) out.push_back(c);
  return out;
}

void validate(int n, const CoordSet& U) {
  check_n(n);
  for (auto& c : U)
    if (!contains(coordinate_names(n), c)) throw std::invalid_argument("malformed U: unknown coordinate " + c);
  if (!contains(U, alpha0(n))) throw std::invalid_argument("malformed U: missing " + alpha0(n));
  if (!is_order_closed(n, U)) throw std::invalid_argument("malformed U: not order-closed");
}

}  // namespace

const std::string& alpha0(int n) {
  static const std::string a3 = "a", a4 = "a11";
  check_n(n);
  return n == 3 ? a3 : a4;
}

bool is_order_closed(int n, const CoordSet& U) {
  for (auto& beta : U)
    for (auto& alpha : coordinate_names(n))
      if (weight_leq(n, alpha, beta) && !contains(U, alpha)) return false;
  return true;
}

std::vector<CoordSet> order_closed_subsets(int n) {
  check_n(n);
  const auto& names = coordinate_names(n);
  std::vector<CoordSet> out;
  for (unsigned mask = 1; mask < (1u << names.size()); ++mask) {
    CoordSet U;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (mask & (1u << i)) U.push_back(names[i]);
    if (contains(U, alpha0(n)) && is_order_closed(n, U)) out.push_back(U);
  }
  std::stable_sort(out.begin(), out.end(), [](const CoordSet& x, const CoordSet& y) { return x.size() < y.size(); });
  return out;
}

CoordSet min_weights(int n, const CoordSet& U) {
  check_n(n);
  CoordSet rest, out;
  for (auto& c : coordinate_names(n))
    if (!contains(U, c)) rest.push_back(c);
  for (auto& b : rest) {
    bool minimal = true;
    for (auto& a : rest)
      if (a != b && weight_leq(n, a, b) && !weight_leq(n, b, a)) minimal = false;
    if (minimal) out.push_back(b);
  }
  return out;
}

std::vector<Rational> certificate_exponents(int n, const CoordSet& U, const std::map<std::string, Rational>& k) {
  const auto d = delta_character(n);
  std::vector<Rational> e(d.begin(), d.end());
  for (auto& a : U) {
    const auto w = torus_weight(n, a);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= w.s[i];
  }
  for (auto& [a, ka] : k) {
    const auto w = torus_weight(n, a);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += ka * w.s[i];
  }
  return e;
}

Rational certificate_lambda(const CoordSet& U, const std::map<std::string, Rational>& k) {
  // Every coordinate has lambda-weight 1 and delta has none.
  Rational l = -static_cast<long>(U.size());
  for (auto& [a, ka] : k) l += ka;
  return l;
}

bool verify_certificate(int n, const Certificate& c) {
  if (!contains(c.U, alpha0(n)) || !is_order_closed(n, c.U)) return false;
  Rational sum = 0;
  for (auto& [a, ka] : c.k) {
    if (ka < 0 || !contains(coordinate_names(n), a)) return false;
    sum += ka;
  }
  if (sum >= static_cast<long>(c.U.size())) return false;
  for (auto& e : certificate_exponents(n, c.U, c.k))
    if (e >= 0) return false;
  return certificate_lambda(c.U, c.k) < 0;
}

namespace {

// Rows of M k < h: one per s_i, then sum k < #U.
void system(int n, const CoordSet& U, const CoordSet& support, std::vector<std::vector<Rational>>& M,
            std::vector<Rational>& h) {
  const auto base = certificate_exponents(n, U, {});
  const std::size_t r = base.size();
  M.assign(r + 1, std::vector<Rational>(support.size(), Rational(0)));
  h.assign(r + 1, Rational(0));
  for (std::size_t j = 0; j < support.size(); ++j) {
    const auto w = torus_weight(n, support[j]);
    for (std::size_t i = 0; i < r; ++i) M[i][j] = w.s[i];
    M[r][j] = 1;
  }
  for (std::size_t i = 0; i < r; ++i) h[i] = -base[i];
  h[r] = static_cast<long>(U.size());
}

}  // namespace

CertifyResult certify(int n, const CoordSet& U0) {
  validate(n, U0);
  const CoordSet U = sorted(n, U0);
  const CoordSet support = min_weights(n, U);
  std::vector<std::vector<Rational>> M;
  std::vector<Rational> h;
  system(n, U, support, M, h);
  const std::size_t rows = M.size(), m = support.size();
  // maximize eps subject to M k + eps <= h, eps <= 1.
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (std::size_t i = 0; i < rows; ++i) {
    auto row = M[i];
    row.push_back(1);
    A.push_back(row);
    b.push_back(h[i]);
  }
  std::vector<Rational> cap(m + 1, Rational(0));
  cap[m] = 1;
  A.push_back(cap);
  b.push_back(1);
  std::vector<Rational> c(m + 1, Rational(0));
  c[m] = 1;
  const auto res = lp_maximize(A, b, c);
  CertifyResult out;
  if (res.status == LpStatus::Optimal && res.value > 0) {
    Certificate cert;
    cert.U = U;
    for (std::size_t j = 0; j < m; ++j)
      if (res.x[j] != 0) cert.k[support[j]] = res.x[j];
    cert.exponents = certificate_exponents(n, U, cert.k);
    cert.lambda_exponent = certificate_lambda(U, cert.k);
    out.cert = cert;
    return out;
  }
  // Motzkin alternative: y >= 0, sum y = 1, -M^T y <= 0, h.y <= 0.
  std::vector<std::vector<Rational>> D;
  std::vector<Rational> e;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> row(rows);
    for (std::size_t i = 0; i < rows; ++i) row[i] = -M[i][j];
    D.push_back(row);
    e.push_back(0);
  }
  D.push_back(h);
  e.push_back(0);
  D.push_back(std::vector<Rational>(rows, Rational(1)));
  e.push_back(1);
  D.push_back(std::vector<Rational>(rows, Rational(-1)));
  e.push_back(-1);
  const auto dual = lp_maximize(D, e, std::vector<Rational>(rows, Rational(0)));
  if (dual.status != LpStatus::Optimal) throw std::logic_error("neither certificate nor dual ray found");
  out.dual = dual.x;
  return out;
}

bool verify_infeasibility(int n, const CoordSet& U0, const std::vector<Rational>& y) {
  const CoordSet U = sorted(n, U0);
  const CoordSet support = min_weights(n, U);
  std::vector<std::vector<Rational>> M;
  std::vector<Rational> h;
  system(n, U, support, M, h);
  if (y.size() != M.size()) return false;
  bool nonzero = false;
  Rational hy = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0) return false;
    nonzero = nonzero || y[i] != 0;
    hy += h[i] * y[i];
  }
  if (!nonzero || hy > 0) return false;
  for (std::size_t j = 0; j < support.size(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += M[i][j] * y[i];
    if (s < 0) return false;
  }
  return true;
}

std::vector<ReducibilityFact> load_facts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open facts file: " + path);
  const auto j = nlohmann::json::parse(in);
  std::vector<ReducibilityFact> out;
  for (auto& item : j) out.push_back({item.at("ideal").get<CoordSet>(), item.value("reason", "")});
  return out;
}

std::vector<ReducibilityFact> default_facts_v4() { return load_facts(std::string(FFDENS_DATA_DIR) + "/facts_v4.json"); }

CuspReport certify_all(int n, const std::vector<ReducibilityFact>& facts, int threads) {
  check_n(n);
  CuspReport rep;
  rep.n = n;
  const auto ideals = order_closed_subsets(n);
  rep.entries.resize(ideals.size());
  auto work = [&](std::size_t i) {
    CuspEntry& e = rep.entries[i];
    e.U = ideals[i];
    if (n == 3) {
      e.disposition = "nongeneric";  // alpha_0 = 0 already forces a rational root
      return;
    }
    for (std::size_t f = 0; f < facts.size(); ++f)
      if (std::all_of(facts[f].ideal.begin(), facts[f].ideal.end(), [&](auto& a) { return contains(e.U, a); })) {
        e.disposition = "reducible";
        e.fact = static_cast<int>(f);
        return;
      }
    auto r = certify(n, e.U);
    e.cert = r.cert;
    e.disposition = r.cert ? "certified" : "failed";
  };
  const int T = std::max(1, threads);
  std::vector<std::future<void>> jobs;
  for (int t = 0; t < T; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < ideals.size(); i += T) work(i);
    }));
  for (auto& j : jobs) j.get();
  for (auto& e : rep.entries) rep.all_disposed = rep.all_disposed && e.disposition != "failed";
  return rep;
}

std::string format_set(const CoordSet& U) {
  std::string s = "{";
  for (std::size_t i = 0; i < U.size(); ++i) s += (i ? "," : "") + U[i];
  return s + "}";
}

}  // namespace ffdens
