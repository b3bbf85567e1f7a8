#include "ffdens/geonum.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace ffdens {

// ---------------------------------------------------------------- Laurent

bool Laurent::is_zero() const {
  for (auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

int Laurent::valuation() const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) return val + static_cast<int>(i);
  return std::numeric_limits<int>::max() / 4;
}

FqElem Laurent::coeff(int k) const {
  const int i = k - val;
  if (c.empty()) throw std::logic_error("coefficient of an empty series");
  if (i < 0 || i >= (int)c.size()) return c[0].f->zero();
  return c[i];
}

Laurent Laurent::truncated(int prec) const {
  Laurent r = *this;
  if (prec <= val) {
    r.c.clear();
    r.val = prec;
    return r;
  }
  if ((int)r.c.size() > prec - val) r.c.resize(prec - val);
  return r;
}

Laurent laurent_zero(const FqField&) { return Laurent{0, {}}; }

namespace {

const FqField* field_of(const Laurent& x, const Laurent& y) {
  if (!x.c.empty()) return x.c[0].f;
  if (!y.c.empty()) return y.c[0].f;
  return nullptr;
}

Laurent combine(const Laurent& x, const Laurent& y, bool sub) {
  const FqField* F = field_of(x, y);
  if (!F) return Laurent{std::min(x.val, y.val), {}};
  const int lo = std::min(x.val, y.val);
  const int hi = std::max(x.val + (int)x.c.size(), y.val + (int)y.c.size());
  Laurent r{lo, std::vector<FqElem>(hi - lo, F->zero())};
  for (std::size_t i = 0; i < x.c.size(); ++i) r.c[x.val - lo + i] = r.c[x.val - lo + i] + x.c[i];
  for (std::size_t i = 0; i < y.c.size(); ++i)
    r.c[y.val - lo + i] = sub ? r.c[y.val - lo + i] - y.c[i] : r.c[y.val - lo + i] + y.c[i];
  return r;
}

}  // namespace

Laurent operator+(const Laurent& x, const Laurent& y) { return combine(x, y, false); }
Laurent operator-(const Laurent& x, const Laurent& y) { return combine(x, y, true); }

Laurent operator*(const Laurent& x, const Laurent& y) {
  if (x.c.empty() || y.c.empty()) return Laurent{x.val + y.val, {}};
  const FqField& F = *x.c[0].f;
  Laurent r{x.val + y.val, std::vector<FqElem>(x.c.size() + y.c.size() - 1, F.zero())};
  for (std::size_t i = 0; i < x.c.size(); ++i)
    if (!x.c[i].is_zero())
      for (std::size_t j = 0; j < y.c.size(); ++j) r.c[i + j] = r.c[i + j] + x.c[i] * y.c[j];
  return r;
}

Laurent shift(const Laurent& x, int k) { return Laurent{x.val + k, x.c}; }

long psi_exponent(const Place& v, const Laurent& x) {
  if (x.c.empty()) return 0;
  const FqField& F = v.field();
  // dt = d(t - a) at a finite place; dt = -u^-2 du at infinity.
  const FqElem r = v.is_infinite() ? -x.coeff(1) : x.coeff(-1);
  return static_cast<long>(F.trace(r));
}

// ---------------------------------------------------------------- boxes

namespace {

void check_places(const std::vector<Place>& S) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i].degree() != 1) throw std::invalid_argument("only degree-1 places are supported in S");
    for (std::size_t j = 0; j < i; ++j)
      if (S[i] == S[j]) throw std::invalid_argument("repeated place in S");
  }
  if (S.empty()) throw std::invalid_argument("empty S");
}

FqElem root_of(const Place& v) { return -v.pi()[0]; }

Rational qpow(std::uint64_t q, long e) {
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), q, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(m) : Rational(1) / Rational(m);
}

}  // namespace

bool local_disjoint(const LocalBox& x, const LocalBox& y) {
  const int m = std::min(x.level, y.level);
  return (x.shift.truncated(m) - y.shift.truncated(m)).valuation() < m;
}

void validate_box(const BoxUnion& B) {
  check_places(B.S);
  if (B.n < 1) throw std::invalid_argument("box dimension must be positive");
  for (auto& m : B.members) {
    if ((int)m.axes.size() != B.n) throw std::invalid_argument("box axis count mismatch");
    for (auto& a : m.axes)
      if (a.size() != B.S.size()) throw std::invalid_argument("box place count mismatch");
  }
  for (std::size_t i = 0; i < B.members.size(); ++i)
    for (std::size_t k = 0; k < i; ++k) {
      bool disjoint = false;
      for (int j = 0; j < B.n && !disjoint; ++j)
        for (std::size_t s = 0; s < B.S.size() && !disjoint; ++s)
          disjoint = local_disjoint(B.members[i].axes[j][s], B.members[k].axes[j][s]);
      if (!disjoint) throw std::invalid_argument("box members overlap");
    }
}

BoxUnion scale_box(const BoxUnion& B, const Scaling& t) {
  if ((int)t.size() != B.n) throw std::invalid_argument("scaling dimension mismatch");
  BoxUnion r = B;
  for (auto& m : r.members)
    for (int j = 0; j < B.n; ++j)
      for (std::size_t s = 0; s < B.S.size(); ++s) {
        m.axes[j][s].shift = shift(m.axes[j][s].shift, t[j].at(s));
        m.axes[j][s].level += t[j][s];
      }
  return r;
}

Rational local_volume(const Place& v, int level) {
  const std::uint64_t q = v.field().q();
  // meas(O_v) = q^{-k_v/2}; k_v is even here.
  return qpow(q, -v.canonical_exponent() / 2 - level);
}

Rational box_volume(const BoxUnion& B) {
  Rational total = 0;
  for (auto& m : B.members) {
    Rational p = 1;
    for (int j = 0; j < B.n; ++j)
      for (std::size_t s = 0; s < B.S.size(); ++s) p *= local_volume(B.S[s], m.axes[j][s].level);
    total += p;
  }
  return total;
}

Rational covolume(const std::vector<Place>& S) {
  // Self-dual measures give Vol(A_K/K) = 1, so Vol(K_S/O_S) = 1 / prod_{v not in S} meas(O_v).
  bool has_inf = false;
  for (auto& v : S) has_inf = has_inf || v.is_infinite();
  if (has_inf) return 1;
  return qpow(S.at(0).field().q(), -1);
}

std::vector<std::vector<int>> conductor(const BoxUnion& B) {
  std::vector<std::vector<int>> c(B.n, std::vector<int>(B.S.size(), std::numeric_limits<int>::min()));
  for (auto& m : B.members)
    for (int j = 0; j < B.n; ++j)
      for (std::size_t s = 0; s < B.S.size(); ++s) c[j][s] = std::max(c[j][s], m.axes[j][s].level);
  for (auto& row : c)
    for (auto& x : row)
      if (x == std::numeric_limits<int>::min()) x = 0;
  return c;
}

int conductor_degree(const BoxUnion& B, int axis) {
  const auto c = conductor(B);
  int d = 0;
  for (std::size_t s = 0; s < B.S.size(); ++s) d += c.at(axis)[s] * B.S[s].degree();
  return d;
}

int log_norm(const Scaling& t, int axis) {
  int s = 0;
  for (int v : t.at(axis)) s -= v;
  return s;
}

FourierBox fourier_box(const std::vector<Place>& S, const std::vector<int>& levels) {
  check_places(S);
  if (levels.size() != S.size()) throw std::invalid_argument("level count mismatch");
  FourierBox r{1, {}};
  for (std::size_t s = 0; s < S.size(); ++s) {
    r.coefficient *= local_volume(S[s], levels[s]);
    r.support.push_back(-levels[s] - S[s].canonical_exponent());
  }
  return r;
}

Cyclotomic fourier_box_pointwise(const Place& v, int level, const Laurent& y) {
  const FqField& F = v.field();
  const int p = static_cast<int>(F.p());
  const int k = v.canonical_exponent();
  const int L = y.is_zero() ? level : std::max(level, -k - y.valuation());
  if (L - level > 10) throw std::invalid_argument("discretisation too fine");
  Cyclotomic sum(p);
  std::uint64_t total = 1;
  for (int i = level; i < L; ++i) total *= F.q();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Laurent x{level, {}};
    std::uint64_t r = idx;
    for (int i = level; i < L; ++i) {
      x.c.push_back(F.elem(static_cast<std::uint32_t>(r % F.q())));
      r /= F.q();
    }
    sum.add_root(psi_exponent(v, x * y));
  }
  return sum.scale(local_volume(v, L));
}

Cyclotomic fourier_box_closed(const Place& v, int level, const Laurent& y) {
  const int p = static_cast<int>(v.field().p());
  const bool in = y.valuation() >= -level - v.canonical_exponent();
  return Cyclotomic::integer(p, in ? local_volume(v, level) : Rational(0));
}

// ---------------------------------------------------------------- Riemann-Roch spaces

int RRSpace::degree() const {
  int total = 0;
  bool has_inf = false;
  for (std::size_t s = 0; s < S.size(); ++s) {
    total += d[s];
    has_inf = has_inf || S[s].is_infinite();
  }
  return has_inf ? total : total + d_inf_outside;
}

long RRSpace::dimension() const { return std::max(0, degree() + 1); }

namespace {

// Unit power series helpers, truncated to R terms.
std::vector<FqElem> series_mul(const std::vector<FqElem>& a, const std::vector<FqElem>& b, int R) {
  const FqField& F = *a[0].f;
  std::vector<FqElem> r(R, F.zero());
  for (int i = 0; i < R && i < (int)a.size(); ++i)
    if (!a[i].is_zero())
      for (int j = 0; i + j < R && j < (int)b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

std::vector<FqElem> series_inv(const std::vector<FqElem>& a, int R) {
  const FqField& F = *a[0].f;
  std::vector<FqElem> r(R, F.zero());
  const FqElem inv0 = a[0].inv();
  for (int n = 0; n < R; ++n) {
    FqElem s = n == 0 ? F.one() : F.zero();
    for (int i = 1; i <= n && i < (int)a.size(); ++i) s = s - a[i] * r[n - i];
    r[n] = s * inv0;
  }
  return r;
}

// (c0 + c1 pi)^e as (valuation, unit series with R terms).
std::pair<int, std::vector<FqElem>> linear_power(const FqElem& c0, const FqElem& c1, int e, int R) {
  const FqField& F = *c0.f;
  if (c0.is_zero()) {
    std::vector<FqElem> u(std::max(R, 1), F.zero());
    u[0] = c1.pow(e < 0 ? 0 : e);
    if (e < 0) u[0] = c1.inv().pow(-e);
    return {e, u};
  }
  std::vector<FqElem> base = {c0, c1};
  std::vector<FqElem> acc(std::max(R, 1), F.zero());
  acc[0] = F.one();
  for (int i = 0; i < std::abs(e); ++i) acc = series_mul(acc, base, std::max(R, 1));
  if (e < 0) acc = series_inv(acc, std::max(R, 1));
  return {0, acc};
}

}  // namespace

std::vector<std::vector<Laurent>> RRSpace::basis_expansions(const std::vector<int>& prec) const {
  const FqField& F = S.at(0).field();
  const int dim = static_cast<int>(dimension());
  // Finite places of S carry the denominators (t - a_s)^{d_s}.
  std::vector<std::pair<FqElem, int>> den;
  for (std::size_t s = 0; s < S.size(); ++s)
    if (!S[s].is_infinite()) den.push_back({root_of(S[s]), d[s]});
  std::vector<std::vector<Laurent>> out(S.size());
  for (std::size_t s = 0; s < S.size(); ++s) {
    const Place& v = S[s];
    for (int i = 0; i < dim; ++i) {
      // Factors (valuation, unit series); R is fixed once the valuation is known.
      std::vector<std::tuple<FqElem, FqElem, int>> lin;  // (c0 + c1 pi)^e
      int extra_val = 0;
      if (v.is_infinite()) {
        extra_val -= i;  // t^i = u^-i
        for (auto& [a, dd] : den) {
          extra_val += dd;  // (1/u - a)^-d = u^d (1 - a u)^-d
          lin.push_back({F.one(), -a, -dd});
        }
      } else {
        const FqElem a = root_of(v);
        lin.push_back({a, F.one(), i});  // t^i = (a + pi)^i
        for (auto& [b, dd] : den) lin.push_back({a - b, F.one(), -dd});
      }
      int V = extra_val;
      for (auto& [c0, c1, e] : lin)
        if (c0.is_zero()) V += e;
      const int R = prec[s] - V;
      Laurent x{V, {}};
      if (R > 0) {
        std::vector<FqElem> u(R, F.zero());
        u[0] = F.one();
        for (auto& [c0, c1, e] : lin) u = series_mul(u, linear_power(c0, c1, e, R).second, R);
        x.c = u;
      }
      out[s].push_back(x);
    }
  }
  return out;
}

// ---------------------------------------------------------------- counting

namespace {

constexpr long kMaxDim = 14;

// Elements x of O_S enumerated by coefficient vectors; calls fn with local
// expansions (dense windows) at each place.
template <class Fn>
void enumerate_space(const RRSpace& V, const std::vector<int>& prec, Fn fn) {
  const long dim = V.dimension();
  if (dim > kMaxDim) throw std::runtime_error("Riemann-Roch space too large for enumeration");
  const FqField& F = V.S.at(0).field();
  const auto basis = V.basis_expansions(prec);
  const std::size_t ns = V.S.size();
  // Dense windows [lo_s, prec_s) per place.
  std::vector<int> lo(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    lo[s] = prec[s];
    for (long i = 0; i < dim; ++i) lo[s] = std::min(lo[s], basis[s][i].val);
  }
  using Dense = std::vector<std::vector<FqElem>>;
  auto dense_zero = [&] {
    Dense d(ns);
    for (std::size_t s = 0; s < ns; ++s) d[s].assign(prec[s] - lo[s], F.zero());
    return d;
  };
  // multiples[i][c] = c * basis_i
  std::vector<std::vector<Dense>> multiples(dim);
  for (long i = 0; i < dim; ++i)
    for (std::uint32_t c = 0; c < F.q(); ++c) {
      Dense d = dense_zero();
      for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t k = 0; k < basis[s][i].c.size(); ++k) {
          const int pos = basis[s][i].val + static_cast<int>(k) - lo[s];
          if (pos < (int)d[s].size()) d[s][pos] = basis[s][i].c[k] * F.elem(c);
        }
      multiples[i].push_back(std::move(d));
    }
  std::vector<Dense> partial(dim + 1, dense_zero());
  std::vector<Laurent> local(ns);
  auto rec = [&](auto&& self, long i) -> void {
    if (i == dim) {
      for (std::size_t s = 0; s < ns; ++s) local[s] = Laurent{lo[s], partial[i][s]};
      fn(local);
      return;
    }
    for (std::uint32_t c = 0; c < F.q(); ++c) {
      for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t k = 0; k < partial[i][s].size(); ++k)
          partial[i + 1][s][k] = partial[i][s][k] + multiples[i][c][s][k];
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

Integer axis_count(const std::vector<Place>& S, const std::vector<LocalBox>& box) {
  RRSpace V{S, {}, 0};
  std::vector<int> prec;
  for (std::size_t s = 0; s < S.size(); ++s) {
    const Laurent x0 = box[s].shift.truncated(box[s].level);
    V.d.push_back(-std::min(x0.valuation(), box[s].level));
    prec.push_back(box[s].level);
  }
  Integer n = 0;
  enumerate_space(V, prec, [&](const std::vector<Laurent>& x) {
    for (std::size_t s = 0; s < S.size(); ++s)
      if ((x[s] - box[s].shift.truncated(box[s].level)).valuation() < box[s].level) return;
    ++n;
  });
  return n;
}

Cyclotomic axis_character_sum(const std::vector<Place>& S, const std::vector<LocalBox>& box) {
  const int p = static_cast<int>(S[0].field().p());
  RRSpace V{S, {}, -2};  // O_S^perp: v(y) >= -k_v outside S
  std::vector<int> prec;
  std::vector<Laurent> x0;
  for (std::size_t s = 0; s < S.size(); ++s) {
    x0.push_back(box[s].shift.truncated(box[s].level));
    V.d.push_back(box[s].level + S[s].canonical_exponent());
    const int v0 = x0[s].valuation();
    // Enough precision to read the residue of x0 y.
    prec.push_back(x0[s].is_zero() ? -V.d.back() : (S[s].is_infinite() ? 2 : 0) - v0);
    prec.back() = std::max(prec.back(), -V.d.back());
  }
  Cyclotomic sum(p);
  enumerate_space(V, prec, [&](const std::vector<Laurent>& y) {
    long e = 0;
    for (std::size_t s = 0; s < S.size(); ++s)
      if (!x0[s].is_zero()) e += psi_exponent(S[s], x0[s] * y[s]);
    sum.add_root(e);
  });
  return sum;
}

Rational inverse_covolume(const std::vector<Place>& S) { return Rational(1) / covolume(S); }

}  // namespace

Integer direct_count(const BoxUnion& B) {
  validate_box(B);
  Integer total = 0;
  for (auto& m : B.members) {
    Integer prod = 1;
    for (int j = 0; j < B.n && prod != 0; ++j) prod *= axis_count(B.S, m.axes[j]);
    total += prod;
  }
  return total;
}

Integer poisson_count(const BoxUnion& B) {
  validate_box(B);
  const int p = static_cast<int>(B.S[0].field().p());
  Cyclotomic total(p);
  Rational CS = 1;
  for (int j = 0; j < B.n; ++j) CS *= inverse_covolume(B.S);
  for (auto& m : B.members) {
    Rational vol = 1;
    Cyclotomic prod = Cyclotomic::integer(p, 1);
    for (int j = 0; j < B.n; ++j) {
      for (std::size_t s = 0; s < B.S.size(); ++s) vol *= local_volume(B.S[s], m.axes[j][s].level);
      prod = prod * axis_character_sum(B.S, m.axes[j]);
    }
    total = total + prod.scale(vol * CS);
  }
  const auto r = total.as_rational();
  if (!r || r->get_den() != 1) throw std::logic_error("Poisson sum is not an integer");
  return r->get_num();
}

CountCheck exact_count_check(const BoxUnion& B, const Scaling& t) {
  validate_box(B);
  const BoxUnion tB = scale_box(B, t);
  CountCheck r;
  r.count = direct_count(tB);
  r.poisson = poisson_count(tB);
  r.volume = box_volume(tB) / [&] {
    Rational c = 1;
    for (int j = 0; j < B.n; ++j) c *= covolume(B.S);
    return c;
  }();
  r.threshold_met = true;
  for (int j = 0; j < B.n; ++j) {
    r.log_t.push_back(log_norm(t, j));
    r.deg_B.push_back(conductor_degree(B, j));
    // genus 0: log_q |t_j|_S > 2g - 2 + deg B
    r.threshold_met = r.threshold_met && r.log_t.back() > -2 + r.deg_B.back();
  }
  return r;
}

namespace {

std::vector<std::vector<std::uint32_t>> expand_cosets(const FqField& F, const LocalBox& b, int L) {
  // Codes of the digits of the cosets of pi^L O inside b, over the window [lo, L).
  const Laurent x0 = b.shift.truncated(b.level);
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t total = 1;
  for (int i = b.level; i < L; ++i) total *= F.q();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Laurent x = x0;
    std::uint64_t r = idx;
    Laurent extra{b.level, {}};
    for (int i = b.level; i < L; ++i) {
      extra.c.push_back(F.elem(static_cast<std::uint32_t>(r % F.q())));
      r /= F.q();
    }
    x = (x + extra).truncated(L);
    std::vector<std::uint32_t> key;
    const int v = x.valuation();
    if (v < L) {
      key.push_back(static_cast<std::uint32_t>(v + (1 << 20)));
      for (int i = v; i < L; ++i) key.push_back(x.coeff(i).v);
    }
    out.push_back(std::move(key));
  }
  return out;
}

}  // namespace

SkewReport skew_count_bound(const BoxUnion& B, const Scaling& t, int i, int gamma) {
  validate_box(B);
  if (i < 1 || i > B.n) throw std::invalid_argument("precondition violated: i out of range");
  for (int j = 0; j + 1 < i; ++j)
    for (std::size_t s = 0; s < B.S.size(); ++s)
      if (-t[j][s] >= gamma) throw std::invalid_argument("precondition violated: |t_j|_v >= c_1");
  for (int j = i - 1; j < B.n; ++j)
    if (log_norm(t, j) <= -2 + conductor_degree(B, j))
      throw std::invalid_argument("precondition violated: |t_j|_S below threshold");
  const BoxUnion tB = scale_box(B, t);
  SkewReport r;
  r.count = direct_count(tB);
  const FqField& F = B.S[0].field();
  const Rational CS = inverse_covolume(B.S);
  if (i == 1) {
    Rational c = 1;
    for (int j = 0; j < B.n; ++j) c *= CS;
    r.C0 = 1;
    r.C2 = 1;
    r.R = 1;
    r.proj_volume = box_volume(tB) * c;
    r.bound = r.proj_volume;
    return r;
  }
  const auto cB = conductor(B);
  // Translates of c(B) covering B.
  r.C2 = 0;
  for (auto& m : B.members) {
    Rational k = 1;
    for (int j = 0; j < B.n; ++j)
      for (std::size_t s = 0; s < B.S.size(); ++s) k *= qpow(F.q(), cB[j][s] - m.axes[j][s].level);
    r.C2 += k;
  }
  // Points of O_S^{i-1} in proj(c(tB)): v_s(x_j) >= c_{j,s} - gamma + 1.
  r.R = 1;
  for (int j = 0; j + 1 < i; ++j) {
    RRSpace V{B.S, {}, 0};
    for (std::size_t s = 0; s < B.S.size(); ++s) V.d.push_back(-(cB[j][s] - gamma + 1));
    r.R *= qpow(F.q(), V.dimension());
  }
  // Volume of the projection onto axes i..n, deduplicated at the common refinement.
  const auto cT = conductor(tB);
  std::set<std::vector<std::vector<std::uint32_t>>> cosets;
  for (auto& m : tB.members) {
    std::vector<std::vector<std::vector<std::uint32_t>>> parts;
    for (int j = i - 1; j < B.n; ++j)
      for (std::size_t s = 0; s < B.S.size(); ++s) parts.push_back(expand_cosets(F, m.axes[j][s], cT[j][s]));
    std::vector<std::size_t> idx(parts.size(), 0);
    for (;;) {
      std::vector<std::vector<std::uint32_t>> key;
      for (std::size_t a = 0; a < parts.size(); ++a) key.push_back(parts[a][idx[a]]);
      cosets.insert(key);
      std::size_t a = 0;
      while (a < parts.size() && ++idx[a] == parts[a].size()) idx[a++] = 0;
      if (a == parts.size()) break;
    }
  }
  Rational cell = 1;
  for (int j = i - 1; j < B.n; ++j)
    for (std::size_t s = 0; s < B.S.size(); ++s) cell *= local_volume(B.S[s], cT[j][s]);
  r.proj_volume = cell * Rational(static_cast<long>(cosets.size()));
  r.C0 = r.C2 * r.R;
  for (int j = i - 1; j < B.n; ++j) r.C0 *= CS;
  r.bound = r.C0 * r.proj_volume;
  return r;
}

// ---------------------------------------------------------------- random trials

namespace {

Place degree_one_place(const FqField& F, int a) {
  return Place::finite(PolyFq(F.zero(), {-F.from_int(a), F.one()}));
}

LocalBox random_local(const FqField& F, std::mt19937_64& r, int lo, int hi) {
  LocalBox b;
  b.level = lo + static_cast<int>(r() % (hi - lo + 1));
  const int start = b.level - 1 - static_cast<int>(r() % 3);
  b.shift.val = start;
  for (int i = start; i < b.level; ++i) b.shift.c.push_back(F.elem(r() % F.q()));
  return b;
}

std::vector<Place> random_S(const FqField& F, std::mt19937_64& r) {
  switch (r() % 3) {
    case 0:
      return {Place::infinity(F)};
    case 1:
      return {Place::infinity(F), degree_one_place(F, static_cast<int>(r() % F.q()))};
    default:
      return {degree_one_place(F, static_cast<int>(r() % F.q()))};
  }
}

}  // namespace

BoxUnion random_box_union(const FqField& F, std::mt19937_64& r, int n, int members) {
  BoxUnion B;
  B.S = random_S(F, r);
  B.n = n;
  for (int tries = 0; (int)B.members.size() < members && tries < 50; ++tries) {
    ProductBox m;
    for (int j = 0; j < n; ++j) {
      std::vector<LocalBox> row;
      for (std::size_t s = 0; s < B.S.size(); ++s) row.push_back(random_local(F, r, -1, 2));
      m.axes.push_back(row);
    }
    BoxUnion trial = B;
    trial.members.push_back(m);
    try {
      validate_box(trial);
      B = trial;
    } catch (const std::invalid_argument&) {
    }
  }
  return B;
}


ThresholdTrials threshold_trials(const FqField& F, int trials, std::uint64_t seed) {
  std::mt19937_64 r(seed);
  ThresholdTrials out;
  for (int k = 0; k < trials; ++k) {
    auto B = random_box_union(F, r, 1, 1 + static_cast<int>(r() % 2));
    const int need = -2 + conductor_degree(B, 0) + 1 + static_cast<int>(r() % 2);
    Scaling t = {std::vector<int>(B.S.size(), 0)};
    t[0][0] = -need;
    if (B.S.size() > 1) {
      const int spread = static_cast<int>(r() % 3) - 1;
      t[0][0] += spread;
      t[0][1] -= spread;
    }
    auto c = exact_count_check(B, t);
    if (!c.threshold_met) throw std::logic_error("trial below the threshold");
    ++out.trials;
    out.equal += Rational(c.count) == c.volume;
    out.poisson_ok += c.poisson == c.count;
    out.checks.push_back(std::move(c));
  }
  return out;
}

}  // namespace ffdens
