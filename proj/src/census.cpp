#include "ffdens/census.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ffdens/mass.hpp"
#include "ffdens/places.hpp"

namespace ffdens {

namespace {

using Code = std::uint32_t;
using CPoly = std::vector<Code>;  // low to high, no trailing zeros

constexpr int kNoDeg = INT_MIN / 4;

void trim(CPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int cdeg(const CPoly& p) { return p.empty() ? kNoDeg : static_cast<int>(p.size()) - 1; }

// dst -= s t^k src
void sub_shifted(const FqField& F, CPoly& dst, const CPoly& src, Code s, int k) {
  if (s == 0 || src.empty()) return;
  if (dst.size() < src.size() + k) dst.resize(src.size() + k, 0);
  for (std::size_t i = 0; i < src.size(); ++i) dst[i + k] = F.sub(dst[i + k], F.mul(s, src[i]));
  trim(dst);
}

CPoly to_cpoly(const PolyFq& p) {
  CPoly r;
  for (auto& c : p.coeffs()) r.push_back(c.v);
  return r;
}

PolyFq to_poly(const FqField& F, const CPoly& p) {
  std::vector<FqElem> c;
  for (Code x : p) c.push_back(F.elem(x));
  return PolyFq(F.zero(), std::move(c));
}

// t^off * sum c_i t^i with c_0 != 0.
struct LPoly {
  int off = 0;
  CPoly c;
  int deg() const { return c.empty() ? kNoDeg : off + static_cast<int>(c.size()) - 1; }
};

LPoly to_lpoly(const CPoly& p) {
  LPoly r;
  std::size_t z = 0;
  while (z < p.size() && p[z] == 0) ++z;
  if (z == p.size()) return r;
  r.off = static_cast<int>(z);
  r.c.assign(p.begin() + z, p.end());
  return r;
}

// sum_i s_i t^{sh} x_i
LPoly lcombine(const FqField& F, const std::vector<std::pair<Code, const LPoly*>>& terms, int sh) {
  int lo = INT_MAX, hi = INT_MIN;
  for (auto& [s, x] : terms) {
    if (s == 0 || x->c.empty()) continue;
    lo = std::min(lo, x->off);
    hi = std::max(hi, x->deg());
  }
  LPoly r;
  if (lo > hi) return r;
  CPoly acc(hi - lo + 1, 0);
  for (auto& [s, x] : terms) {
    if (s == 0 || x->c.empty()) continue;
    for (std::size_t i = 0; i < x->c.size(); ++i) {
      Code& a = acc[x->off - lo + i];
      a = F.add(a, F.mul(s, x->c[i]));
    }
  }
  r = to_lpoly(acc);
  if (!r.c.empty()) {
    trim(r.c);
    r.off += lo + sh;
  }
  return r;
}

struct GroupTables {
  std::vector<std::array<Code, 4>> mats;        // GL_2(F_q), row major
  std::vector<std::array<Code, 16>> lin;        // coefficient maps, S[j*4+i]
};

const GroupTables& group_tables(const FqField& F) {
  static std::mutex mu;
  static std::map<const FqField*, GroupTables> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(&F);
  if (it != cache.end()) return it->second;
  GroupTables T;
  const Code q = F.q();
  for (Code a = 0; a < q; ++a)
    for (Code b = 0; b < q; ++b)
      for (Code c = 0; c < q; ++c)
        for (Code d = 0; d < q; ++d) {
          if (F.sub(F.mul(a, d), F.mul(b, c)) == 0) continue;
          T.mats.push_back({a, b, c, d});
          auto g = Mat<FqElem>::from_rows({{F.elem(a), F.elem(b)}, {F.elem(c), F.elem(d)}});
          std::array<Code, 16> S{};
          for (int i = 0; i < 4; ++i) {
            std::array<FqElem, 4> e = {F.zero(), F.zero(), F.zero(), F.zero()};
            e[i] = F.one();
            auto h = act(g, FormV3<FqElem>{e[0], e[1], e[2], e[3]});
            auto hc = h.coeffs();
            for (int j = 0; j < 4; ++j) S[j * 4 + i] = hc[j].v;
          }
          T.lin.push_back(S);
        }
  return cache.emplace(&F, std::move(T)).first->second;
}

int poly_cmp(const PolyFq& x, const PolyFq& y) {
  if (x.degree() != y.degree()) return x.degree() < y.degree() ? -1 : 1;
  for (int i = x.degree(); i >= 0; --i)
    if (x[i].v != y[i].v) return x[i].v < y[i].v ? -1 : 1;
  return 0;
}

int form_cmp(const FormFqt& f, const FormFqt& g) {
  const auto a = f.coeffs(), b = g.coeffs();
  for (int j = 0; j < 4; ++j)
    if (int c = poly_cmp(a[j], b[j])) return c;
  return 0;
}

FormFqt apply_lin(const FqField& F, const std::array<Code, 16>& S, const FormFqt& f) {
  const auto c = f.coeffs();
  std::array<PolyFq, 4> r = {PolyFq(F.zero()), PolyFq(F.zero()), PolyFq(F.zero()), PolyFq(F.zero())};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i)
      if (S[j * 4 + i]) r[j] = r[j] + c[i].scale(F.elem(S[j * 4 + i]));
  return {r[0], r[1], r[2], r[3]};
}

// Vertices of the tree of PGL_2(K_inf) are lattice classes; the vertex
// reached by g carries the form g.f, and M = g^{-1} is polynomial.
struct Node {
  std::array<LPoly, 4> F;
  std::array<CPoly, 4> M;  // row major
  int e = 0;
  int back = -1;  // edge label leading back, q for the edge at infinity
  int h = 0;
};

int node_height(const Node& n) {
  int H = kNoDeg;
  for (auto& x : n.F) H = std::max(H, x.deg());
  return 2 * H + n.e;
}

const Code kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

Node child_finite(const FqField& F, const Node& n, Code c) {
  Node r;
  Code cp[4] = {1, c, F.mul(c, c), F.mul(F.mul(c, c), c)};
  for (int j = 0; j < 4; ++j) {
    std::vector<std::pair<Code, const LPoly*>> terms;
    for (int i = j; i < 4; ++i) terms.push_back({F.mul(F.from_int(kBinom[i][j]).v, cp[i - j]), &n.F[i]});
    r.F[j] = lcombine(F, terms, 1 - j);
  }
  // M N_c^{-1}, N_c^{-1} = [[1, -c t], [0, t]]
  for (int row = 0; row < 2; ++row) {
    const CPoly& m0 = n.M[row * 2];
    const CPoly& m1 = n.M[row * 2 + 1];
    CPoly n1(std::max(m0.size(), m1.size()) + 1, 0);
    for (std::size_t i = 0; i < m1.size(); ++i) n1[i + 1] = m1[i];
    for (std::size_t i = 0; i < m0.size(); ++i) n1[i + 1] = F.sub(n1[i + 1], F.mul(c, m0[i]));
    trim(n1);
    r.M[row * 2] = m0;
    r.M[row * 2 + 1] = std::move(n1);
  }
  r.e = n.e + 1;
  r.back = static_cast<int>(F.q());
  r.h = node_height(r);
  return r;
}

Node child_infinite(const FqField& F, const Node& n) {
  Node r;
  for (int i = 0; i < 4; ++i) {
    r.F[i] = n.F[i];
    if (!r.F[i].c.empty()) r.F[i].off += i - 2;
  }
  for (int row = 0; row < 2; ++row) {
    CPoly m0 = n.M[row * 2];
    if (!m0.empty()) m0.insert(m0.begin(), 0);
    r.M[row * 2] = std::move(m0);
    r.M[row * 2 + 1] = n.M[row * 2 + 1];
  }
  (void)F;
  r.e = n.e + 1;
  r.back = 0;
  r.h = node_height(r);
  return r;
}

// Row reduction of M. Returns the vertex type (difference of reduced row
// degrees); for type 0 also gamma with gamma M = t^d * (unit at infinity).
int vertex_type(const FqField& F, const Node& n, std::array<CPoly, 4>& gamma) {
  std::array<CPoly, 4> M = n.M;
  gamma = {CPoly{1}, CPoly{}, CPoly{}, CPoly{1}};
  auto rdeg = [&](int r) { return std::max(cdeg(M[r * 2]), cdeg(M[r * 2 + 1])); };
  auto lead = [&](int r, int col, int d) -> Code {
    const CPoly& p = M[r * 2 + col];
    return d < (int)p.size() ? p[d] : 0;
  };
  for (;;) {
    const int d0 = rdeg(0), d1 = rdeg(1);
    const Code l00 = lead(0, 0, d0), l01 = lead(0, 1, d0), l10 = lead(1, 0, d1), l11 = lead(1, 1, d1);
    if (F.sub(F.mul(l00, l11), F.mul(l01, l10)) != 0) return std::abs(d0 - d1);
    const int hi = d0 >= d1 ? 0 : 1, lo = 1 - hi;
    const int dh = hi == 0 ? d0 : d1, dl = hi == 0 ? d1 : d0;
    const Code lh[2] = {hi == 0 ? l00 : l10, hi == 0 ? l01 : l11};
    const Code ll[2] = {lo == 0 ? l00 : l10, lo == 0 ? l01 : l11};
    const int k = ll[0] != 0 ? 0 : 1;
    const Code alpha = F.mul(lh[k], F.inv(ll[k]));
    for (int col = 0; col < 2; ++col) {
      sub_shifted(F, M[hi * 2 + col], M[lo * 2 + col], alpha, dh - dl);
      sub_shifted(F, gamma[hi * 2 + col], gamma[lo * 2 + col], alpha, dh - dl);
    }
  }
}

Node root_node(const FormFqt& f) {
  Node n;
  const auto c = f.coeffs();
  for (int i = 0; i < 4; ++i) n.F[i] = to_lpoly(to_cpoly(c[i]));
  n.M = {CPoly{1}, CPoly{}, CPoly{}, CPoly{1}};
  n.h = node_height(n);
  return n;
}

struct SearchResult {
  int best = 0;                             // minimal height over type-0 vertices
  std::vector<std::array<CPoly, 4>> gammas;  // one per minimizing vertex
  bool overflow = false;
  bool rejected = false;  // stop_below hit
  std::uint64_t vertices = 0;
};

// Best-first over the sublevel set of the height. With stop_below, returns
// early as soon as a type-0 vertex of height below the root is found.
SearchResult tree_search(const FormFqt& f, std::uint64_t cap, bool stop_below) {
  const FqField& F = *f.a.zero().f;
  SearchResult out;
  std::vector<Node> nodes;
  nodes.push_back(root_node(f));
  using Key = std::pair<int, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
  heap.push({nodes[0].h, 0});
  int T = nodes[0].h;
  while (!heap.empty()) {
    auto [h, id] = heap.top();
    heap.pop();
    if (h > T) break;
    std::array<CPoly, 4> gamma;
    if (vertex_type(F, nodes[id], gamma) == 0) {
      if (h < T) {
        if (stop_below) {
          out.rejected = true;
          out.vertices = nodes.size();
          return out;
        }
        T = h;
        out.gammas.clear();
      }
      out.gammas.push_back(std::move(gamma));
    }
    const Node cur = nodes[id];
    auto push = [&](Node&& child) {
      if (child.h > T) return;
      nodes.push_back(std::move(child));
      heap.push({nodes.back().h, nodes.size() - 1});
    };
    for (Code c = 0; c < F.q(); ++c)
      if (cur.back != static_cast<int>(c)) push(child_finite(F, cur, c));
    if (cur.back != static_cast<int>(F.q())) push(child_infinite(F, cur));
    if (nodes.size() > cap) {
      out.overflow = true;
      break;
    }
  }
  out.best = T;
  out.vertices = nodes.size();
  return out;
}

Mat<PolyFq> to_mat(const FqField& F, const std::array<CPoly, 4>& g) {
  return Mat<PolyFq>::from_rows({{to_poly(F, g[0]), to_poly(F, g[1])}, {to_poly(F, g[2]), to_poly(F, g[3])}});
}

// S.X compared with Y on digit arrays (coefficient j, degree k at j*W+k).
int cmp_image(const FqField& F, const std::array<Code, 16>& S, const Code* X, const Code* Y, int W) {
  for (int j = 0; j < 4; ++j) {
    bool deg_found = false;
    for (int k = W - 1; k >= 0; --k) {
      Code x = 0;
      for (int i = 0; i < 4; ++i)
        if (S[j * 4 + i]) x = F.add(x, F.mul(S[j * 4 + i], X[i * W + k]));
      const Code y = Y[j * W + k];
      if (!deg_found) {
        if (x == 0 && y == 0) continue;
        if (y == 0) return 1;
        if (x == 0) return -1;
        deg_found = true;
      }
      if (x != y) return x < y ? -1 : 1;
    }
  }
  return 0;
}

std::vector<Code> digits_of(const FormFqt& f, int W) {
  std::vector<Code> d(4 * W, 0);
  const auto c = f.coeffs();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k <= c[j].degree(); ++k) d[j * W + k] = c[j][k].v;
  return d;
}

int form_height(const FormFqt& f) {
  int h = -1;
  for (auto& c : f.coeffs()) h = std::max(h, c.degree());
  return h;
}

// f is least in its GL_2(F_q)-orbit and among the images of the other
// minimizing vertices; skip_local drops the first part.
CanonicalCheck canonical_check(const FormFqt& f, std::uint64_t vertex_cap, bool skip_local) {
  const FqField& F = *f.a.zero().f;
  CanonicalCheck out;
  const auto& T = group_tables(F);
  const int W0 = form_height(f) + 1;
  const auto fd = digits_of(f, W0);
  if (!skip_local)
    for (auto& S : T.lin)
      if (cmp_image(F, S, fd.data(), fd.data(), W0) < 0) return out;
  auto sr = tree_search(f, vertex_cap, true);
  out.vertices = sr.vertices;
  if (sr.overflow) {
    out.overflow = true;
    return out;
  }
  if (sr.rejected) return out;
  for (auto& g : sr.gammas) {
    const FormFqt P = act(to_mat(F, g), f);
    if (P == f) continue;
    const int W = std::max(W0, form_height(P) + 1);
    const auto pd = digits_of(P, W), fw = digits_of(f, W);
    for (auto& S : T.lin)
      if (cmp_image(F, S, pd.data(), fw.data(), W) < 0) return out;
  }
  out.canonical = true;
  return out;
}

void check_nondegenerate(const FormFqt& f) {
  if (disc(f).is_zero()) throw std::invalid_argument("form has zero discriminant");
}

}  // namespace

bool form_less(const FormFqt& f, const FormFqt& g) { return form_cmp(f, g) < 0; }

std::uint64_t box_size(const CensusConfig& cfg) {
  if (cfg.q % 2 == 0) throw std::invalid_argument("q must be odd");
  if (cfg.B < 0) throw std::invalid_argument("B must be nonnegative");
  long double n = 1;
  for (int i = 0; i < 4 * (cfg.B + 1); ++i) n *= cfg.q;
  if (n > static_cast<long double>(cfg.budget)) {
    std::ostringstream s;
    s << "box has " << static_cast<double>(n) << " forms, over the budget of " << cfg.budget;
    throw std::length_error(s.str());
  }
  return static_cast<std::uint64_t>(n);
}

std::uint64_t enumerate_forms(const CensusConfig& cfg, const std::function<void(const FormFqt&)>& fn) {
  const std::uint64_t N = box_size(cfg);
  const FqField& F = FqField::of_order(cfg.q);
  const int W = cfg.B + 1;
  std::vector<Code> dig(4 * W, 0);
  for (std::uint64_t idx = 0; idx < N; ++idx) {
    std::array<PolyFq, 4> c = {PolyFq(F.zero()), PolyFq(F.zero()), PolyFq(F.zero()), PolyFq(F.zero())};
    for (int j = 0; j < 4; ++j) {
      std::vector<FqElem> v;
      for (int k = 0; k < W; ++k) v.push_back(F.elem(dig[j * W + k]));
      c[j] = PolyFq(F.zero(), std::move(v));
    }
    FormFqt f{c[0], c[1], c[2], c[3]};
    if (!disc(f).is_zero()) fn(f);
    for (int p = 4 * W - 1; p >= 0; --p) {
      if (++dig[p] < cfg.q) break;
      dig[p] = 0;
    }
  }
  return N;
}

FormFqt canonical_orbit_rep(const FormFqt& f, std::uint64_t vertex_cap) {
  check_nondegenerate(f);
  const FqField& F = *f.a.zero().f;
  auto sr = tree_search(f, vertex_cap, false);
  if (sr.overflow) throw std::runtime_error("orbit search exceeded the vertex cap");
  const auto& T = group_tables(F);
  std::optional<FormFqt> best;
  for (auto& g : sr.gammas) {
    const FormFqt P = act(to_mat(F, g), f);
    for (auto& S : T.lin) {
      FormFqt c = apply_lin(F, S, P);
      if (!best || form_cmp(c, *best) < 0) best = std::move(c);
    }
  }
  return *best;
}

CanonicalCheck is_canonical(const FormFqt& f, std::uint64_t vertex_cap) {
  check_nondegenerate(f);
  return canonical_check(f, vertex_cap, false);
}

int reduced_height(const FormFqt& f, std::uint64_t vertex_cap) {
  check_nondegenerate(f);
  auto sr = tree_search(f, vertex_cap, false);
  if (sr.overflow) throw std::runtime_error("orbit search exceeded the vertex cap");
  return sr.best / 2;
}

namespace {

std::vector<PolyFq> divisors(const PolyFq& x) {
  std::vector<PolyFq> out = {PolyFq::constant(x.one())};
  for (auto& [p, m] : factor(x).factors) {
    const std::size_t n = out.size();
    PolyFq pk = p;
    for (int k = 1; k <= m; ++k, pk = pk * p)
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
  }
  return out;
}

}  // namespace

bool is_generic(const FormFqt& f) {
  const PolyFq D = disc(f);
  if (D.is_zero()) return false;
  if (f.a.is_zero() || f.d.is_zero()) return false;  // y or x divides f
  // A root r/s in lowest terms has s | a and r | d.
  const FqField& F = *f.a.zero().f;
  const auto ds = divisors(f.a), dr = divisors(f.d);
  for (auto& s : ds) {
    const PolyFq s2 = s * s, s3 = s2 * s;
    for (auto& r0 : dr)
      for (Code u = 1; u < F.q(); ++u) {
        const PolyFq r = r0.scale(F.elem(u));
        const PolyFq r2 = r * r;
        if ((f.a * r2 * r + f.b * r2 * s + f.c * r * s2 + f.d * s3).is_zero()) return false;
      }
  }
  return !is_square(D);
}

CensusRecord make_record(const FormFqt& f) {
  CensusRecord r{f, disc(f), 0, false, false};
  if (r.disc.is_zero()) throw std::invalid_argument("form has zero discriminant");
  r.m = r.disc.degree();
  r.maximal = is_maximal(f);
  r.generic = is_generic(f);
  return r;
}

Rational CensusResult::ratio(int m) const {
  auto it = bins.find(m);
  Integer qm = 1;
  for (int i = 0; i < m; ++i) qm *= cfg.q;
  const std::uint64_t n = it == bins.end() ? 0 : it->second.generic_maximal;
  Rational r(Integer(static_cast<unsigned long>(n)), qm);
  r.canonicalize();
  return r;
}

bool TailReport::decreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].total < rows[i - 1].total)) return false;
  return !rows.empty();
}

namespace {

void tail_accumulate(const CensusRecord& rec, const std::vector<long>& Ms, TailReport& t) {
  const FqField& F = *rec.form.a.zero().f;
  for (auto& [pi, mult] : factor(rec.disc).factors) {
    if (mult < 2) continue;
    ++t.flagged;
    double N = 1;
    for (int i = 0; i < pi.degree(); ++i) N *= F.q();
    // lift search at norm 3 only; the gradient test is exact mod pi^2
    const DivClass c = disc_divisibility_class(rec.form, pi, N <= 3);
    if (c == DivClass::None || c != divisibility_by_type(rec.form, pi)) ++t.mismatches;
    for (std::size_t i = 0; i < Ms.size(); ++i) {
      if (!(N > static_cast<double>(Ms[i]))) continue;
      ++t.rows[i].total;
      if (c == DivClass::Strong) ++t.rows[i].strong;
      else if (c == DivClass::Weak) ++t.rows[i].weak;
    }
  }
}

struct ShardOut {
  std::uint64_t visited = 0, survivors = 0, overflow = 0;
  std::map<int, CensusBin> bins;
  std::vector<CensusRecord> records;
  TailReport tail;
};

void run_shard(const CensusConfig& cfg, const std::vector<long>& Ms, std::uint64_t begin, std::uint64_t end,
               bool keep, ShardOut& out) {
  const FqField& F = FqField::of_order(cfg.q);
  const auto& T = group_tables(F);
  const int W = cfg.B + 1, L = 4 * W;
  std::vector<Code> dig(L, 0);
  std::uint64_t x = begin;
  for (int p = L - 1; p >= 0; --p) {
    dig[p] = static_cast<Code>(x % cfg.q);
    x /= cfg.q;
  }
  out.tail.rows.clear();
  for (long M : Ms) out.tail.rows.push_back({M, 0, 0, 0});
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    // Scalars act by f -> lambda f: keep the first nonzero coefficient monic.
    bool ok = false;
    for (int j = 0; j < 4 && !ok; ++j) {
      int k = W - 1;
      while (k >= 0 && dig[j * W + k] == 0) --k;
      if (k >= 0) {
        ok = dig[j * W + k] == 1;
        break;
      }
    }
    if (ok) {
      ++out.visited;
      bool minimal = true;
      for (auto& S : T.lin)
        if (cmp_image(F, S, dig.data(), dig.data(), W) < 0) {
          minimal = false;
          break;
        }
      if (minimal) {
        ++out.survivors;
        std::array<PolyFq, 4> c = {PolyFq(F.zero()), PolyFq(F.zero()), PolyFq(F.zero()), PolyFq(F.zero())};
        for (int j = 0; j < 4; ++j) {
          std::vector<FqElem> v;
          for (int k = 0; k < W; ++k) v.push_back(F.elem(dig[j * W + k]));
          c[j] = PolyFq(F.zero(), std::move(v));
        }
        const FormFqt f{c[0], c[1], c[2], c[3]};
        if (!disc(f).is_zero()) {
          const auto chk = canonical_check(f, cfg.vertex_cap, true);
          if (chk.overflow) ++out.overflow;
          if (chk.canonical) {
            CensusRecord rec = make_record(f);
            CensusBin& b = out.bins[rec.m];
            ++b.raw;
            if (!rec.generic) ++b.nongeneric;
            if (!rec.maximal) ++b.nonmaximal;
            if (rec.generic && rec.maximal) ++b.generic_maximal;
            if (!Ms.empty()) tail_accumulate(rec, Ms, out.tail);
            if (keep) out.records.push_back(std::move(rec));
          }
        }
      }
    }
    for (int p = L - 1; p >= 0; --p) {
      if (++dig[p] < cfg.q) break;
      dig[p] = 0;
    }
  }
}

CensusResult run_census(const CensusConfig& cfg, bool keep, const std::vector<long>& Ms, TailReport* tail) {
  CensusResult res;
  res.cfg = cfg;
  res.stream_length = box_size(cfg);
  const int threads = std::max(1, cfg.threads);
  const std::uint64_t shards = std::min<std::uint64_t>(res.stream_length, cfg.shards > 0 ? cfg.shards : 16 * threads);
  std::vector<ShardOut> outs(shards);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t s = next++;
      if (s >= shards) return;
      const std::uint64_t b = res.stream_length / shards * s + std::min(s, res.stream_length % shards);
      const std::uint64_t e = b + res.stream_length / shards + (s < res.stream_length % shards ? 1 : 0);
      try {
        run_shard(cfg, Ms, b, e, keep, outs[s]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  for (int m = 0; m <= 4 * cfg.B; ++m) res.bins[m];
  if (tail) {
    tail->rows.clear();
    for (long M : Ms) tail->rows.push_back({M, 0, 0, 0});
  }
  for (auto& o : outs) {
    res.visited += o.visited;
    res.survivors += o.survivors;
    res.overflow += o.overflow;
    for (auto& [m, b] : o.bins) {
      CensusBin& r = res.bins[m];
      r.raw += b.raw;
      r.generic_maximal += b.generic_maximal;
      r.nongeneric += b.nongeneric;
      r.nonmaximal += b.nonmaximal;
    }
    if (keep)
      for (auto& rec : o.records) res.records.push_back(std::move(rec));
    if (tail) {
      tail->flagged += o.tail.flagged;
      tail->mismatches += o.tail.mismatches;
      for (std::size_t i = 0; i < Ms.size(); ++i) {
        tail->rows[i].total += o.tail.rows[i].total;
        tail->rows[i].weak += o.tail.rows[i].weak;
        tail->rows[i].strong += o.tail.rows[i].strong;
      }
    }
  }
  const auto pd = predicted_density(3, FieldDescriptor::function_field(cfg.q), {"inf"}, {}, cfg.density_D);
  res.predicted = pd.exact_closed_form ? RationalInterval(*pd.exact_closed_form) : pd.value;
  return res;
}

}  // namespace

CensusResult census(const CensusConfig& cfg, bool keep_records) { return run_census(cfg, keep_records, {}, nullptr); }

TailReport tail_measurement(const CensusConfig& cfg, const std::vector<long>& Ms) {
  TailReport t;
  run_census(cfg, false, Ms, &t);
  return t;
}

std::string census_csv(const CensusResult& r, int max_m) {
  if (max_m < 0) max_m = r.report_max_m();
  std::ostringstream s;
  s << "m;raw_count;generic_maximal_count;ratio;predicted_lo;predicted_hi\n";
  for (auto& [m, b] : r.bins) {
    if (m > max_m) break;
    s << m << ';' << b.raw << ';' << b.generic_maximal << ';' << RationalInterval::to_decimal(r.ratio(m), 6) << ';'
      << RationalInterval::to_decimal(r.predicted.lo(), 6) << ';' << RationalInterval::to_decimal(r.predicted.hi(), 6)
      << '\n';
  }
  return s.str();
}

std::vector<int> saturated_bins(const CensusResult& small, const CensusResult& large, int max_m) {
  std::vector<int> out;
  for (int m = 0; m <= max_m; ++m) {
    auto a = small.bins.find(m), b = large.bins.find(m);
    const bool sa = a != small.bins.end(), sb = b != large.bins.end();
    if (!sa || !sb) continue;
    if (a->second.raw == b->second.raw && a->second.generic_maximal == b->second.generic_maximal) out.push_back(m);
  }
  return out;
}

}  // namespace ffdens
