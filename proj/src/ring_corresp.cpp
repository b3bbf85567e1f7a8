#include "ffdens/ring_corresp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ffdens {

namespace {

using Ctx = std::shared_ptr<const ResidueCtx>;

Residue res(const Ctx& c, const PolyFq& p) { return Residue(c, p); }

FormV3<Residue> form_mod(const Ctx& c, const FormFqt& f) {
  return {res(c, f.a), res(c, f.b), res(c, f.c), res(c, f.d)};
}

bool is_zero_mod(const PolyFq& x, const PolyFq& pi) { return (x % pi).is_zero(); }

// Row reduction over the residue field: returns the rank of the vectors.
int rank_k(std::vector<Elem3<Residue>> rows) {
  int rank = 0;
  for (int col = 0; col < 3 && rank < (int)rows.size(); ++col) {
    int piv = -1;
    for (int r = rank; r < (int)rows.size(); ++r)
      if (!ring_is_zero(rows[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const Residue inv = *ring_unit_inverse(rows[rank][col]);
    for (int r = 0; r < (int)rows.size(); ++r) {
      if (r == rank || ring_is_zero(rows[r][col])) continue;
      const Residue m = rows[r][col] * inv;
      for (int k = 0; k < 3; ++k) rows[r][k] = rows[r][k] - m * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool in_span(const std::vector<Elem3<Residue>>& basis, const Elem3<Residue>& x) {
  bool zero = true;
  for (auto& c : x) zero = zero && ring_is_zero(c);
  if (zero) return true;
  auto with = basis;
  with.push_back(x);
  return rank_k(with) == rank_k(basis);
}

struct SubspaceTester {
  FormFqt f;
  PolyFq pi;
  Ctx k1, k2;
  CubicRing<Residue> R2;

  SubspaceTester(const FormFqt& ff, const PolyFq& p)
      : f(ff), pi(p.monic()), k1(residue_ctx(pi, 1)), k2(residue_ctx(pi, 2)), R2(cubic_ring(form_mod(k2, ff))) {}

  Elem3<Residue> reduce1(const Elem3<Residue>& x) const {
    return {res(k1, x[0].value()), res(k1, x[1].value()), res(k1, x[2].value())};
  }
  Elem3<Residue> lift2(const Elem3<PolyFq>& x) const { return {res(k2, x[0]), res(k2, x[1]), res(k2, x[2])}; }

  // Is R + (1/pi) span(w) closed under multiplication?
  bool closed(const std::vector<Elem3<PolyFq>>& w) const {
    std::vector<Elem3<Residue>> W1;
    for (auto& x : w) W1.push_back({res(k1, x[0]), res(k1, x[1]), res(k1, x[2])});
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto wi = lift2(w[i]);
      for (int e = 1; e <= 2; ++e)
        if (!in_span(W1, reduce1(R2.mul(R2.basis(e), wi)))) return false;
      for (std::size_t j = i; j < w.size(); ++j) {
        const auto p = R2.mul(wi, lift2(w[j]));
        Elem3<Residue> quot = {res(k1, p[0].value()), res(k1, p[1].value()), res(k1, p[2].value())};
        for (int c = 0; c < 3; ++c) {
          if (!is_zero_mod(p[c].value(), pi)) return false;
          quot[c] = res(k1, p[c].value() / pi);
        }
        if (!in_span(W1, quot)) return false;
      }
    }
    return true;
  }
};

std::vector<PolyFq> residue_reps(const PolyFq& pi) {
  const FqField& F = *pi.zero().f;
  std::uint64_t N = 1;
  for (int i = 0; i < pi.degree(); ++i) N *= F.q();
  std::vector<PolyFq> out;
  for (std::uint64_t i = 0; i < N; ++i) {
    std::vector<FqElem> c;
    std::uint64_t x = i;
    for (int j = 0; j < pi.degree(); ++j) {
      c.push_back(F.elem(static_cast<std::uint32_t>(x % F.q())));
      x /= F.q();
    }
    out.push_back(PolyFq(F.zero(), c));
  }
  return out;
}

// (deg, mult) multiset of f mod pi as a binary form; empty when f = 0 mod pi.
std::vector<std::pair<int, int>> shape_over(const Poly<Residue>& g) {
  std::vector<std::pair<int, int>> parts;
  if (g.is_zero()) return parts;
  for (auto& [h, m] : factor(g).factors) parts.push_back({h.degree(), m});
  if (g.degree() < 3) parts.push_back({1, 3 - g.degree()});
  return parts;
}

std::string shape_name(std::vector<std::pair<int, int>> parts) {
  if (parts.empty()) return "(0)";
  std::sort(parts.begin(), parts.end(), [](auto& x, auto& y) { return x.second != y.second ? x.second > y.second : x.first < y.first; });
  std::string s = "(";
  for (auto& [d, m] : parts) s += std::to_string(d) + (m > 1 ? "^" + std::to_string(m) : "");
  return s + ")";
}

Poly<Residue> dehomogenize(const FormV3<Residue>& g) { return Poly<Residue>(ring_int(g.a, 0), {g.d, g.c, g.b, g.a}); }

}  // namespace

PolyFq disc_poly(const FormFqt& f) { return disc(f); }

MaximalityVerdict is_maximal_at(const FormFqt& f, const PolyFq& pi0) {
  if (disc(f).is_zero()) throw std::invalid_argument("degenerate form");
  const PolyFq pi = pi0.monic();
  MaximalityVerdict v;
  if (poly_valuation(disc(f), pi) < 2) return v;
  SubspaceTester T(f, pi);
  const auto reps = residue_reps(pi);
  const PolyFq z(pi.zero().f->zero());
  const PolyFq one = PolyFq::constant(pi.zero().f->one());
  auto canonical_vectors = [&]() {
    std::vector<Elem3<PolyFq>> out;
    for (int lead = 0; lead < 3; ++lead)
      for (auto& x : reps)
        for (auto& y : reps) {
          if (lead == 0)
            out.push_back({one, x, y});
          else if (lead == 1 && x.is_zero())
            out.push_back({z, one, y});
          else if (lead == 2 && x.is_zero() && y.is_zero())
            out.push_back({z, z, one});
        }
    return out;
  };
  const auto vecs = canonical_vectors();
  // Lines.
  for (auto& w : vecs)
    if (T.closed({w})) {
      v.maximal = false;
      v.witness = {w};
      return v;
    }
  // Planes: kernels of the functionals n . x = 0.
  for (auto& n : vecs) {
    std::vector<Elem3<PolyFq>> basis;
    // Basis of {x : n0 x0 + n1 x1 + n2 x2 = 0} over k.
    int piv = n[0].is_zero() ? (n[1].is_zero() ? 2 : 1) : 0;
    for (int j = 0; j < 3; ++j) {
      if (j == piv) continue;
      Elem3<PolyFq> b = {z, z, z};
      b[j] = one;
      b[piv] = (-n[j]) % pi;  // n[piv] = 1
      basis.push_back(b);
    }
    if (T.closed(basis)) {
      v.maximal = false;
      v.witness = basis;
      return v;
    }
  }
  std::vector<Elem3<PolyFq>> full = {{one, z, z}, {z, one, z}, {z, z, one}};
  if (T.closed(full)) {
    v.maximal = false;
    v.witness = full;
  }
  return v;
}

bool witness_is_ring(const FormFqt& f, const PolyFq& pi, const std::vector<Elem3<PolyFq>>& w) {
  return SubspaceTester(f, pi).closed(w);
}

bool is_maximal_at_fast(const FormFqt& f, const PolyFq& pi0) {
  const PolyFq pi = pi0.monic();
  if (is_zero_mod(f.a, pi) && is_zero_mod(f.b, pi) && is_zero_mod(f.c, pi) && is_zero_mod(f.d, pi)) return false;
  auto k1 = residue_ctx(pi, 1), k2 = residue_ctx(pi, 2);
  const auto g = dehomogenize(form_mod(k1, f));
  // Double root at (1:0).
  if (g.degree() <= 1 && is_zero_mod(f.a, poly_pow(pi, 2))) return false;
  for (auto& [h, m] : factor(g).factors) {
    if (h.degree() != 1 || m < 2) continue;
    const Residue x(k2, (ring_int(h[0], 0) - h[0]).value());
    const Residue val = ((res(k2, f.a) * x + res(k2, f.b)) * x + res(k2, f.c)) * x + res(k2, f.d);
    if (ring_is_zero(val)) return false;
  }
  return true;
}

bool is_maximal(const FormFqt& f) {
  const PolyFq D = disc(f);
  if (D.is_zero()) throw std::invalid_argument("degenerate form");
  for (auto& [pi, m] : factor(D).factors)
    if (m >= 2 && !is_maximal_at_fast(f, pi)) return false;
  return true;
}

std::string splitting_type_cubic(const FormFqt& f, const PolyFq& pi) {
  auto k1 = residue_ctx(pi, 1);
  return shape_name(shape_over(dehomogenize(form_mod(k1, f))));
}

std::string splitting_type_cubic_fq(const FormFq& f) {
  const FqField& F = *f.a.f;
  PolyFq t = PolyFq::var(F.zero());
  FormFqt lifted{PolyFq::constant(f.a), PolyFq::constant(f.b), PolyFq::constant(f.c), PolyFq::constant(f.d)};
  return splitting_type_cubic(lifted, t);
}

std::string to_string(DivClass c) {
  switch (c) {
    case DivClass::None:
      return "None";
    case DivClass::Weak:
      return "Weak";
    case DivClass::Strong:
      return "Strong";
  }
  return "?";
}

DivClass disc_divisibility_class(const FormFqt& f, const PolyFq& pi0, bool allow_exhaustive) {
  const PolyFq pi = pi0.monic();
  const PolyFq D = disc(f);
  if (D.is_zero()) throw std::invalid_argument("degenerate form");
  if (poly_valuation(D, pi) < 2) return DivClass::None;
  auto k2 = residue_ctx(pi, 2);
  const auto reps = residue_reps(pi);
  const double N = static_cast<double>(reps.size());
  if (allow_exhaustive && N * N * N * N <= 1e6) {
    const FormV3<Residue> g = form_mod(k2, f);
    const Residue P = res(k2, pi);
    for (auto& h0 : reps)
      for (auto& h1 : reps)
        for (auto& h2 : reps)
          for (auto& h3 : reps) {
            FormV3<Residue> l{g.a + P * res(k2, h0), g.b + P * res(k2, h1), g.c + P * res(k2, h2), g.d + P * res(k2, h3)};
            if (!ring_is_zero(disc(l))) return DivClass::Weak;
          }
    return DivClass::Strong;
  }
  // Delta(f + pi h) = Delta(f) + pi grad(Delta)(f) . h mod pi^2.
  auto k1 = residue_ctx(pi, 1);
  const auto g = form_mod(k1, f);
  const Residue &a = g.a, &b = g.b, &c = g.c, &d = g.d;
  auto n = [&](long long v) { return ring_int(a, v); };
  const Residue da = n(-4) * c * c * c - n(54) * a * d * d + n(18) * b * c * d;
  const Residue db = n(2) * b * c * c - n(12) * b * b * d + n(18) * a * c * d;
  const Residue dc = n(2) * b * b * c - n(12) * a * c * c + n(18) * a * b * d;
  const Residue dd = n(-4) * b * b * b - n(54) * a * a * d + n(18) * a * b * c;
  const bool grad_zero = ring_is_zero(da) && ring_is_zero(db) && ring_is_zero(dc) && ring_is_zero(dd);
  return grad_zero ? DivClass::Strong : DivClass::Weak;
}

DivClass divisibility_by_type(const FormFqt& f, const PolyFq& pi) {
  if (poly_valuation(disc(f), pi.monic()) < 2) return DivClass::None;
  const std::string t = splitting_type_cubic(f, pi);
  if (t == "(1^21)") return DivClass::Weak;
  if (t == "(1^3)" || t == "(0)") return DivClass::Strong;
  throw std::logic_error("square divisor of disc with unramified type " + t);
}

Integer gl_order(std::uint64_t q, int n) {
  Integer r = 1, qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), q, n);
  Integer qi = 1;
  for (int i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= q;
  }
  return r;
}

Integer group_order(int n, std::uint64_t q) {
  if (n == 3) return gl_order(q, 2);
  if (n == 4) return gl_order(q, 2) * gl_order(q, 3) / Integer(static_cast<unsigned long>(q - 1));
  throw std::invalid_argument("unsupported degree: " + std::to_string(n));
}

namespace {

std::vector<Mat<FqElem>> all_gl(const FqField& F, int n) {
  std::vector<Mat<FqElem>> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= F.q();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Mat<FqElem> m(n, F.zero());
    std::uint64_t x = idx;
    for (int i = 0; i < n * n; ++i) {
      m.e[i] = F.elem(static_cast<std::uint32_t>(x % F.q()));
      x /= F.q();
    }
    if (!m.det().is_zero()) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

Integer stabilizer_order(const FormFq& f, std::uint64_t budget) {
  const FqField& F = *f.a.f;
  if (disc(f).is_zero()) throw std::invalid_argument("degenerate form");
  if (gl_order(F.q(), 2) > budget) throw std::runtime_error("stabilizer budget exceeded");
  Integer count = 0;
  for (auto& g : all_gl(F, 2))
    if (act(g, f) == f) ++count;
  return count;
}

Integer stabilizer_order(const FormV4Fq& v, std::uint64_t budget) {
  const FqField& F = *v.a[0].f;
  if (disc(v).is_zero()) throw std::invalid_argument("degenerate pair");
  if (gl_order(F.q(), 2) * gl_order(F.q(), 3) > budget) throw std::runtime_error("stabilizer budget exceeded");
  const auto G2 = all_gl(F, 2);
  Integer count = 0;
  for (auto& g3 : all_gl(F, 3)) {
    const auto A1 = quad_substitute(v.a, g3), B1 = quad_substitute(v.b, g3);
    for (auto& g2 : G2) {
      bool ok = true;
      for (int i = 0; i < 6 && ok; ++i)
        ok = g2(0, 0) * A1[i] + g2(0, 1) * B1[i] == v.a[i] && g2(1, 0) * A1[i] + g2(1, 1) * B1[i] == v.b[i];
      if (ok) ++count;
    }
  }
  return count / Integer(static_cast<unsigned long>(F.q() - 1));
}

namespace {

// Points of A = B = 0 in P^2 over F_q and over F_{q^2} = F_q(sqrt(ns)).
struct Fq2 {
  FqElem a, b;  // a + b s, s^2 = ns
};

}  // namespace

std::string splitting_type_quartic(const FormV4Fq& v) {
  if (disc(v).is_zero()) throw std::invalid_argument("degenerate pair");
  const FqField& F = *v.a[0].f;
  FqElem ns = F.zero();
  for (std::uint32_t c = 1; c < F.q(); ++c)
    if (!F.is_square(F.elem(c))) {
      ns = F.elem(c);
      break;
    }
  auto mul = [&](const Fq2& x, const Fq2& y) { return Fq2{x.a * y.a + ns * x.b * y.b, x.a * y.b + x.b * y.a}; };
  auto add = [](const Fq2& x, const Fq2& y) { return Fq2{x.a + y.a, x.b + y.b}; };
  auto eval = [&](const std::vector<FqElem>& q, const Fq2* x) {
    Fq2 s{F.zero(), F.zero()};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const FqElem c = q[sym_index(i, j)];
        if (c.is_zero()) continue;
        Fq2 t = mul(x[i], x[j]);
        s = add(s, Fq2{c * t.a, c * t.b});
      }
    return s;
  };
  std::vector<Fq2> all;
  for (std::uint32_t a = 0; a < F.q(); ++a)
    for (std::uint32_t b = 0; b < F.q(); ++b) all.push_back({F.elem(a), F.elem(b)});
  const Fq2 zero{F.zero(), F.zero()}, one{F.one(), F.zero()};
  long n1 = 0, n2 = 0;
  auto test = [&](const Fq2* x) {
    const Fq2 A = eval(v.a, x), B = eval(v.b, x);
    if (A.a.is_zero() && A.b.is_zero() && B.a.is_zero() && B.b.is_zero()) {
      ++n2;
      if (x[0].b.is_zero() && x[1].b.is_zero() && x[2].b.is_zero()) ++n1;
    }
  };
  for (auto& y : all)
    for (auto& z : all) {
      Fq2 x[3] = {one, y, z};
      test(x);
    }
  for (auto& z : all) {
    Fq2 x[3] = {zero, one, z};
    test(x);
  }
  Fq2 x[3] = {zero, zero, one};
  test(x);
  if (n1 == 4) return "(1111)";
  if (n1 == 2 && n2 == 4) return "(112)";
  if (n1 == 1 && n2 == 1) return "(13)";
  if (n1 == 0 && n2 == 4) return "(22)";
  if (n1 == 0 && n2 == 0) return "(4)";
  throw std::logic_error("unexpected point counts for a nondegenerate pencil");
}

std::vector<OrbitInfo> orbit_census_fq(int n, const FqField& F, std::uint64_t budget) {
  if (n != 3 && n != 4) throw std::invalid_argument("unsupported degree: " + std::to_string(n));
  const int dim = n == 3 ? 4 : 12;
  std::uint64_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= F.q();
    if (total > budget) throw std::runtime_error("orbit census budget exceeded");
  }
  const std::uint32_t q = F.q();
  auto decode = [&](std::uint64_t idx) {
    std::vector<FqElem> c(dim, F.zero());
    for (int i = 0; i < dim; ++i) {
      c[i] = F.elem(static_cast<std::uint32_t>(idx % q));
      idx /= q;
    }
    return c;
  };
  auto encode = [&](const std::vector<FqElem>& c) {
    std::uint64_t idx = 0;
    for (int i = dim; i-- > 0;) idx = idx * q + c[i].v;
    return idx;
  };
  auto to3 = [](const std::vector<FqElem>& c) { return FormFq{c[0], c[1], c[2], c[3]}; };
  auto to4 = [](const std::vector<FqElem>& c) {
    return FormV4Fq{std::vector<FqElem>(c.begin(), c.begin() + 6), std::vector<FqElem>(c.begin() + 6, c.end())};
  };
  auto from3 = [](const FormFq& f) { return std::vector<FqElem>{f.a, f.b, f.c, f.d}; };
  auto from4 = [](const FormV4Fq& v) {
    std::vector<FqElem> c = v.a;
    c.insert(c.end(), v.b.begin(), v.b.end());
    return c;
  };

  // Generators: elementary transvections and diagonal torus elements.
  const FqElem zeta = F.primitive();
  auto elementary = [&](int m, int i, int j) {
    Mat<FqElem> e = Mat<FqElem>::identity(m, F.zero());
    e(i, j) = F.one();
    return e;
  };
  auto diag = [&](int m, int i) {
    Mat<FqElem> e = Mat<FqElem>::identity(m, F.zero());
    e(i, i) = zeta;
    return e;
  };
  std::vector<Mat<FqElem>> gens2 = {elementary(2, 0, 1), elementary(2, 1, 0), diag(2, 0), diag(2, 1)};
  std::vector<GroupElemV4<FqElem>> gens4;
  const auto I2 = Mat<FqElem>::identity(2, F.zero());
  const auto I3 = Mat<FqElem>::identity(3, F.zero());
  for (auto& g : gens2) gens4.push_back({g, I3});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) gens4.push_back({I2, elementary(3, i, j)});
  for (int i = 0; i < 3; ++i) gens4.push_back({I2, diag(3, i)});

  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<bool> live(total, false);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const auto c = decode(idx);
    live[idx] = n == 3 ? !disc(to3(c)).is_zero() : !disc(to4(c)).is_zero();
    if (!live[idx]) continue;
    std::vector<std::uint64_t> images;
    if (n == 3)
      for (auto& g : gens2) images.push_back(encode(from3(act(g, to3(c)))));
    else
      for (auto& g : gens4) images.push_back(encode(from4(act(g, to4(c)))));
    for (auto im : images) {
      const std::uint32_t a = find(static_cast<std::uint32_t>(idx)), b = find(static_cast<std::uint32_t>(im));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::uint32_t, std::uint64_t> sizes;
  for (std::uint64_t idx = 0; idx < total; ++idx)
    if (live[idx]) ++sizes[find(static_cast<std::uint32_t>(idx))];
  std::vector<OrbitInfo> out;
  for (auto& [root, size] : sizes) {
    const auto c = decode(root);
    OrbitInfo o{c, size, 0, ""};
    if (n == 3) {
      o.stabilizer = stabilizer_order(to3(c));
      o.splitting_type = splitting_type_cubic_fq(to3(c));
    } else {
      o.stabilizer = stabilizer_order(to4(c));
      o.splitting_type = splitting_type_quartic(to4(c));
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace ffdens
