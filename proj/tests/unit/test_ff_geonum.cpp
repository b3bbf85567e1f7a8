#include <doctest.h>

#include <cmath>
#include <random>

#include "ffdens/geonum.hpp"
#include "ffdens/poly_text.hpp"

using namespace ffdens;

namespace {

Laurent lau(const FqField& F, int val, std::vector<int> c) {
  Laurent x{val, {}};
  for (int v : c) x.c.push_back(F.from_int(v));
  return x;
}

Place finite_place(const FqField& F, int a) {
  return Place::finite(PolyFq(F.zero(), {-F.from_int(a), F.one()}));
}

Rational qp(long q, long e) {
  Rational r = 1;
  for (long i = 0; i < std::abs(e); ++i) r *= q;
  return e >= 0 ? r : 1 / r;
}

// Laurent polynomial at a place as a global rational function.
RationalFn globalize(const Place& v, const Laurent& x) {
  const FqField& F = v.field();
  PolyFq num(F.zero()), den = PolyFq::constant(F.one());
  // Local parameter: t - a, or 1/t.
  const PolyFq par = v.is_infinite() ? PolyFq::constant(F.one()) : v.pi();
  const PolyFq t = PolyFq::var(F.zero());
  const int lo = std::min(0, x.val);
  for (std::size_t i = 0; i < x.c.size(); ++i) {
    const int k = x.val + static_cast<int>(i) - lo;  // exponent after clearing denominators
    if (v.is_infinite())
      num = num + PolyFq::constant(x.c[i]) * poly_pow(t, static_cast<long>(x.c.size()) + x.val - 1 - (x.val + (int)i));
    else
      num = num + PolyFq::constant(x.c[i]) * poly_pow(par, k);
  }
  if (v.is_infinite()) {
    // sum c_i u^(val+i) = sum c_i t^(top-(val+i)) / t^top with top = val + len - 1
    const int top = x.val + static_cast<int>(x.c.size()) - 1;
    if (top >= 0)
      den = poly_pow(t, top);
    else
      num = num * poly_pow(t, -top);
  } else {
    den = poly_pow(par, -lo);
  }
  return {num, den};
}

// Oracle: enumerate P / prod (t - a)^e with generous bounds and test by valuations.
Integer oracle_count(const std::vector<Place>& S, const std::vector<LocalBox>& box) {
  const FqField& F = S[0].field();
  PolyFq den = PolyFq::constant(F.one());
  int degbound = 0;
  bool has_inf = false;
  for (std::size_t s = 0; s < S.size(); ++s) {
    const int e = std::max(0, -std::min(box[s].shift.truncated(box[s].level).valuation(), box[s].level));
    if (S[s].is_infinite()) {
      has_inf = true;
      degbound += e;
    } else {
      den = den * poly_pow(S[s].pi(), e);
      degbound += e;
    }
  }
  (void)has_inf;
  std::uint64_t total = 1;
  for (int i = 0; i <= degbound; ++i) total *= F.q();
  Integer n = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<FqElem> c;
    std::uint64_t r = idx;
    for (int i = 0; i <= degbound; ++i) {
      c.push_back(F.elem(r % F.q()));
      r /= F.q();
    }
    const PolyFq P(F.zero(), c);
    bool ok = true;
    // Regular outside S: at infinity when infinity is not in S.
    if (!has_inf && !P.is_zero() && P.degree() > den.degree()) ok = false;
    for (std::size_t s = 0; s < S.size() && ok; ++s) {
      const RationalFn x0 = globalize(S[s], box[s].shift.truncated(box[s].level));
      // P/den - x0num/x0den
      const PolyFq num = P * x0.den - x0.num * den;
      if (num.is_zero()) continue;
      ok = valuation(RationalFn{num, den * x0.den}, S[s]) >= box[s].level;
    }
    n += ok;
  }
  return n;
}

}  // namespace

TEST_CASE("Laurent arithmetic and the local character") {
  auto& F = FqField::get(3, 1);
  auto x = lau(F, -1, {1, 2}), y = lau(F, 0, {1, 1});
  auto z = x * y;  // (u^-1 + 2)(1 + u) = u^-1 + 0 + 2u
  CHECK(z.val == -1);
  CHECK(z.coeff(-1) == F.one());
  CHECK(z.coeff(0).is_zero());
  CHECK(z.coeff(1) == F.from_int(2));
  CHECK((x - x).is_zero());
  const Place inf = Place::infinity(F), p0 = finite_place(F, 0);
  CHECK(psi_exponent(p0, lau(F, -1, {2})) == 2);
  CHECK(psi_exponent(inf, lau(F, 1, {1})) == 2);  // residue -1
  CHECK(psi_exponent(inf, lau(F, 2, {1})) == 0);
  // Residue theorem: a global function with poles in S has total residue 0.
  for (int a = 0; a < 3; ++a) {
    RRSpace V{{inf, finite_place(F, a)}, {2, 3}, 0};
    auto e = V.basis_expansions({4, 2});
    for (long i = 0; i < V.dimension(); ++i) {
      const FqElem r = e[1][i].c.empty() ? F.zero() : e[1][i].coeff(-1);
      const FqElem ri = e[0][i].c.empty() ? F.zero() : -e[0][i].coeff(1);
      CHECK((r + ri).is_zero());
    }
  }
}

TEST_CASE("Fourier transform of boxes") {
  auto& F = FqField::get(3, 1);
  const Place inf = Place::infinity(F);
  auto fb = fourier_box({inf}, {0});
  CHECK(fb.coefficient == 3);
  CHECK(fb.support == std::vector<int>{2});
  for (int m = -3; m <= 3; ++m) CHECK(fourier_box({inf}, {m}).support[0] == 2 - m);
  // Transforming twice returns the original box with coefficient 1.
  for (int m = -2; m <= 2; ++m) {
    auto a = fourier_box({inf, finite_place(F, 1)}, {m, m + 1});
    auto b = fourier_box({inf, finite_place(F, 1)}, a.support);
    CHECK(a.coefficient * b.coefficient == 1);
    CHECK(b.support == std::vector<int>{m, m + 1});
  }
}

TEST_CASE("transform law holds pointwise") {
  std::mt19937_64 r(3);
  for (int p : {3, 5}) {
    auto& F = FqField::get(p, 1);
    for (auto v : {Place::infinity(F), finite_place(F, 0), finite_place(F, p - 1)})
      for (int level = -2; level <= 2; ++level)
        for (int k = 0; k < 12; ++k) {
          Laurent y{static_cast<int>(r() % 7) - 3 - level - v.canonical_exponent() - 2, {}};
          const int len = 1 + static_cast<int>(r() % 3);
          for (int i = 0; i < len; ++i) y.c.push_back(F.elem(r() % F.q()));
          if (p == 5 && !y.is_zero() && std::max(level, -v.canonical_exponent() - y.valuation()) - level > 4) continue;
          CHECK(fourier_box_pointwise(v, level, y) == fourier_box_closed(v, level, y));
        }
  }
}

TEST_CASE("homogeneous counts") {
  auto& F = FqField::get(3, 1);
  const Place inf = Place::infinity(F);
  BoxUnion B{{inf}, 1, {ProductBox{{{LocalBox{Laurent{0, {}}, 0}}}}}};
  for (int m = 0; m <= 5; ++m) {
    auto c = exact_count_check(B, {{-m}});
    CHECK(c.count == Integer(static_cast<long>(std::pow(3, m + 1))));
    CHECK(c.poisson == c.count);
    CHECK(c.threshold_met);
    CHECK(c.volume == Rational(c.count));
  }
  BoxUnion empty{{inf}, 1, {}};
  CHECK(direct_count(empty) == 0);
  CHECK(poisson_count(empty) == 0);
  // Below the threshold the count can differ from the volume.
  auto low = exact_count_check(B, {{3}});
  CHECK_FALSE(low.threshold_met);
  CHECK(low.count == 1);
  CHECK(low.volume == Rational(1, 9));
  CHECK(low.poisson == low.count);
}

TEST_CASE("direct count matches the valuation oracle") {
  std::mt19937_64 r(21);
  for (int p : {3, 5}) {
    auto& F = FqField::get(p, 1);
    for (int k = 0; k < 25; ++k) {
      auto B = random_box_union(F, r, 1, 1);
      Scaling t = {std::vector<int>(B.S.size())};
      for (auto& x : t[0]) x = -static_cast<int>(r() % 3);
      auto tB = scale_box(B, t);
      CHECK(direct_count(tB) == oracle_count(tB.S, tB.members[0].axes[0]));
    }
  }
}

TEST_CASE("Poisson summation on random box unions") {
  std::mt19937_64 r(8);
  int nontrivial = 0;
  for (int k = 0; k < 50; ++k) {
    auto& F = FqField::get(k % 2 ? 5 : 3, 1);
    auto B = random_box_union(F, r, 1 + static_cast<int>(r() % 2), 1 + static_cast<int>(r() % 3));
    Scaling t(B.n, std::vector<int>(B.S.size()));
    for (auto& row : t)
      for (auto& x : row) x = static_cast<int>(r() % 4) - 2;
    auto tB = scale_box(B, t);
    const Integer c = direct_count(tB);
    CHECK(poisson_count(tB) == c);
    nontrivial += Rational(c) != box_volume(tB) / covolume(B.S) / (B.n == 2 ? covolume(B.S) : Rational(1));
  }
  CHECK(nontrivial > 0);
}

TEST_CASE("exact counts above the threshold") {
  std::mt19937_64 r(100);
  int trials = 0;
  for (int p : {3, 5})
    for (int k = 0; k < 50; ++k) {
      auto& F = FqField::get(p, 1);
      auto B = random_box_union(F, r, 1, 1 + static_cast<int>(r() % 2));
      // Choose t with log|t|_S = deg B - 1 + extra.
      const int need = -2 + conductor_degree(B, 0) + 1 + static_cast<int>(r() % 2);
      Scaling t = {std::vector<int>(B.S.size(), 0)};
      t[0][0] = -need;
      if (B.S.size() > 1) {
        const int spread = static_cast<int>(r() % 3) - 1;
        t[0][0] += spread;
        t[0][1] -= spread;
      }
      auto c = exact_count_check(B, t);
      REQUIRE(c.threshold_met);
      CHECK(Rational(c.count) == c.volume);
      CHECK(c.poisson == c.count);
      ++trials;
    }
  CHECK(trials == 100);
}

TEST_CASE("covolume of O_S") {
  auto& F = FqField::get(3, 1);
  const Place inf = Place::infinity(F), p0 = finite_place(F, 0);
  CHECK(covolume({inf}) == 1);
  CHECK(covolume({inf, p0}) == 1);
  CHECK(covolume({p0}) == Rational(1, 3));
  // Fundamental domains: u O_inf for F_q[t]; u O_inf x O_t for F_q[t, 1/t]; t O_t for F_q[1/t].
  // Each meets O_S only in 0 and its translates by O_S points in a large box tile the box.
  struct Case {
    std::vector<Place> S;
    std::vector<int> fd;
  };
  for (auto c : {Case{{inf}, {1}}, Case{{inf, p0}, {1, 0}}, Case{{p0}, {1}}}) {
    std::vector<LocalBox> fd;
    for (int l : c.fd) fd.push_back({Laurent{l, {}}, l});
    BoxUnion D{c.S, 1, {ProductBox{{fd}}}};
    CHECK(direct_count(D) == 1);
    Rational vol = box_volume(D);
    CHECK(vol == covolume(c.S));
    std::vector<LocalBox> big;
    for (std::size_t s = 0; s < c.S.size(); ++s) big.push_back({Laurent{-3, {}}, -3});
    BoxUnion L{c.S, 1, {ProductBox{{big}}}};
    CHECK(Rational(direct_count(L)) * vol == box_volume(L));
  }
}

TEST_CASE("skew expansion bound") {
  auto& F = FqField::get(3, 1);
  const Place inf = Place::infinity(F);
  BoxUnion B{{inf}, 2, {}};
  B.members.push_back(ProductBox{{{LocalBox{lau(F, -1, {1}), 0}}, {LocalBox{Laurent{0, {}}, 0}}}});
  B.members.push_back(ProductBox{{{LocalBox{lau(F, -1, {2}), 0}}, {LocalBox{lau(F, 0, {1}), 1}}}});
  validate_box(B);
  int points = 0;
  for (int s1 = 2; s1 >= -1; --s1)  // first coordinate shrinking scale: |t_1| = 3^-s1 < 3^2
    for (int m = 0; m < 5; ++m) {
      Scaling t = {{s1}, {-m}};
      auto rep = skew_count_bound(B, t, 2, 2);
      CHECK(Rational(rep.count) <= rep.bound);
      CHECK(rep.C0 > 0);
      ++points;
    }
  CHECK(points == 20);
  // i = 1 is the exact case.
  auto eq = skew_count_bound(B, {{-2}, {-3}}, 1, 0);
  CHECK(Rational(eq.count) == eq.bound);
  CHECK_THROWS(skew_count_bound(B, {{-2}, {0}}, 2, 2));  // |t_1| too large
  CHECK_THROWS(skew_count_bound(B, {{0}, {3}}, 2, 2));   // second axis below threshold
  BoxUnion none{{inf}, 2, {}};
  auto z = skew_count_bound(none, {{0}, {-3}}, 2, 2);
  CHECK(z.count == 0);
  CHECK(z.bound == 0);
}

TEST_CASE("threshold trial driver") {
  for (int p : {3, 5}) {
    auto s = threshold_trials(FqField::get(p, 1), 20, 7 + p);
    CHECK(s.trials == 20);
    CHECK(s.equal == 20);
    CHECK(s.poisson_ok == 20);
  }
}
