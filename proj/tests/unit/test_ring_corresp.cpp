#include <doctest.h>

#include <map>
#include <set>

#include "../support/random_rings.hpp"
#include "ffdens/poly_text.hpp"
#include "ffdens/ring_corresp.hpp"

using namespace ffdens;
using namespace ffdens::testing;

namespace {

FormFqt form(const FqField& F, const char* a, const char* b, const char* c, const char* d) {
  return {parse_poly(F, a), parse_poly(F, b), parse_poly(F, c), parse_poly(F, d)};
}

FormFq form_fq(const FqField& F, int a, int b, int c, int d) {
  return {F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(d)};
}

// Forms biased towards a square divisor of disc at pi.
FormFqt biased_form(const RandPolyFq& rr, const PolyFq& pi, std::mt19937_64& r) {
  auto f = random_v3(rr, r);
  switch (r() % 4) {
    case 0:  // double root at infinity
      f.a = f.a * pi * pi;
      f.b = f.b * pi;
      break;
    case 1:  // double root at infinity, only a = 0 mod pi
      f.a = f.a * pi;
      f.b = f.b * pi;
      break;
    case 2:  // everything divisible by pi
      f.a = f.a * pi;
      f.b = f.b * pi;
      f.c = f.c * pi;
      f.d = f.d * pi;
      break;
    default:
      break;
  }
  return f;
}

}  // namespace

TEST_CASE("cubic ring multiplication table") {
  auto& F = FqField::get(5, 1);
  auto R = cubic_ring(form_fq(F, 1, 0, 4, 0));
  // omega^2 = theta, omega theta = omega, theta^2 = theta
  CHECK(R.ww == Elem3<FqElem>{F.zero(), F.zero(), F.one()});
  CHECK(R.wt == Elem3<FqElem>{F.zero(), F.one(), F.zero()});
  CHECK(R.tt == Elem3<FqElem>{F.zero(), F.zero(), F.one()});
  auto R0 = cubic_ring(form_fq(F, 1, 0, 0, 0));
  CHECK(R0.ww == Elem3<FqElem>{F.zero(), F.zero(), F.one()});
  CHECK(R0.wt == Elem3<FqElem>{F.zero(), F.zero(), F.zero()});
  CHECK(R0.tt == Elem3<FqElem>{F.zero(), F.zero(), F.zero()});

  // Over Z: the table for f = (a,b,c,d) realises Z[omega, theta] inside Q(xi).
  FormV3<Integer> fz{2, -3, 5, 7};
  auto RZ = cubic_ring(fz);
  // Oracle: compute omega = a xi, theta = a xi^2 + b xi modulo f(xi,1) in Q[xi].
  PolyQ m(Rational(0), {Rational(7), Rational(5), Rational(-3), Rational(2)});
  PolyQ xi = PolyQ::var(Rational(0));
  PolyQ w = xi.scale(Rational(2)), th = (xi * xi).scale(Rational(2)) + xi.scale(Rational(-3));
  auto as_poly = [&](const Elem3<Integer>& e) {
    return PolyQ::constant(Rational(e[0])) + w.scale(Rational(e[1])) + th.scale(Rational(e[2]));
  };
  CHECK(as_poly(RZ.ww) == (w * w) % m);
  CHECK(as_poly(RZ.wt) == (w * th) % m);
  CHECK(as_poly(RZ.tt) == (th * th) % m);
}

TEST_CASE("cubic ring associativity and disc over F_5[t]") {
  auto& F = FqField::get(5, 1);
  RandPolyFq rr{&F, 2};
  std::mt19937_64 r(11);
  for (int k = 0; k < 100; ++k) {
    auto f = random_v3(rr, r);
    auto R = cubic_ring(f);
    CHECK(R.disc() == disc(f));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(R.mul(R.basis(i), R.basis(j)) == R.mul(R.basis(j), R.basis(i)));
        for (int l = 0; l < 3; ++l)
          CHECK(R.mul(R.mul(R.basis(i), R.basis(j)), R.basis(l)) == R.mul(R.basis(i), R.mul(R.basis(j), R.basis(l))));
      }
  }
}

TEST_CASE("maximality examples") {
  auto& F = FqField::get(5, 1);
  const PolyFq t = parse_poly(F, "t");
  auto v = is_maximal_at(form(F, "t", "0", "0", "t"), t);
  CHECK_FALSE(v.maximal);
  CHECK(witness_is_ring(form(F, "t", "0", "0", "t"), t, v.witness));
  CHECK_FALSE(is_maximal_at_fast(form(F, "t", "0", "0", "t"), t));
  // t^2 divides disc here.
  auto g = form(F, "1", "0", "4*t", "t");
  CHECK(is_maximal_at(g, t).maximal == is_maximal_at_fast(g, t));
  CHECK(is_maximal_at(g, t).maximal);  // x^3 - t x y^2 + t y^3 is Eisenstein at t
  auto h = form(F, "1", "0", "1", "t^2");
  CHECK(is_maximal_at(h, t).maximal);  // disc not divisible by t^2
  CHECK_THROWS_WITH(is_maximal_at(form(F, "1", "0", "0", "0"), t), "degenerate form");
  // Index-t^2 situation: x^3 - t^2 y^3 has a non-maximal ring at t.
  auto e = form(F, "1", "0", "0", "4*t^2");
  CHECK_FALSE(is_maximal_at(e, t).maximal);
  CHECK_FALSE(is_maximal_at_fast(e, t));
  CHECK_FALSE(is_maximal(e));
  CHECK(is_maximal(form(F, "1", "0", "4*t", "t")));
}

TEST_CASE("fast maximality agrees with the enlargement oracle") {
  struct Setup {
    int p, e;
    const char* pi;
  };
  int nonmax = 0, total = 0;
  for (Setup s : {Setup{3, 1, "t"}, Setup{3, 1, "t+1"}, Setup{3, 1, "t^2+1"}, Setup{5, 1, "t+2"}, Setup{2 + 1, 2, "t+u"}}) {
    auto& F = FqField::get(s.p, s.e);
    const PolyFq pi = parse_poly(F, s.pi);
    RandPolyFq rr{&F, 2};
    std::mt19937_64 r(1000 + s.p + 7 * pi.degree());
    for (int k = 0; k < 120; ++k) {
      auto f = biased_form(rr, pi, r);
      if (disc(f).is_zero()) continue;
      const auto v = is_maximal_at(f, pi);
      CHECK(v.maximal == is_maximal_at_fast(f, pi));
      ++total;
      if (!v.maximal) {
        ++nonmax;
        CHECK(witness_is_ring(f, pi, v.witness));
        // The overring has disc Delta / pi^(2 dim W).
        CHECK(poly_valuation(disc(f), pi) >= 2 * static_cast<int>(v.witness.size()));
      }
    }
  }
  CHECK(nonmax > 50);
  CHECK(total - nonmax > 50);
}

TEST_CASE("cubic splitting types") {
  auto& F = FqField::get(5, 1);
  const PolyFq t = parse_poly(F, "t"), t1 = parse_poly(F, "t+1");
  CHECK(splitting_type_cubic_fq(form_fq(F, 1, 0, -1, 0)) == "(111)");
  CHECK(splitting_type_cubic_fq(form_fq(F, 1, 0, 0, 0)) == "(1^3)");
  CHECK(splitting_type_cubic_fq(form_fq(F, 0, 0, 0, 0)) == "(0)");
  CHECK(splitting_type_cubic_fq(form_fq(F, 0, 1, 0, 0)) == "(1^21)");  // x^2 y
  CHECK(splitting_type_cubic_fq(form_fq(F, 0, 1, 0, 2)) == "(12)");    // y (x^2 + 2 y^2)
  CHECK(splitting_type_cubic_fq(form_fq(F, 1, 0, 1, 1)) == "(3)");     // x^3 + x + 1 irreducible mod 5
  CHECK(splitting_type_cubic(form(F, "t", "t+1", "t", "t"), t) == "(1^21)");
  CHECK(splitting_type_cubic(form(F, "t", "t", "t", "t"), t) == "(0)");
  CHECK(splitting_type_cubic(form(F, "1", "0", "1", "t"), t1) == "(3)");  // x^3 + x - 1 mod 5
  // Unramified types only when pi does not divide disc.
  RandPolyFq rr{&F, 2};
  std::mt19937_64 r(4);
  for (int k = 0; k < 200; ++k) {
    auto f = random_v3(rr, r);
    if (disc(f).is_zero()) continue;
    const auto s = splitting_type_cubic(f, t);
    const bool ram = (disc(f) % t).is_zero();
    CHECK(ram == (s.find('^') != std::string::npos || s == "(0)"));
  }
}

TEST_CASE("quartic splitting types") {
  auto& F7 = FqField::get(7, 1);
  auto pair = [&](const FqField& F, std::vector<int> a, std::vector<int> b) {
    FormV4Fq v{{}, {}};
    for (int x : a) v.a.push_back(F.from_int(x));
    for (int x : b) v.b.push_back(F.from_int(x));
    return v;
  };
  // x^2+y^2+z^2 = x^2+2y^2+3z^2 = 0 forces y^2 = 5 z^2, a non-square mod 7.
  CHECK(splitting_type_quartic(pair(F7, {1, 0, 0, 1, 0, 1}, {1, 0, 0, 2, 0, 3})) == "(22)");
  // With diag(1,2,4): y = +-2z, x = +-3z.
  CHECK(splitting_type_quartic(pair(F7, {1, 0, 0, 1, 0, 1}, {1, 0, 0, 2, 0, 4})) == "(1111)");
  CHECK_THROWS_WITH(splitting_type_quartic(pair(F7, {1, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0})), "degenerate pair");
  // Distribution over random pairs: every shape occurs, and counts match the
  // orbit census weights.
  auto& F3 = FqField::get(3, 1);
  std::mt19937_64 r(9);
  RandFq rr{&F3};
  std::set<std::string> seen;
  for (int k = 0; k < 3000; ++k) {
    auto v = random_v4(rr, r);
    if (disc(v).is_zero()) continue;
    seen.insert(splitting_type_quartic(v));
  }
  CHECK(seen == std::set<std::string>{"(1111)", "(112)", "(13)", "(22)", "(4)"});
}

TEST_CASE("stabilizer orders") {
  auto& F5 = FqField::get(5, 1);
  CHECK(stabilizer_order(form_fq(F5, 0, 1, 1, 0)) == 6);  // x y (x + y)
  auto& F3 = FqField::get(3, 1);
  CHECK(stabilizer_order(form_fq(F3, 1, 0, 2, 1)) == 3);  // x^3 - x y^2 + y^3
  CHECK(splitting_type_cubic_fq(form_fq(F3, 1, 0, 2, 1)) == "(3)");
  CHECK(stabilizer_order(form_fq(F3, 0, 1, 0, 1)) == 2);  // y (x^2 + y^2)
  CHECK(splitting_type_cubic_fq(form_fq(F3, 0, 1, 0, 1)) == "(12)");
  CHECK_THROWS(stabilizer_order(form_fq(F3, 1, 0, 2, 1), 10));
  CHECK_THROWS(stabilizer_order(form_fq(F3, 1, 0, 0, 0)));
}

TEST_CASE("cubic orbit census over small fields") {
  const std::map<std::string, int> aut = {{"(111)", 6}, {"(12)", 2}, {"(3)", 3}};
  struct Case {
    int p, e;
  };
  std::map<std::uint64_t, std::map<std::string, Rational>> fractions;
  for (Case c : {Case{3, 1}, Case{5, 1}, Case{7, 1}, Case{3, 2}, Case{11, 1}}) {
    auto& F = FqField::get(c.p, c.e);
    const auto orbits = orbit_census_fq(3, F);
    REQUIRE(orbits.size() == 3);
    // Brute-force count of nondegenerate forms.
    std::uint64_t nondeg = 0;
    for (std::uint32_t a = 0; a < F.q(); ++a)
      for (std::uint32_t b = 0; b < F.q(); ++b)
        for (std::uint32_t cc = 0; cc < F.q(); ++cc)
          for (std::uint32_t d = 0; d < F.q(); ++d)
            nondeg += !disc(FormFq{F.elem(a), F.elem(b), F.elem(cc), F.elem(d)}).is_zero();
    std::uint64_t sum = 0;
    Rational inv = 0;
    for (auto& o : orbits) {
      sum += o.size;
      CHECK(Integer(static_cast<unsigned long>(o.size)) * o.stabilizer == group_order(3, F.q()));
      CHECK(o.stabilizer == aut.at(o.splitting_type));
      inv += Rational(1) / Rational(o.stabilizer);
      const Integer q4 = Integer(static_cast<unsigned long>(F.q())) * F.q() * F.q() * F.q();
      fractions[F.q()][o.splitting_type] = Rational(Integer(static_cast<unsigned long>(o.size)), q4);
      if (F.q() == 3 && o.splitting_type == "(111)") CHECK(o.size == 8);
      // Invariance: every orbit element has the representative's type and stabilizer.
      if (F.q() <= 5) {
        std::mt19937_64 r(F.q());
        RandFq rr{&F};
        FormFq f{o.rep[0], o.rep[1], o.rep[2], o.rep[3]};
        for (int k = 0; k < 10; ++k) {
          auto g = random_invertible(rr, 2, r);
          auto h = act(g, f);
          CHECK(splitting_type_cubic_fq(h) == o.splitting_type);
          CHECK(stabilizer_order(h) == o.stabilizer);
        }
      }
    }
    CHECK(sum == nondeg);
    CHECK(inv == 1);
  }
  // Fraction of each type tends to 1/#Aut with error at most C/q, C <= 3.
  for (auto& [q, fr] : fractions)
    for (auto& [tau, x] : fr) {
      Rational err = x - Rational(1, aut.at(tau));
      if (err < 0) err = -err;
      CHECK(err * Rational(static_cast<long>(q)) <= 3);
    }
}

TEST_CASE("quartic orbit census over F_3") {
  auto& F = FqField::get(3, 1);
  const auto orbits = orbit_census_fq(4, F);
  REQUIRE(orbits.size() == 5);
  const std::map<std::string, int> aut = {{"(1111)", 24}, {"(112)", 4}, {"(22)", 8}, {"(13)", 3}, {"(4)", 4}};
  std::set<std::string> types;
  Rational inv = 0;
  for (auto& o : orbits) {
    types.insert(o.splitting_type);
    CHECK(o.stabilizer == aut.at(o.splitting_type));
    CHECK(Integer(static_cast<unsigned long>(o.size)) * o.stabilizer == group_order(4, 3));
    inv += Rational(1) / Rational(o.stabilizer);
  }
  CHECK(types.size() == 5);
  CHECK(inv == 1);
  CHECK_THROWS(orbit_census_fq(4, FqField::get(5, 1)));
  CHECK_THROWS(orbit_census_fq(5, F));
}

TEST_CASE("discriminant divisibility classes") {
  auto& F = FqField::get(3, 1);
  const PolyFq t = parse_poly(F, "t");
  CHECK(disc_divisibility_class(form(F, "1", "0", "1", "t"), t) == DivClass::None);
  CHECK(disc_divisibility_class(form(F, "t", "t", "t", "t^2+t"), t) == DivClass::Strong);
  CHECK(disc_divisibility_class(form(F, "t^2", "1", "t", "t^2"), t) == DivClass::Weak);
  CHECK(to_string(DivClass::Weak) == "Weak");
  // Exhaustive lifts, gradient test and splitting-type shortcut agree.
  int counts[3] = {0, 0, 0};
  for (auto [pstr, pi_str] : {std::pair{3, "t"}, std::pair{3, "t+2"}, std::pair{5, "t+1"}}) {
    auto& G = FqField::get(pstr, 1);
    const PolyFq pi = parse_poly(G, pi_str);
    RandPolyFq rr{&G, 2};
    std::mt19937_64 r(77 + pstr);
    for (int k = 0; k < 150; ++k) {
      auto f = biased_form(rr, pi, r);
      if (disc(f).is_zero()) continue;
      const DivClass ex = disc_divisibility_class(f, pi, true);
      CHECK(ex == disc_divisibility_class(f, pi, false));
      CHECK(ex == divisibility_by_type(f, pi));
      ++counts[static_cast<int>(ex)];
    }
  }
  CHECK(counts[0] > 10);
  CHECK(counts[1] > 10);
  CHECK(counts[2] > 10);
}

TEST_CASE("invariants along unimodular orbits over F_q[t]") {
  auto& F = FqField::get(3, 1);
  RandPolyFq rr{&F, 2};
  std::mt19937_64 r(5);
  const PolyFq t = parse_poly(F, "t"), t1 = parse_poly(F, "t+1");
  for (int k = 0; k < 60; ++k) {
    auto f = biased_form(rr, t, r);
    if (disc(f).is_zero()) continue;
    auto g = random_invertible(rr, 2, r);
    auto h = act(g, f);
    CHECK(disc(h).monic() == disc(f).monic());
    for (auto& pi : {t, t1}) {
      CHECK(splitting_type_cubic(h, pi) == splitting_type_cubic(f, pi));
      CHECK(is_maximal_at(h, pi).maximal == is_maximal_at(f, pi).maximal);
      CHECK(disc_divisibility_class(h, pi) == disc_divisibility_class(f, pi));
    }
  }
}
