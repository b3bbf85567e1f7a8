#include <doctest.h>

#include "../support/random_rings.hpp"
#include "ffdens/residue.hpp"
#include "ffdens/weights.hpp"

using namespace ffdens;
using namespace ffdens::testing;

namespace {

template <class R>
void check_relative_invariance(const R& rr, int cases, std::uint64_t seed) {
  using T = decltype(rr.proto());
  std::mt19937_64 r(seed);
  for (int k = 0; k < cases; ++k) {
    T g = rr.unit(r);
    FormV2<T> v2{rr(r)};
    CHECK(disc(act(g, v2)) == chi(g) * chi(g) * disc(v2));

    Mat<T> g3 = random_invertible(rr, 2, r);
    auto f = random_v3(rr, r);
    CHECK(disc(act(g3, f)) == chi(g3) * chi(g3) * disc(f));

    GroupElemV4<T> h{random_invertible(rr, 2, r), random_invertible(rr, 3, r)};
    auto v = random_v4(rr, r);
    CHECK(disc(act(h, v)) == chi(h) * chi(h) * disc(v));
  }
}

template <class R>
void check_action_law(const R& rr, int cases, std::uint64_t seed) {
  using T = decltype(rr.proto());
  std::mt19937_64 r(seed);
  for (int k = 0; k < cases; ++k) {
    Mat<T> g = random_invertible(rr, 2, r), h = random_invertible(rr, 2, r);
    auto f = random_v3(rr, r);
    CHECK(act(g, act(h, f)) == act(g * h, f));
    CHECK(chi(g * h) == chi(g) * chi(h));
    GroupElemV4<T> G{random_invertible(rr, 2, r), random_invertible(rr, 3, r)};
    GroupElemV4<T> H{random_invertible(rr, 2, r), random_invertible(rr, 3, r)};
    GroupElemV4<T> GH{G.g2 * H.g2, G.g3 * H.g3};
    auto v = random_v4(rr, r);
    CHECK(act(G, act(H, v)) == act(GH, v));
    CHECK(chi(GH) == chi(G) * chi(H));
  }
}

}  // namespace

TEST_CASE("action examples") {
  Mat<Integer> anti = Mat<Integer>::from_rows({{0, 1}, {1, 0}});
  FormV3<Integer> x3{1, 0, 0, 0};
  CHECK(act(anti, x3) == FormV3<Integer>{0, 0, 0, -1});
  CHECK(act(Mat<Integer>::identity(2, 0), FormV3<Integer>{1, 2, 3, 4}) == FormV3<Integer>{1, 2, 3, 4});
  CHECK_THROWS_WITH(act(Mat<Integer>::from_rows({{2, 0}, {0, 1}}), x3), "singular group element");

  const FqField& F7 = FqField::get(7);
  RandFq rr{&F7};
  std::mt19937_64 r(3);
  for (std::uint32_t l = 1; l < 7; ++l) {
    FqElem lam = F7.elem(l);
    Mat<FqElem> g2 = Mat<FqElem>::identity(2, F7.zero()), g3 = Mat<FqElem>::identity(3, F7.zero());
    for (int i = 0; i < 2; ++i) g2(i, i) = lam * lam;
    for (int i = 0; i < 3; ++i) g3(i, i) = lam.inv();
    auto v = random_v4(rr, r);
    CHECK(act(GroupElemV4<FqElem>{g2, g3}, v) == v);
  }
}

TEST_CASE("discriminant examples") {
  CHECK(disc(FormV3<Integer>{1, 0, -1, 0}) == 4);
  CHECK(disc(FormV3<Integer>{1, 0, 0, 0}) == 0);
  FormV4<Integer> v{{1, 0, 0, 1, 0, 1}, {1, 0, 0, 2, 0, 3}};
  CHECK(resolvent(v) == FormV3<Integer>{4, -24, 44, -24});
  CHECK(disc(v) == 1024);
}

TEST_CASE("resolvent agrees with rational determinant expansion") {
  std::mt19937_64 r(11);
  for (int k = 0; k < 50; ++k) {
    FormV4<Integer> v{std::vector<Integer>(6), std::vector<Integer>(6)};
    for (int i = 0; i < 6; ++i) {
      v.a[i] = static_cast<long>(r() % 11) - 5;
      v.b[i] = static_cast<long>(r() % 11) - 5;
    }
    auto res = resolvent(v);
    for (long x = -2; x <= 2; ++x)
      for (long y = -2; y <= 2; ++y) {
        Mat<Rational> M(3, Rational(0));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            Rational aij = v.a[sym_index(i, j)], bij = v.b[sym_index(i, j)];
            if (i != j) {
              aij /= 2;
              bij /= 2;
            }
            M(i, j) = aij * x - bij * y;
          }
        Rational lhs = 4 * M.det();
        Rational rhs = res.a * x * x * x + res.b * x * x * y + res.c * x * y * y + res.d * y * y * y;
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("character examples") {
  const FqField& F5 = FqField::get(5);
  const FqField& F7 = FqField::get(7);
  Mat<FqElem> g = Mat<FqElem>::identity(2, F5.zero());
  g(0, 0) = F5.elem(2);
  CHECK(chi(g) == F5.elem(2));
  Mat<FqElem> g3 = Mat<FqElem>::identity(3, F7.zero());
  for (int i = 0; i < 3; ++i) g3(i, i) = F7.elem(2);
  CHECK(chi(GroupElemV4<FqElem>{Mat<FqElem>::identity(2, F7.zero()), g3}) == F7.one());
  CHECK(chi(Mat<FqElem>::identity(2, F5.zero())) == F5.one());
}

TEST_CASE("relative invariance over finite fields, rationals and F_5[t]") {
  check_relative_invariance(RandFq{&FqField::get(3)}, 500, 1);
  check_relative_invariance(RandFq{&FqField::get(5)}, 500, 2);
  check_relative_invariance(RandFq{&FqField::get(3, 2)}, 500, 3);
  check_relative_invariance(RandQ{}, 500, 4);
  check_relative_invariance(RandPolyFq{&FqField::get(5), 2}, 200, 5);
}

TEST_CASE("group action law") {
  check_action_law(RandFq{&FqField::get(5)}, 200, 6);
  check_action_law(RandQ{}, 100, 7);
  check_action_law(RandPolyFq{&FqField::get(3), 2}, 50, 8);
}

TEST_CASE("homogeneity of discriminants") {
  std::mt19937_64 r(9);
  RandQ rr;
  for (int k = 0; k < 100; ++k) {
    Rational l = rr.unit(r);
    auto f = random_v3(rr, r);
    FormV3<Rational> lf{l * f.a, l * f.b, l * f.c, l * f.d};
    Rational l2 = l * l, l4 = l2 * l2, l12 = l4 * l4 * l4;
    CHECK(disc(lf) == l4 * disc(f));
    auto v = random_v4(rr, r);
    auto lv = v;
    for (int i = 0; i < 6; ++i) {
      lv.a[i] *= l;
      lv.b[i] *= l;
    }
    CHECK(disc(lv) == l12 * disc(v));
  }
}

TEST_CASE("forms over truncated residue rings") {
  const FqField& F3 = FqField::get(3);
  auto ctx = residue_ctx(PolyFq::var(F3.zero()), 2);
  std::mt19937_64 r(10);
  RandPolyFq rp{&F3, 3};
  for (int k = 0; k < 50; ++k) {
    FormV3<Residue> f{Residue(ctx, rp(r)), Residue(ctx, rp(r)), Residue(ctx, rp(r)), Residue(ctx, rp(r))};
    Mat<Residue> g = Mat<Residue>::identity(2, Residue(ctx, rp.proto()));
    g(0, 1) = Residue(ctx, rp(r));
    g(1, 1) = Residue(ctx, PolyFq::constant(F3.elem(2)) + PolyFq::var(F3.zero()));
    CHECK(disc(act(g, f)) == chi(g) * chi(g) * disc(f));
  }
}

TEST_CASE("torus weights and the coordinate order") {
  CHECK(torus_weight(3, "a") == WeightVector{1, {-3}});
  CHECK(torus_weight(4, "a11") == WeightVector{1, {-1, -4, -2}});
  CHECK(weight_leq(4, "a11", "a12"));
  CHECK(weight_leq(4, "b23", "b23"));
  CHECK_THROWS(torus_weight(4, "c11"));
  CHECK_THROWS_WITH(torus_weight(5, "a12"), "unsupported degree: 5");
  CHECK_THROWS_WITH(check_degree(5), "unsupported degree: 5");
  for (int n : {3, 4}) {
    const auto& names = coordinate_names(n);
    int minima = 0;
    std::string which;
    for (auto& a : names) {
      bool below_all = true;
      for (auto& b : names) below_all = below_all && weight_leq(n, a, b);
      if (below_all) {
        ++minima;
        which = a;
      }
      CHECK(torus_weight(n, a).lambda == 1);
    }
    CHECK(minima == 1);
    CHECK(which == (n == 3 ? "a" : "a11"));
  }
}

TEST_CASE("torus weights match the action of the torus") {
  // Act with explicit torus elements over Q and read off the scaling.
  const Rational s1 = 2, s2 = 3, s3 = 5;
  auto pw = [](Rational x, int k) {
    Rational r = 1;
    for (int i = 0; i < std::abs(k); ++i) r *= x;
    return k >= 0 ? r : 1 / r;
  };
  Mat<Rational> g = Mat<Rational>::identity(2, Rational(0));
  g(0, 0) = 1 / s1;
  g(1, 1) = s1;
  auto f = act(g, FormV3<Rational>{1, 1, 1, 1});
  auto co = f.coeffs();
  for (int i = 0; i < 4; ++i) CHECK(co[i] == pw(s1, torus_weight(3, coordinate_names(3)[i]).s[0]));

  GroupElemV4<Rational> h{g, Mat<Rational>::identity(3, Rational(0))};
  h.g3(0, 0) = pw(s2, -2) * pw(s3, -1);
  h.g3(1, 1) = s2 / s3;
  h.g3(2, 2) = s2 * s3 * s3;
  auto v = act(h, FormV4<Rational>{std::vector<Rational>(6, 1), std::vector<Rational>(6, 1)});
  for (int i = 0; i < 12; ++i) {
    const auto w = torus_weight(4, coordinate_names(4)[i]);
    const Rational expect = pw(s1, w.s[0]) * pw(s2, w.s[1]) * pw(s3, w.s[2]);
    CHECK((i < 6 ? v.a[i] : v.b[i - 6]) == expect);
  }
}
