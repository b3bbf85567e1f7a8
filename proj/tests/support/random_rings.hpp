// Random elements of the coefficient rings used by the tests.
#pragma once

#include <random>

#include "ffdens/forms.hpp"
#include "ffdens/poly.hpp"

namespace ffdens::testing {

struct RandFq {
  const FqField* F;
  FqElem operator()(std::mt19937_64& r) const { return F->elem(r() % F->q()); }
  FqElem unit(std::mt19937_64& r) const { return F->elem(1 + r() % (F->q() - 1)); }
  FqElem proto() const { return F->zero(); }
};

struct RandQ {
  Rational operator()(std::mt19937_64& r) const {
    Rational x(static_cast<long>(r() % 41) - 20, static_cast<long>(1 + r() % 7));
    x.canonicalize();
    return x;
  }
  Rational unit(std::mt19937_64& r) const {
    Rational x = 0;
    while (x == 0) x = (*this)(r);
    return x;
  }
  Rational proto() const { return Rational(0); }
};

struct RandPolyFq {
  const FqField* F;
  int maxdeg = 3;
  PolyFq operator()(std::mt19937_64& r) const {
    std::vector<FqElem> c;
    const int d = static_cast<int>(r() % (maxdeg + 1));
    for (int i = 0; i <= d; ++i) c.push_back(F->elem(r() % F->q()));
    return PolyFq(F->zero(), c);
  }
  PolyFq unit(std::mt19937_64& r) const { return PolyFq::constant(F->elem(1 + r() % (F->q() - 1))); }
  PolyFq proto() const { return PolyFq(F->zero()); }
};

// Invertible matrix: product of elementary matrices and a diagonal of units.
template <class R>
auto random_invertible(const R& rr, int n, std::mt19937_64& r) {
  using T = decltype(rr.proto());
  Mat<T> m = Mat<T>::identity(n, rr.proto());
  for (int s = 0; s < 4; ++s) {
    Mat<T> e = Mat<T>::identity(n, rr.proto());
    int i = r() % n, j = r() % n;
    if (i == j) j = (i + 1) % n;
    e(i, j) = rr(r);
    m = m * e;
  }
  Mat<T> d = Mat<T>::identity(n, rr.proto());
  for (int i = 0; i < n; ++i) d(i, i) = rr.unit(r);
  return m * d;
}

template <class R>
auto random_v3(const R& rr, std::mt19937_64& r) {
  return FormV3<decltype(rr.proto())>{rr(r), rr(r), rr(r), rr(r)};
}

template <class R>
auto random_v4(const R& rr, std::mt19937_64& r) {
  using T = decltype(rr.proto());
  FormV4<T> v{std::vector<T>(6, rr.proto()), std::vector<T>(6, rr.proto())};
  for (int i = 0; i < 6; ++i) {
    v.a[i] = rr(r);
    v.b[i] = rr(r);
  }
  return v;
}

}  // namespace ffdens::testing
