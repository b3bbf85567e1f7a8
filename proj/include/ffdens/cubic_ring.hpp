// Cubic rings attached to binary cubic forms, basis <1, omega, theta>.
#pragma once

#include <array>

#include "ffdens/forms.hpp"

namespace ffdens {

template <class T>
using Elem3 = std::array<T, 3>;  // x0 + x1 omega + x2 theta

template <class T>
struct CubicRing {
  FormV3<T> f;
  // Products of basis elements: ww = omega^2, wt = omega theta, tt = theta^2.
  Elem3<T> ww, wt, tt;

  T zero() const { return ring_int(f.a, 0); }
  Elem3<T> one() const { return {ring_int(f.a, 1), zero(), zero()}; }

  Elem3<T> add(const Elem3<T>& x, const Elem3<T>& y) const { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }
  Elem3<T> scale(const T& s, const Elem3<T>& x) const { return {s * x[0], s * x[1], s * x[2]}; }

  Elem3<T> mul(const Elem3<T>& x, const Elem3<T>& y) const {
    Elem3<T> r = {x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[0] * y[2] + x[2] * y[0]};
    const T c_ww = x[1] * y[1], c_wt = x[1] * y[2] + x[2] * y[1], c_tt = x[2] * y[2];
    for (int i = 0; i < 3; ++i) r[i] = r[i] + c_ww * ww[i] + c_wt * wt[i] + c_tt * tt[i];
    return r;
  }

  // Trace of multiplication by x.
  T trace(const Elem3<T>& x) const {
    T t = zero();
    for (int j = 0; j < 3; ++j) t = t + mul(x, basis(j))[j];
    return t;
  }

  Elem3<T> basis(int i) const {
    Elem3<T> e = {zero(), zero(), zero()};
    e[i] = ring_int(f.a, 1);
    return e;
  }

  // det(Tr(e_i e_j)).
  T disc() const {
    Mat<T> m(3, zero());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = trace(mul(basis(i), basis(j)));
    return m.det();
  }
};

// Delone-Faddeev table for omega = a xi, theta = a xi^2 + b xi, xi a root of f(x, 1).
template <class T>
CubicRing<T> cubic_ring(const FormV3<T>& f) {
  const T z = ring_int(f.a, 0);
  CubicRing<T> R{f, {z, -f.b, f.a}, {-(f.a * f.d), -f.c, z}, {-(f.b * f.d), -f.d, -f.c}};
  return R;
}

}  // namespace ffdens
