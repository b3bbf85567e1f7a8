// The representations (G_n, V_n), n = 2, 3, 4: action, character, discriminant.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffdens/ring.hpp"

namespace ffdens {

// Square matrix over an exact ring, row major.
template <class T>
struct Mat {
  int n;
  std::vector<T> e;
  Mat(int dim, const T& zero) : n(dim), e(dim * dim, zero) {}
  static Mat identity(int dim, const T& proto) {
    Mat m(dim, ring_int(proto, 0));
    for (int i = 0; i < dim; ++i) m(i, i) = ring_int(proto, 1);
    return m;
  }
  static Mat from_rows(const std::vector<std::vector<T>>& rows) {
    Mat m(static_cast<int>(rows.size()), ring_int(rows[0][0], 0));
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) m(i, j) = rows[i][j];
    return m;
  }
  T& operator()(int i, int j) { return e[i * n + j]; }
  const T& operator()(int i, int j) const { return e[i * n + j]; }
  Mat operator*(const Mat& o) const {
    Mat r(n, ring_int(e[0], 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T s = ring_int(e[0], 0);
        for (int k = 0; k < n; ++k) s = s + (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
  bool operator==(const Mat& o) const { return n == o.n && e == o.e; }
  T det() const {
    const Mat& m = *this;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (n == 3)
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    throw std::invalid_argument("det only for n <= 3");
  }
};

template <class T>
struct FormV2 {
  T v;
  bool operator==(const FormV2& o) const { return v == o.v; }
};

// a x^3 + b x^2 y + c x y^2 + d y^3
template <class T>
struct FormV3 {
  T a, b, c, d;
  bool operator==(const FormV3& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const FormV3& o) const { return !(*this == o); }
  std::array<T, 4> coeffs() const { return {a, b, c, d}; }
};

// Pair of ternary quadratic forms sum_{i<=j} a_ij x_i x_j, coordinates in the
// order 11,12,13,22,23,33.
template <class T>
struct FormV4 {
  std::vector<T> a, b;
  bool operator==(const FormV4& o) const { return a == o.a && b == o.b; }
};

template <class T>
struct GroupElemV4 {
  Mat<T> g2, g3;
};

// Index of a_ij (0-based i <= j) in the FormV4 coordinate order.
inline int sym_index(int i, int j) {
  if (i > j) std::swap(i, j);
  static const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return idx[i][j];
}

namespace detail {

// Binary forms as coefficient vectors in x^{k} y^{0} ... x^0 y^k order.
template <class T>
std::vector<T> bin_mul(const std::vector<T>& p, const std::vector<T>& q) {
  std::vector<T> r(p.size() + q.size() - 1, ring_int(p[0], 0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] = r[i + j] + p[i] * q[j];
  return r;
}

template <class T>
T unit_inverse_or_throw(const T& x) {
  auto inv = ring_unit_inverse(x);
  if (!inv) throw std::invalid_argument("singular group element");
  return *inv;
}

}  // namespace detail

// n = 2: g . v = g^2 v.
template <class T>
FormV2<T> act(const T& g, const FormV2<T>& f) {
  detail::unit_inverse_or_throw(g);
  return {g * g * f.v};
}
template <class T>
T chi(const T& g) {
  return g;
}
template <class T>
T disc(const FormV2<T>& f) {
  return f.v;
}

// n = 3: g . f(x, y) = det(g)^{-1} f((x, y) g).
template <class T>
FormV3<T> act(const Mat<T>& g, const FormV3<T>& f) {
  const T dinv = detail::unit_inverse_or_throw(g.det());
  const std::vector<T> X = {g(0, 0), g(1, 0)}, Y = {g(0, 1), g(1, 1)};
  const auto X2 = detail::bin_mul(X, X), Y2 = detail::bin_mul(Y, Y);
  const auto X3 = detail::bin_mul(X2, X), Y3 = detail::bin_mul(Y2, Y);
  const auto X2Y = detail::bin_mul(X2, Y), XY2 = detail::bin_mul(X, Y2);
  std::array<T, 4> r = {f.a, f.a, f.a, f.a};
  for (int i = 0; i < 4; ++i) r[i] = (f.a * X3[i] + f.b * X2Y[i] + f.c * XY2[i] + f.d * Y3[i]) * dinv;
  return {r[0], r[1], r[2], r[3]};
}
template <class T>
T chi(const Mat<T>& g) {
  return g.det();
}
template <class T>
T disc3(const T& a, const T& b, const T& c, const T& d) {
  const T n4 = ring_int(a, 4), n27 = ring_int(a, 27), n18 = ring_int(a, 18);
  return b * b * c * c - n4 * a * c * c * c - n4 * b * b * b * d - n27 * a * a * d * d + n18 * a * b * c * d;
}
template <class T>
T disc(const FormV3<T>& f) {
  return disc3(f.a, f.b, f.c, f.d);
}

// n = 4.
template <class T>
std::vector<T> quad_substitute(const std::vector<T>& q, const Mat<T>& g3) {
  // Q'(x) = Q(g3^t x); y_i = sum_k g3(k, i) x_k.
  std::vector<T> r(6, ring_int(q[0], 0));
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const T& c = q[sym_index(i, j)];
      if (ring_is_zero(c)) continue;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const T term = c * g3(k, i) * g3(l, j);
          r[sym_index(k, l)] = r[sym_index(k, l)] + term;
        }
    }
  return r;
}

template <class T>
FormV4<T> act(const GroupElemV4<T>& g, const FormV4<T>& v) {
  detail::unit_inverse_or_throw(g.g2.det());
  detail::unit_inverse_or_throw(g.g3.det());
  const auto A1 = quad_substitute(v.a, g.g3), B1 = quad_substitute(v.b, g.g3);
  FormV4<T> r{A1, B1};
  for (int i = 0; i < 6; ++i) {
    r.a[i] = g.g2(0, 0) * A1[i] + g.g2(0, 1) * B1[i];
    r.b[i] = g.g2(1, 0) * A1[i] + g.g2(1, 1) * B1[i];
  }
  return r;
}
template <class T>
T chi(const GroupElemV4<T>& g) {
  const T d2 = g.g2.det(), d3 = g.g3.det();
  const T d3sq = d3 * d3;
  return d2 * d2 * d2 * d3sq * d3sq;
}

// 4 det(Ax - By) as a binary cubic (coefficients of x^3, x^2y, xy^2, y^3).
template <class T>
FormV3<T> resolvent(const FormV4<T>& v) {
  auto m = [&](int i, int j) { return std::vector<T>{v.a[sym_index(i, j)], -v.b[sym_index(i, j)]}; };
  using detail::bin_mul;
  const auto m11 = m(0, 0), m22 = m(1, 1), m33 = m(2, 2), m12 = m(0, 1), m13 = m(0, 2), m23 = m(1, 2);
  auto t1 = bin_mul(bin_mul(m11, m22), m33);
  auto t2 = bin_mul(bin_mul(m12, m13), m23);
  auto t3 = bin_mul(bin_mul(m11, m23), m23);
  auto t4 = bin_mul(bin_mul(m22, m13), m13);
  auto t5 = bin_mul(bin_mul(m33, m12), m12);
  const T four = ring_int(v.a[0], 4);
  std::array<T, 4> r = {t1[0], t1[0], t1[0], t1[0]};
  for (int i = 0; i < 4; ++i) r[i] = four * t1[i] + t2[i] - t3[i] - t4[i] - t5[i];
  return {r[0], r[1], r[2], r[3]};
}
template <class T>
T disc(const FormV4<T>& v) {
  return disc(resolvent(v));
}

// Rejects unsupported degrees with a specific message.
inline void check_degree(int n) {
  if (n == 5) throw std::invalid_argument("unsupported degree: 5");
  if (n < 2 || n > 4) throw std::invalid_argument("unsupported degree: " + std::to_string(n));
}

}  // namespace ffdens
