// Dense univariate polynomials over an exact ring.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ffdens/ring.hpp"

namespace ffdens {

template <class T>
class Poly {
 public:
  explicit Poly(T zero) : zero_(std::move(zero)) {}
  Poly(T zero, std::vector<T> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { normalize(); }

  static Poly constant(const T& c) { return Poly(ring_int(c, 0), {c}); }
  static Poly monomial(const T& c, int k) {
    std::vector<T> v(k + 1, ring_int(c, 0));
    v[k] = c;
    return Poly(ring_int(c, 0), std::move(v));
  }
  // The variable t.
  static Poly var(const T& proto) { return monomial(ring_int(proto, 1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const T& zero() const { return zero_; }
  T one() const { return ring_int(zero_, 1); }
  const T& operator[](int i) const { return (i < 0 || i >= (int)c_.size()) ? zero_ : c_[i]; }
  const T& lead() const { return c_.empty() ? zero_ : c_.back(); }
  const std::vector<T>& coeffs() const { return c_; }
  void set(int i, const T& x) {
    if (i >= (int)c_.size()) c_.resize(i + 1, zero_);
    c_[i] = x;
    normalize();
  }

  Poly operator+(const Poly& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()), zero_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return Poly(zero_, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()), zero_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
    return Poly(zero_, std::move(r));
  }
  Poly operator-() const {
    std::vector<T> r(c_);
    for (auto& x : r) x = -x;
    return Poly(zero_, std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(zero_);
    std::vector<T> r(c_.size() + o.c_.size() - 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (ring_is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(zero_, std::move(r));
  }
  Poly scale(const T& s) const {
    std::vector<T> r(c_);
    for (auto& x : r) x = x * s;
    return Poly(zero_, std::move(r));
  }
  Poly shift(int k) const {  // multiply by t^k, k >= 0
    if (is_zero()) return *this;
    std::vector<T> r(k, zero_);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(zero_, std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  T eval(const T& x) const {
    T r = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }
  Poly derivative() const {
    if (c_.size() <= 1) return Poly(zero_);
    std::vector<T> r(c_.size() - 1, zero_);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * ring_int(zero_, static_cast<long long>(i));
    return Poly(zero_, std::move(r));
  }
  // Division with remainder; requires the leading coefficient of d to be a unit.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    auto li = ring_unit_inverse(d.lead());
    if (!li) throw std::domain_error("leading coefficient is not a unit");
    std::vector<T> r(c_), qv;
    const int dd = d.degree();
    if (degree() >= dd) qv.assign(degree() - dd + 1, zero_);
    for (int i = degree(); i >= dd; --i) {
      if (ring_is_zero(r[i])) continue;
      T c = r[i] * *li;
      qv[i - dd] = c;
      for (int j = 0; j <= dd; ++j) r[i - dd + j] = r[i - dd + j] - c * d.c_[j];
    }
    return {Poly(zero_, std::move(qv)), Poly(zero_, std::move(r))};
  }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly monic() const {
    if (is_zero()) return *this;
    auto li = ring_unit_inverse(lead());
    if (!li) throw std::domain_error("leading coefficient is not a unit");
    return scale(*li);
  }
  // Compose: this(g).
  Poly compose(const Poly& g) const {
    Poly r(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(c_[i]);
    return r;
  }

 private:
  void normalize() {
    while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
  }
  T zero_;
  std::vector<T> c_;
};

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Extended gcd: returns (g, s, t) with s a + t b = g monic.
template <class T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> poly_xgcd(const Poly<T>& a, const Poly<T>& b) {
  const T z = a.zero();
  Poly<T> r0 = a, r1 = b, s0 = Poly<T>::constant(ring_int(z, 1)), s1(z), t0(z), t1 = Poly<T>::constant(ring_int(z, 1));
  while (!r1.is_zero()) {
    auto [qq, rr] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(rr);
    Poly<T> s2 = s0 - qq * s1, t2 = t0 - qq * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto li = *ring_unit_inverse(r0.lead());
  return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

template <class T>
Poly<T> poly_powmod(Poly<T> base, Integer e, const Poly<T>& m) {
  Poly<T> r = Poly<T>::constant(ring_int(base.zero(), 1)) % m;
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

template <class T>
Poly<T> poly_pow(const Poly<T>& b, unsigned k) {
  Poly<T> r = Poly<T>::constant(ring_int(b.zero(), 1));
  for (unsigned i = 0; i < k; ++i) r = r * b;
  return r;
}

using PolyFq = Poly<FqElem>;
using PolyZ = Poly<Integer>;
using PolyQ = Poly<Rational>;

inline PolyFq poly_fq(const FqField& F, const std::vector<std::uint32_t>& codes) {
  std::vector<FqElem> v;
  for (auto c : codes) v.push_back(F.elem(c));
  return PolyFq(F.zero(), v);
}

// Polynomials over F_q[t] as a coefficient ring.
inline PolyFq ring_int(const PolyFq& proto, long long n) { return PolyFq::constant(ring_int(proto.zero(), n)); }
inline std::optional<PolyFq> ring_unit_inverse(const PolyFq& x) {
  if (x.degree() != 0) return std::nullopt;
  return PolyFq::constant(x.lead().inv());
}

}  // namespace ffdens
