// Exact elements of Q(zeta_p) as coefficient vectors over 1, zeta, ..., zeta^(p-1),
// compared modulo 1 + zeta + ... + zeta^(p-1).
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ffdens/ring.hpp"

namespace ffdens {

class Cyclotomic {
 public:
  explicit Cyclotomic(int p) : c_(p, Rational(0)) {}
  static Cyclotomic integer(int p, const Rational& v) {
    Cyclotomic z(p);
    z.c_[0] = v;
    return z;
  }
  static Cyclotomic root(int p, long k) {  // zeta^k
    Cyclotomic z(p);
    z.c_[((k % p) + p) % p] = 1;
    return z;
  }
  int p() const { return static_cast<int>(c_.size()); }
  void add_root(long k, const Rational& mult = 1) { c_[((k % p()) + p()) % p()] += mult; }

  Cyclotomic operator+(const Cyclotomic& o) const {
    check(o);
    Cyclotomic r = *this;
    for (int i = 0; i < p(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Cyclotomic operator*(const Cyclotomic& o) const {
    check(o);
    Cyclotomic r(p());
    for (int i = 0; i < p(); ++i)
      if (c_[i] != 0)
        for (int j = 0; j < p(); ++j) r.c_[(i + j) % p()] += c_[i] * o.c_[j];
    return r;
  }
  Cyclotomic scale(const Rational& s) const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  // Subtract the multiple of 1 + zeta + ... that zeroes the last coefficient.
  Cyclotomic normalized() const {
    Cyclotomic r = *this;
    const Rational last = c_.back();
    for (auto& x : r.c_) x -= last;
    return r;
  }
  bool operator==(const Cyclotomic& o) const {
    check(o);
    return normalized().c_ == o.normalized().c_;
  }
  // The rational value when the element lies in Q.
  std::optional<Rational> as_rational() const {
    const auto n = normalized();
    for (int i = 1; i < p(); ++i)
      if (n.c_[i] != 0) return std::nullopt;
    return n.c_[0];
  }

 private:
  void check(const Cyclotomic& o) const {
    if (o.p() != p()) throw std::invalid_argument("cyclotomic order mismatch");
  }
  std::vector<Rational> c_;
};

}  // namespace ffdens
