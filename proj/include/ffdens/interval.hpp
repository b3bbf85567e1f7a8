// Closed rational intervals with outward rounding to dyadic endpoints.
#pragma once

#include <string>

#include "ffdens/ring.hpp"

namespace ffdens {

class RationalInterval {
 public:
  RationalInterval() : lo_(0), hi_(0) {}
  explicit RationalInterval(const Rational& x) : lo_(x), hi_(x) {}
  RationalInterval(const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool overlaps(const RationalInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

  RationalInterval operator+(const RationalInterval& o) const { return {lo_ + o.lo_, hi_ + o.hi_}; }
  RationalInterval operator-(const RationalInterval& o) const { return {lo_ - o.hi_, hi_ - o.lo_}; }
  RationalInterval operator*(const RationalInterval& o) const;
  // Requires 0 outside o.
  RationalInterval operator/(const RationalInterval& o) const;

  // Replace endpoints by dyadic rationals with denominator 2^bits, rounding outward.
  RationalInterval rounded(unsigned bits = 256) const;

  // Decimal rendering of an endpoint with the given number of digits.
  static std::string to_decimal(const Rational& x, int digits = 20);

 private:
  Rational lo_, hi_;
};

}  // namespace ffdens
