#include "ffdens/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffdens {

RationalInterval::RationalInterval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
  Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
  return {std::min({a, b, c, d}), std::max({a, b, c, d})};
}

RationalInterval RationalInterval::operator/(const RationalInterval& o) const {
  if (o.lo_ <= 0 && o.hi_ >= 0) throw std::domain_error("interval division by an interval containing 0");
  return *this * RationalInterval(1 / o.hi_, 1 / o.lo_);
}

RationalInterval RationalInterval::rounded(unsigned bits) const {
  Integer scale = 1;
  scale <<= bits;
  auto down = [&](const Rational& x) {
    Integer n = x.get_num() * scale, q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
    return Rational(q, scale);
  };
  auto up = [&](const Rational& x) {
    Integer n = x.get_num() * scale, q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
    return Rational(q, scale);
  };
  Rational l = down(lo_), h = up(hi_);
  l.canonicalize();
  h.canonicalize();
  return {l, h};
}

std::string RationalInterval::to_decimal(const Rational& x, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Integer n = x.get_num() * scale, q;
  mpz_tdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  const bool neg = q < 0;
  if (neg) q = -q;
  std::string s = q.get_str();
  if ((int)s.size() <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  s.insert(s.size() - digits, ".");
  return (neg || (q == 0 && x < 0) ? "-" : "") + s;
}

}  // namespace ffdens
