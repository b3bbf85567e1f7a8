// Exact coefficient rings shared by forms and polynomials.
#pragma once

#include <gmpxx.h>

#include <concepts>
#include <optional>
#include <stdexcept>

#include "ffdens/fq.hpp"

namespace ffdens {

using Integer = mpz_class;
using Rational = mpq_class;

// Every ring type provides ring_int(prototype, n) giving the image of n,
// and ring_unit_inverse(x) giving x^{-1} when x is a unit.
template <class T>
concept ExactRing = requires(const T& a, const T& b, long long n) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { a == b } -> std::convertible_to<bool>;
  { ring_int(a, n) } -> std::convertible_to<T>;
  { ring_unit_inverse(a) } -> std::convertible_to<std::optional<T>>;
};

inline Integer ring_int(const Integer&, long long n) { return Integer(static_cast<long>(n)); }
inline Rational ring_int(const Rational&, long long n) { return Rational(static_cast<long>(n)); }
inline FqElem ring_int(const FqElem& x, long long n) { return x.f->from_int(n); }

inline std::optional<Integer> ring_unit_inverse(const Integer& x) {
  if (x == 1 || x == -1) return x;
  return std::nullopt;
}
inline std::optional<Rational> ring_unit_inverse(const Rational& x) {
  if (x == 0) return std::nullopt;
  return Rational(1) / x;
}
inline std::optional<FqElem> ring_unit_inverse(const FqElem& x) {
  if (x.is_zero()) return std::nullopt;
  return x.inv();
}

template <class T>
bool ring_is_zero(const T& x) {
  return x == ring_int(x, 0);
}

}  // namespace ffdens
