// Places of F_q(t), valuations and absolute values.
#pragma once

#include <string>
#include <vector>

#include "ffdens/factor.hpp"

namespace ffdens {

struct RationalFn {
  PolyFq num, den;
};

class Place {
 public:
  static Place infinity(const FqField& F);
  // pi must be monic irreducible; checked.
  static Place finite(const PolyFq& pi);

  bool is_infinite() const { return inf_; }
  const PolyFq& pi() const { return pi_; }
  const FqField& field() const { return *F_; }
  int degree() const { return inf_ ? 1 : pi_.degree(); }
  Integer norm() const;
  // Exponent of v in the canonical divisor of dt.
  int canonical_exponent() const { return inf_ ? -2 : 0; }
  std::string to_string() const;
  bool operator==(const Place& o) const { return inf_ == o.inf_ && (inf_ || pi_ == o.pi_); }

 private:
  Place(const FqField& F, bool inf, PolyFq pi) : F_(&F), inf_(inf), pi_(std::move(pi)) {}
  const FqField* F_;
  bool inf_;
  PolyFq pi_;
};

// Multiplicity of pi in f (f nonzero).
int poly_valuation(const PolyFq& f, const PolyFq& pi);
int valuation(const PolyFq& f, const Place& v);
int valuation(const RationalFn& x, const Place& v);
Integer place_norm(const Place& v);
Rational abs_value(const RationalFn& x, const Place& v);

bool is_square(const PolyFq& f);

// All monic irreducible polynomials of degree d, in code order.
std::vector<PolyFq> monic_irreducibles(const FqField& F, int d);
// Number of places of degree d of F_q(t) (finite ones, plus infinity when d = 1 and include_inf).
Integer count_finite_places(std::uint64_t q, int d);

// Finite places of lowest degree first, then by code order; n of them.
std::vector<Place> lowest_places(const FqField& F, int n);

}  // namespace ffdens
