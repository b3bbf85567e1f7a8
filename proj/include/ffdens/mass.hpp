// Local masses, Euler factors and assembled densities.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffdens/interval.hpp"

namespace ffdens {

// Partitions of k into at most m parts; 0 for negative k or m.
Integer partitions_at_most(long k, long m);

// Coefficients e_0..e_n of E_n(x).
std::vector<Integer> euler_factor(int n);
// Coefficients of sum_{k<n} q(k, n-k) x^k.
std::vector<Integer> mass_series(int n);

Rational local_mass_nonarch(int n, const Integer& Np);
Integer sn_involutions(int n);
Rational local_mass_real(int n);
Rational local_mass_complex(int n);

struct TameAlgebra {
  std::string shape;  // e.g. "(1^2 1)"
  int disc_valuation;
  Integer aut_order;
};

struct TameMassReport {
  std::vector<TameAlgebra> algebras;
  Rational sum_disc_over_aut;  // sum |Disc| / #Aut
  Rational sum_inv_aut;        // sum 1 / #Aut
};

// Enumerates tamely ramified etale algebras of degree n over a local field
// with residue field of size q0. Throws on wild ramification.
TameMassReport tame_local_mass_oracle(int n, const Integer& q0);

enum class FieldKind { Q, FunctionField, NumberFieldInput };

struct FieldDescriptor {
  FieldKind kind = FieldKind::Q;
  std::uint64_t q = 0;
  int r1 = 1, r2 = 0;
  RationalInterval residue{Rational(1)};
  static FieldDescriptor rationals() { return {}; }
  static FieldDescriptor function_field(std::uint64_t q) { return {FieldKind::FunctionField, q, 0, 0, RationalInterval(Rational(1))}; }
  static FieldDescriptor number_field(int r1, int r2, const RationalInterval& res) {
    return {FieldKind::NumberFieldInput, 0, r1, r2, res};
  }
};

enum class LocalMode { Full, TameEnumerated, ExplicitList };

struct ExplicitEntry {
  int disc_valuation;
  Integer aut_order;
  int multiplicity = 1;
};

// Place identifiers: "inf" for the infinite place (the real place of Q,
// or 1/t for F_q(t)); a polynomial in the text grammar for F_q(t); a prime for Q.
struct LocalSpec {
  std::string place;
  LocalMode mode = LocalMode::Full;
  std::vector<ExplicitEntry> entries;
};

struct DensityResult {
  RationalInterval value;
  std::optional<Rational> exact_closed_form;
  bool wild_model_used = false;  // an S-place mass was taken from the tame count p(n)
  std::vector<std::string> notes;
};

DensityResult predicted_density(int n, const FieldDescriptor& field, const std::vector<std::string>& S,
                                const std::vector<LocalSpec>& specs, long D, unsigned bits = 256);

// Integer power of an interval of positive numbers with rounding at each step.
RationalInterval interval_pow(const RationalInterval& x, const Integer& k, unsigned bits);

std::vector<long> primes_up_to(long n);

}  // namespace ffdens
