// Lattice points of O_S in boxes of K_S for K = F_q(t) with the differential dt.
// S holds infinity and/or degree-1 finite places.
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "ffdens/cyclotomic.hpp"
#include "ffdens/places.hpp"

namespace ffdens {

// Finite Laurent polynomial sum_i c[i] pi^(val + i) in the uniformizer of a place
// (t - a at a finite place, 1/t at infinity).
struct Laurent {
  int val = 0;
  std::vector<FqElem> c;

  bool is_zero() const;
  int valuation() const;  // large value for zero
  Laurent truncated(int prec) const;  // drop terms of degree >= prec
  FqElem coeff(int k) const;
};
Laurent laurent_zero(const FqField& F);
Laurent operator+(const Laurent& x, const Laurent& y);
Laurent operator-(const Laurent& x, const Laurent& y);
Laurent operator*(const Laurent& x, const Laurent& y);
Laurent shift(const Laurent& x, int k);  // times pi^k

// The additive character psi_v(x) = zeta_p^Tr(Res_v(x dt)), as the exponent in Z/p.
long psi_exponent(const Place& v, const Laurent& x);

struct LocalBox {
  Laurent shift;  // representative; only terms below level matter
  int level = 0;  // shift + pi^level O_v
};

struct ProductBox {
  std::vector<std::vector<LocalBox>> axes;  // axes[j][s] for the s-th place of S
};

struct BoxUnion {
  std::vector<Place> S;
  int n = 1;
  std::vector<ProductBox> members;  // pairwise disjoint
};

// Valuations v(t_j) for each axis j and place s.
using Scaling = std::vector<std::vector<int>>;

void validate_box(const BoxUnion& B);
BoxUnion scale_box(const BoxUnion& B, const Scaling& t);
bool local_disjoint(const LocalBox& x, const LocalBox& y);
Rational local_volume(const Place& v, int level);  // q_v^{-k_v/2 - level}
Rational box_volume(const BoxUnion& B);
Rational covolume(const std::vector<Place>& S);  // Vol(K_S/O_S)
// c[j][s]: level of the common refinement of the members (a subgroup fixing chi_B).
std::vector<std::vector<int>> conductor(const BoxUnion& B);
int conductor_degree(const BoxUnion& B, int axis);
int log_norm(const Scaling& t, int axis);  // log_q |t_j|_S

struct FourierBox {
  Rational coefficient;
  std::vector<int> support;  // exponents -n_v - k_v
};
FourierBox fourier_box(const std::vector<Place>& S, const std::vector<int>& levels);
// Direct discretised integral of psi(x y) over pi^level O_v.
Cyclotomic fourier_box_pointwise(const Place& v, int level, const Laurent& y);
Cyclotomic fourier_box_closed(const Place& v, int level, const Laurent& y);

// Elements of H^0(P^1, O(D)) where D assigns pole orders d[s] at the places S
// and 0 elsewhere except infinity (d_inf when infinity is not in S).
struct RRSpace {
  std::vector<Place> S;
  std::vector<int> d;
  int d_inf_outside = 0;
  int degree() const;
  long dimension() const;
  // Local expansion of the i-th basis element at place s, modulo pi^prec.
  std::vector<std::vector<Laurent>> basis_expansions(const std::vector<int>& prec) const;
};

Integer direct_count(const BoxUnion& B);
Integer poisson_count(const BoxUnion& B);

struct CountCheck {
  Integer count;
  Integer poisson;
  Rational volume;  // Vol_{O_S}
  bool threshold_met = false;
  std::vector<int> log_t, deg_B;
};
CountCheck exact_count_check(const BoxUnion& B, const Scaling& t);

struct SkewReport {
  Integer count;
  Rational bound;
  Rational C0, C2, R, proj_volume;
};
// |t_j|_v < q^gamma for j < i (1-based i) at every place of S.
SkewReport skew_count_bound(const BoxUnion& B, const Scaling& t, int i, int gamma);

// Random pairwise disjoint union: S is {inf}, {inf, t - a} or {t - a}; levels in [-1, 2].
BoxUnion random_box_union(const FqField& F, std::mt19937_64& r, int n, int members);

struct ThresholdTrials {
  int trials = 0;
  int equal = 0;        // count == volume
  int poisson_ok = 0;   // Poisson side agrees with the count
  std::vector<CountCheck> checks;
};
// One-axis unions scaled just past the threshold, as in the exactness check.
ThresholdTrials threshold_trials(const FqField& F, int trials, std::uint64_t seed);

}  // namespace ffdens
