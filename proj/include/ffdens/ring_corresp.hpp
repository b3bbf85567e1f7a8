// Maximality, splitting types, divisibility classes, stabilizers and
// orbit censuses over finite fields.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffdens/cubic_ring.hpp"
#include "ffdens/places.hpp"

namespace ffdens {

using FormFqt = FormV3<PolyFq>;  // binary cubic over F_q[t]
using FormFq = FormV3<FqElem>;
using FormV4Fq = FormV4<FqElem>;

struct MaximalityVerdict {
  bool maximal = true;
  // Lifts of a basis of a subspace W of (1/pi)R/R (coordinates in <1, omega, theta>)
  // such that R + (1/pi) span(W) is a ring.
  std::vector<Elem3<PolyFq>> witness;
};

// Exhaustive search over subspaces of (1/pi)R/R.
MaximalityVerdict is_maximal_at(const FormFqt& f, const PolyFq& pi);
// Congruence criterion: non-maximal iff f = 0 mod pi or f has a multiple root P
// mod pi with f(P~) = 0 mod pi^2.
bool is_maximal_at_fast(const FormFqt& f, const PolyFq& pi);
// Checks that the witness spans a ring containing R (re-verification).
bool witness_is_ring(const FormFqt& f, const PolyFq& pi, const std::vector<Elem3<PolyFq>>& w);
// Maximal at every finite place dividing disc.
bool is_maximal(const FormFqt& f);

// "(111)", "(12)", "(3)", "(1^21)", "(1^3)", "(0)"
std::string splitting_type_cubic(const FormFqt& f, const PolyFq& pi);
std::string splitting_type_cubic_fq(const FormFq& f);
// "(1111)", "(112)", "(22)", "(13)", "(4)"
std::string splitting_type_quartic(const FormV4Fq& v);

enum class DivClass { None, Weak, Strong };
std::string to_string(DivClass c);
DivClass disc_divisibility_class(const FormFqt& f, const PolyFq& pi, bool allow_exhaustive = true);
// Splitting-type shortcut: (1^21) -> Weak, (1^3) or (0) -> Strong.
DivClass divisibility_by_type(const FormFqt& f, const PolyFq& pi);

Integer gl_order(std::uint64_t q, int n);
Integer group_order(int n, std::uint64_t q);  // |G_n(F_q)|

Integer stabilizer_order(const FormFq& f, std::uint64_t budget = 10'000'000);
Integer stabilizer_order(const FormV4Fq& v, std::uint64_t budget = 10'000'000);

struct OrbitInfo {
  std::vector<FqElem> rep;  // coordinates
  std::uint64_t size;
  Integer stabilizer;
  std::string splitting_type;
};

std::vector<OrbitInfo> orbit_census_fq(int n, const FqField& F, std::uint64_t budget = 100'000'000);

PolyFq disc_poly(const FormFqt& f);

}  // namespace ffdens
