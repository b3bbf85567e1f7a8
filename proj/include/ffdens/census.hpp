// Orbit census of binary cubic forms over F_q[t] under GL_2(F_q[t]).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ffdens/interval.hpp"
#include "ffdens/ring_corresp.hpp"

namespace ffdens {

struct CensusConfig {
  std::uint32_t q = 3;
  int B = 1;                  // coefficient degree bound
  int threads = 1;
  int shards = 0;             // 0: 16 per thread
  int report_max_m = -1;      // -1: 2(B - 1)
  std::uint64_t budget = 4'000'000'000ULL;  // forms in the box
  std::uint64_t vertex_cap = 200'000;       // tree search limit per form
  long density_D = 60;        // Euler product truncation when no closed form
};

// q^{4(B+1)}; throws std::length_error past the budget with the estimate in the message.
std::uint64_t box_size(const CensusConfig& cfg);

// Every form with coefficient degrees <= B and nonzero disc, in index order.
// Returns the number of forms visited (the box size).
std::uint64_t enumerate_forms(const CensusConfig& cfg, const std::function<void(const FormFqt&)>& fn);

// Total order: coefficients a, b, c, d in turn, each by degree then digits high to low.
bool form_less(const FormFqt& f, const FormFqt& g);

// Minimal coefficient height over the orbit, then least form among those
// minimizers. Throws std::runtime_error if the search exceeds vertex_cap.
FormFqt canonical_orbit_rep(const FormFqt& f, std::uint64_t vertex_cap = 200'000);

struct CanonicalCheck {
  bool canonical = false;
  bool overflow = false;
  std::uint64_t vertices = 0;
};
// Same as canonical_orbit_rep(f) == f, with early exits.
CanonicalCheck is_canonical(const FormFqt& f, std::uint64_t vertex_cap = 200'000);

// Max coefficient degree minimized over the orbit.
int reduced_height(const FormFqt& f, std::uint64_t vertex_cap = 200'000);

// Irreducible over F_q(t) and disc not a square.
bool is_generic(const FormFqt& f);

struct CensusRecord {
  FormFqt form;
  PolyFq disc;
  int m = 0;
  bool maximal = false;
  bool generic = false;
};
CensusRecord make_record(const FormFqt& f);

struct CensusBin {
  std::uint64_t raw = 0;              // orbits with disc degree m
  std::uint64_t generic_maximal = 0;
  std::uint64_t nongeneric = 0;
  std::uint64_t nonmaximal = 0;
};

struct CensusResult {
  CensusConfig cfg;
  std::uint64_t stream_length = 0;   // box size
  std::uint64_t visited = 0;         // forms with normalized leading coefficient
  std::uint64_t survivors = 0;       // passed the GL_2(F_q) minimality filter
  std::uint64_t overflow = 0;
  std::map<int, CensusBin> bins;     // every m in [0, 4B]
  RationalInterval predicted{Rational(0)};
  std::vector<CensusRecord> records;  // canonical reps in index order (when kept)
  int report_max_m() const { return cfg.report_max_m >= 0 ? cfg.report_max_m : 2 * (cfg.B - 1); }
  Rational ratio(int m) const;
};

CensusResult census(const CensusConfig& cfg, bool keep_records = false);

// CSV with header m;raw_count;generic_maximal_count;ratio;predicted_lo;predicted_hi
std::string census_csv(const CensusResult& r, int max_m = -1);

// Bins m <= max_m that agree between two censuses (smaller B first).
std::vector<int> saturated_bins(const CensusResult& small, const CensusResult& large, int max_m);

struct TailRow {
  long M = 0;
  std::uint64_t total = 0;  // (orbit, place) pairs with N(pi) > M and pi^2 | disc
  std::uint64_t weak = 0;
  std::uint64_t strong = 0;
};
struct TailReport {
  std::vector<TailRow> rows;
  std::uint64_t flagged = 0;      // (orbit, place) pairs with pi^2 | disc, any norm
  std::uint64_t mismatches = 0;   // class disagrees with the splitting type
  bool decreasing() const;
};
// Runs over the canonical reps (orbits) of the census box.
TailReport tail_measurement(const CensusConfig& cfg, const std::vector<long>& Ms);

}  // namespace ffdens
