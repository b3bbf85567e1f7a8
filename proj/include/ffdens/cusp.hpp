// Cusp certificates: order ideals of the coordinate weight poset and
// nonnegative exponents k making every torus exponent negative.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffdens/ring.hpp"

namespace ffdens {

using CoordSet = std::vector<std::string>;  // kept in coordinate order

const std::string& alpha0(int n);
std::vector<CoordSet> order_closed_subsets(int n);
CoordSet min_weights(int n, const CoordSet& U);
bool is_order_closed(int n, const CoordSet& U);

struct Certificate {
  CoordSet U;
  std::map<std::string, Rational> k;
  std::vector<Rational> exponents;  // s_1..s_r
  Rational lambda_exponent;
};

// s-exponents of (prod_{U} w^-1)(prod w^k) delta_n, and the lambda exponent.
std::vector<Rational> certificate_exponents(int n, const CoordSet& U, const std::map<std::string, Rational>& k);
Rational certificate_lambda(const CoordSet& U, const std::map<std::string, Rational>& k);
// Recomputes everything from scratch; k may be supported on any coordinates.
bool verify_certificate(int n, const Certificate& c);

struct CertifyResult {
  std::optional<Certificate> cert;
  // When infeasible: y >= 0, y != 0 over the rows (s_1..s_r, sum) with
  // M^T y >= 0 and h.y <= 0, so no k >= 0 satisfies M k < h.
  std::vector<Rational> dual;
};
CertifyResult certify(int n, const CoordSet& U);
bool verify_infeasibility(int n, const CoordSet& U, const std::vector<Rational>& y);

struct ReducibilityFact {
  CoordSet ideal;
  std::string reason;
};
std::vector<ReducibilityFact> load_facts(const std::string& path);
std::vector<ReducibilityFact> default_facts_v4();

struct CuspEntry {
  CoordSet U;
  std::string disposition;  // "nongeneric", "reducible", "certified", "failed"
  int fact = -1;
  std::optional<Certificate> cert;
};
struct CuspReport {
  int n = 4;
  std::vector<CuspEntry> entries;
  bool all_disposed = true;
};
CuspReport certify_all(int n, const std::vector<ReducibilityFact>& facts, int threads = 1);

std::string format_set(const CoordSet& U);

}  // namespace ffdens
