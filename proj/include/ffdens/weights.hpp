// Torus weights of the coordinates of V_3 and V_4 and their partial order.
#pragma once

#include <string>
#include <vector>

namespace ffdens {

struct WeightVector {
  int lambda = 1;
  std::vector<int> s;  // exponents of s_1..s_r
  bool operator==(const WeightVector& o) const { return lambda == o.lambda && s == o.s; }
};

const std::vector<std::string>& coordinate_names(int n);
WeightVector torus_weight(int n, const std::string& coord);
bool weight_leq(int n, const std::string& alpha, const std::string& beta);
// Modular character used in the cusp estimates (s-exponents only).
std::vector<int> delta_character(int n);
// Stored for reference only; the degree-5 poset is not built.
std::vector<int> delta_character_degree5();

}  // namespace ffdens
