#include "ffdens/weights.hpp"

#include <stdexcept>

namespace ffdens {

const std::vector<std::string>& coordinate_names(int n) {
  static const std::vector<std::string> v3 = {"a", "b", "c", "d"};
  static const std::vector<std::string> v4 = {"a11", "a12", "a13", "a22", "a23", "a33",
                                              "b11", "b12", "b13", "b22", "b23", "b33"};
  if (n == 3) return v3;
  if (n == 4) return v4;
  throw std::invalid_argument("unsupported degree: " + std::to_string(n));
}

WeightVector torus_weight(int n, const std::string& coord) {
  if (n == 3) {
    // diag(s^-1, s): x^{3-i} y^i picks up s^{-(3-i)} s^i.
    const auto& names = coordinate_names(3);
    for (int i = 0; i < 4; ++i)
      if (names[i] == coord) return {1, {2 * i - 3}};
  } else if (n == 4) {
    if (coord.size() == 3 && (coord[0] == 'a' || coord[0] == 'b')) {
      const int i = coord[1] - '1', j = coord[2] - '1';
      if (i >= 0 && i < 3 && j >= i && j < 3) {
        // t_1 = s2^-2 s3^-1, t_2 = s2 s3^-1, t_3 = s2 s3^2.
        static const int e2[3] = {-2, 1, 1}, e3[3] = {-1, -1, 2};
        return {1, {coord[0] == 'a' ? -1 : 1, e2[i] + e2[j], e3[i] + e3[j]}};
      }
    }
  } else {
    throw std::invalid_argument("unsupported degree: " + std::to_string(n));
  }
  throw std::invalid_argument("unknown coordinate: " + coord);
}

bool weight_leq(int n, const std::string& alpha, const std::string& beta) {
  const auto wa = torus_weight(n, alpha), wb = torus_weight(n, beta);
  for (std::size_t i = 0; i < wa.s.size(); ++i)
    if (wb.s[i] - wa.s[i] < 0) return false;
  return true;
}

std::vector<int> delta_character(int n) {
  if (n == 3) return {-2};
  if (n == 4) return {-2, -6, -6};
  throw std::invalid_argument("unsupported degree: " + std::to_string(n));
}

std::vector<int> delta_character_degree5() { return {-8, -12, -8, -20, -30, -30, -20}; }

}  // namespace ffdens
