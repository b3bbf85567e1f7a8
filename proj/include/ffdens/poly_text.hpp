// Text grammar for elements of F_q[t]: "t^3+2*t+1", "(1+2*u)*t^2-u".
// u is the generator of F_q over F_p (only when q is not prime).
#pragma once

#include <string>

#include "ffdens/poly.hpp"

namespace ffdens {

PolyFq parse_poly(const FqField& F, const std::string& text);
std::string format_poly(const PolyFq& f);
FqElem parse_fq(const FqField& F, const std::string& text);

}  // namespace ffdens
