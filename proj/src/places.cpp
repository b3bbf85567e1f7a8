#include "ffdens/places.hpp"

#include <stdexcept>

#include "ffdens/poly_text.hpp"

namespace ffdens {

Place Place::infinity(const FqField& F) { return Place(F, true, PolyFq(F.zero())); }

Place Place::finite(const PolyFq& pi) {
  if (pi.degree() < 1 || pi.lead() != pi.zero().f->one()) throw std::invalid_argument("place polynomial must be monic");
  if (!is_irreducible(pi)) throw std::invalid_argument("place polynomial must be irreducible");
  return Place(*pi.zero().f, false, pi);
}

Integer Place::norm() const {
  Integer n = 1;
  for (int i = 0; i < degree(); ++i) n *= F_->q();
  return n;
}

std::string Place::to_string() const { return inf_ ? "inf" : format_poly(pi_); }

int poly_valuation(const PolyFq& f, const PolyFq& pi) {
  if (f.is_zero()) throw std::domain_error("valuation of zero");
  int k = 0;
  PolyFq g = f;
  for (;;) {
    auto [qq, r] = g.divmod(pi);
    if (!r.is_zero()) return k;
    g = std::move(qq);
    ++k;
  }
}

int valuation(const PolyFq& f, const Place& v) {
  if (f.is_zero()) throw std::domain_error("valuation of zero");
  return v.is_infinite() ? -f.degree() : poly_valuation(f, v.pi());
}

int valuation(const RationalFn& x, const Place& v) {
  if (x.num.is_zero() || x.den.is_zero()) throw std::domain_error("valuation of zero");
  return valuation(x.num, v) - valuation(x.den, v);
}

Integer place_norm(const Place& v) { return v.norm(); }

Rational abs_value(const RationalFn& x, const Place& v) {
  const int k = valuation(x, v);
  Integer n = v.norm(), p = 1;
  for (int i = 0; i < std::abs(k); ++i) p *= n;
  return k >= 0 ? Rational(1, 1) / Rational(p) : Rational(p);
}

bool is_square(const PolyFq& f) {
  if (f.is_zero()) return true;
  auto fac = factor(f);
  if (!f.zero().f->is_square(fac.unit)) return false;
  for (auto& pr : fac.factors)
    if (pr.second % 2) return false;
  return true;
}

std::vector<PolyFq> monic_irreducibles(const FqField& F, int d) {
  std::vector<PolyFq> out;
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= F.q();
  for (std::uint64_t c = 0; c < count; ++c) {
    std::vector<FqElem> co;
    std::uint64_t x = c;
    for (int i = 0; i < d; ++i) {
      co.push_back(F.elem(static_cast<std::uint32_t>(x % F.q())));
      x /= F.q();
    }
    co.push_back(F.one());
    PolyFq g(F.zero(), co);
    if (is_irreducible(g)) out.push_back(g);
  }
  return out;
}

namespace {
int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}
}  // namespace

Integer count_finite_places(std::uint64_t q, int d) {
  Integer s = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), q, d / e);
    s += mobius(e) * pw;
  }
  return s / d;
}

std::vector<Place> lowest_places(const FqField& F, int n) {
  std::vector<Place> out;
  for (int d = 1; (int)out.size() < n; ++d)
    for (auto& g : monic_irreducibles(F, d)) {
      if ((int)out.size() == n) break;
      out.push_back(Place::finite(g));
    }
  return out;
}

}  // namespace ffdens
