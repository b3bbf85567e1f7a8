// Factorization over finite fields: squarefree, distinct-degree and
// equal-degree (Cantor-Zassenhaus, odd characteristic) splitting.
#pragma once

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ffdens/residue.hpp"

namespace ffdens {

template <class T>
struct Factorization {
  T unit;
  std::vector<std::pair<Poly<T>, int>> factors;  // monic irreducible, multiplicity
};

namespace detail {

template <class T>
Poly<T> pth_root(const Poly<T>& c) {
  const T z = c.zero();
  const std::uint32_t p = ff_char(z);
  const std::uint64_t n = ff_order(z);
  std::vector<T> r;
  for (int i = 0; i <= c.degree(); i += p) {
    T a = c[i], x = ring_int(z, 1);
    // a^(n/p) is the p-th root of a.
    std::uint64_t e = n / p;
    T b = a;
    while (e) {
      if (e & 1) x = x * b;
      b = b * b;
      e >>= 1;
    }
    r.push_back(x);
  }
  return Poly<T>(z, std::move(r));
}

template <class T>
void squarefree(const Poly<T>& f, int mult, std::vector<std::pair<Poly<T>, int>>& out) {
  if (f.degree() <= 0) return;
  const Poly<T> one = Poly<T>::constant(f.one());
  Poly<T> c = poly_gcd(f, f.derivative());
  Poly<T> w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly<T> y = poly_gcd(w, c);
    Poly<T> z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree(pth_root(c.monic()), mult * static_cast<int>(ff_char(f.zero())), out);
}

template <class T>
Poly<T> random_poly(const T& z, int deg, std::mt19937_64& rng) {
  const std::uint64_t n = ff_order(z);
  std::vector<T> c;
  for (int i = 0; i < deg; ++i) c.push_back(ff_element(z, rng() % n));
  return Poly<T>(z, std::move(c));
}

template <class T>
void equal_degree(const Poly<T>& g, int d, std::mt19937_64& rng, std::vector<Poly<T>>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const T z = g.zero();
  Integer e = 1;
  for (int i = 0; i < d; ++i) e *= static_cast<unsigned long>(ff_order(z));
  e = (e - 1) / 2;
  const Poly<T> one = Poly<T>::constant(g.one());
  for (;;) {
    Poly<T> a = random_poly(z, g.degree(), rng);
    if (a.degree() <= 0) continue;
    Poly<T> h = poly_gcd(a, g);
    if (h.degree() <= 0) h = poly_gcd(poly_powmod(a, e, g) - one, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree((g / h).monic(), d, rng, out);
      return;
    }
  }
}

}  // namespace detail

// t^(N^k) mod g where N is the field size.
template <class T>
Poly<T> frobenius_power(const Poly<T>& g, int k) {
  Poly<T> h = Poly<T>::var(g.zero()) % g;
  const Integer n = static_cast<unsigned long>(ff_order(g.zero()));
  for (int i = 0; i < k; ++i) h = poly_powmod(h, n, g);
  return h;
}

// Rabin's test.
template <class T>
bool is_irreducible(const Poly<T>& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly<T> g = f.monic();
  const Poly<T> x = Poly<T>::var(g.zero());
  if ((frobenius_power(g, n) - x) % g != Poly<T>(g.zero())) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r) continue;
    bool prime = true;
    for (int d = 2; d * d <= r; ++d)
      if (r % d == 0) prime = false;
    if (!prime) continue;
    if (poly_gcd(frobenius_power(g, n / r) - x, g).degree() != 0) return false;
  }
  return true;
}

template <class T>
Factorization<T> factor(const Poly<T>& f, std::uint64_t seed = 1) {
  if (f.is_zero()) throw std::invalid_argument("zero input");
  Factorization<T> res{f.lead(), {}};
  if (f.degree() == 0) return res;
  std::vector<std::pair<Poly<T>, int>> sf;
  detail::squarefree(f.monic(), 1, sf);
  std::mt19937_64 rng(seed);
  const Poly<T> x = Poly<T>::var(f.zero());
  for (auto& [g0, m] : sf) {
    Poly<T> g = g0;
    Poly<T> h = x % g;
    const Integer n = static_cast<unsigned long>(ff_order(f.zero()));
    for (int d = 1; g.degree() >= 2 * d; ++d) {
      h = poly_powmod(h, n, g);
      Poly<T> part = poly_gcd(h - x, g);
      if (part.degree() > 0) {
        std::vector<Poly<T>> pieces;
        detail::equal_degree(part, d, rng, pieces);
        for (auto& pc : pieces) res.factors.push_back({pc, m});
        g = (g / part).monic();
        h = h % g;
      }
    }
    if (g.degree() > 0) res.factors.push_back({g.monic(), m});
  }
  // Merge equal factors (squarefree pieces can repeat after p-th roots).
  std::vector<std::pair<Poly<T>, int>> merged;
  for (auto& pr : res.factors) {
    bool found = false;
    for (auto& mm : merged)
      if (mm.first == pr.first) {
        mm.second += pr.second;
        found = true;
      }
    if (!found) merged.push_back(pr);
  }
  res.factors = std::move(merged);
  return res;
}

// Roots in the coefficient field, with multiplicity.
template <class T>
std::vector<std::pair<T, int>> roots(const Poly<T>& f) {
  std::vector<std::pair<T, int>> r;
  for (auto& [g, m] : factor(f).factors)
    if (g.degree() == 1) r.push_back({-g[0], m});
  return r;
}

}  // namespace ffdens
