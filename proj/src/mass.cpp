#include "ffdens/mass.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>

#include "ffdens/places.hpp"
#include "ffdens/poly_text.hpp"

namespace ffdens {

Integer partitions_at_most(long k, long m) {
  if (k < 0 || m < 0) return 0;
  if (k == 0) return 1;
  if (m == 0) return 0;
  static std::mutex mu;
  static std::map<std::pair<long, long>, Integer> memo;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find({k, m});
    if (it != memo.end()) return it->second;
  }
  // Either fewer than m parts, or remove one from each of m parts.
  Integer r = partitions_at_most(k, m - 1) + partitions_at_most(k - m, m);
  std::lock_guard<std::mutex> lk(mu);
  memo[{k, m}] = r;
  return r;
}

std::vector<Integer> euler_factor(int n) {
  if (n < 2 || n > 5) throw std::invalid_argument("euler_factor: n must be in 2..5");
  std::vector<Integer> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = partitions_at_most(k, n - k) - partitions_at_most(k - 1, n - k + 1);
  return c;
}

std::vector<Integer> mass_series(int n) {
  std::vector<Integer> c(n);
  for (int k = 0; k < n; ++k) c[k] = partitions_at_most(k, n - k);
  return c;
}

namespace {

Rational eval_poly(const std::vector<Integer>& c, const Rational& x) {
  Rational r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

Rational local_mass_nonarch(int n, const Integer& Np) {
  if (Np < 2) throw std::invalid_argument("norm must be at least 2");
  Rational x(1, Np);
  x.canonicalize();
  return (1 - x) * eval_poly(mass_series(n), x);
}

Integer sn_involutions(int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  Integer a = 1, b = 1;  // a(0), a(1)
  if (n == 0) return 1;
  for (int k = 2; k <= n; ++k) {
    Integer c = b + (k - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

Rational local_mass_real(int n) {
  Rational r(sn_involutions(n), factorial(n));
  r.canonicalize();
  return r;
}

Rational local_mass_complex(int n) {
  Rational r(1, factorial(n));
  r.canonicalize();
  return r;
}

TameMassReport tame_local_mass_oracle(int n, const Integer& q0) {
  if (n < 1 || n > 5) throw std::invalid_argument("tame oracle: n must be in 1..5");
  if (q0 < 2) throw std::invalid_argument("residue field size must be at least 2");
  Integer p = 0;
  for (Integer d = 2; d * d <= q0; ++d)
    if (q0 % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q0;
  {
    Integer x = q0;
    while (x % p == 0) x /= p;
    if (x != 1) throw std::invalid_argument("residue field size must be a prime power");
  }
  for (int e = 2; e <= n; ++e)
    if (e % p == 0) throw std::invalid_argument("wild ramification out of scope");

  struct Component {
    int f, e;
    Integer aut;
  };
  std::vector<Component> comps;
  for (int f = 1; f <= n; ++f)
    for (int e = 1; f * e <= n; ++e) {
      const Integer Q = ipow(q0, f);
      Integer g;
      const Integer em1 = Q - 1;
      mpz_gcd_ui(g.get_mpz_t(), em1.get_mpz_t(), e);
      const long G = g.get_si();
      const long q0m = Integer(q0 % G).get_si();
      // Kummer classes j in Z/G up to Frobenius j -> q0 j.
      std::vector<bool> seen(G, false);
      for (long j = 0; j < G; ++j) {
        if (seen[j]) continue;
        long x = j;
        do {
          seen[x] = true;
          x = (x * q0m) % G;
        } while (x != j);
        long fixers = 0, y = j;
        for (int i = 0; i < f; ++i) {
          if (y == j) ++fixers;
          y = (y * q0m) % G;
        }
        comps.push_back({f, e, g * fixers});
      }
    }

  TameMassReport rep{{}, 0, 0};
  std::vector<int> mult(comps.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (left == 0) {
      Integer aut = 1;
      int dv = 0;
      std::vector<std::string> parts;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (!mult[c]) continue;
        aut *= ipow(comps[c].aut, mult[c]) * factorial(mult[c]);
        dv += mult[c] * comps[c].f * (comps[c].e - 1);
        for (int k = 0; k < mult[c]; ++k)
          parts.push_back(std::to_string(comps[c].f) + (comps[c].e > 1 ? "^" + std::to_string(comps[c].e) : ""));
      }
      std::sort(parts.begin(), parts.end(), std::greater<>());
      std::string shape = "(";
      for (std::size_t k = 0; k < parts.size(); ++k) shape += (k ? " " : "") + parts[k];
      shape += ")";
      rep.algebras.push_back({shape, dv, aut});
      Rational inv(1, aut);
      inv.canonicalize();
      rep.sum_inv_aut += inv;
      Rational dd(1, ipow(q0, dv));
      dd.canonicalize();
      rep.sum_disc_over_aut += dd * inv;
      return;
    }
    if (i == comps.size()) return;
    const int deg = comps[i].f * comps[i].e;
    for (int m = 0; m * deg <= left; ++m) {
      mult[i] = m;
      rec(i + 1, left - m * deg);
    }
    mult[i] = 0;
  };
  rec(0, n);
  return rep;
}

RationalInterval interval_pow(const RationalInterval& x, const Integer& k, unsigned bits) {
  if (x.lo() <= 0) throw std::domain_error("interval_pow expects positive intervals");
  RationalInterval r(Rational(1)), b = x.rounded(bits);
  Integer e = k;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * b).rounded(bits);
    b = (b * b).rounded(bits);
    e >>= 1;
  }
  return r;
}

std::vector<long> primes_up_to(long n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<long> ps;
  for (long i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    ps.push_back(i);
    for (long j = i * i; j <= n; j += i) comp[j] = true;
  }
  return ps;
}

namespace {

Integer partition_number(int n) { return partitions_at_most(n, n); }

// Mass at a place in S.
Rational s_place_mass(int n, const LocalSpec* spec, const Integer& Np, bool& wild_used, std::vector<std::string>& notes) {
  if (spec && spec->mode == LocalMode::ExplicitList) {
    Rational s = 0;
    for (auto& e : spec->entries) s += Rational(e.multiplicity) / Rational(e.aut_order);
    return s;
  }
  try {
    return tame_local_mass_oracle(n, Np).sum_inv_aut;
  } catch (const std::invalid_argument& err) {
    if (spec && spec->mode == LocalMode::TameEnumerated) throw;
    // Wild: the tame count generalizes to p(n) (sum over (f,e) types of 1/f).
    wild_used = true;
    notes.push_back("mass at a wild place in S taken as the partition number p(n)");
    return Rational(partition_number(n));
  }
}

// Mass at a place outside S.
Rational outside_mass(int n, const LocalSpec& spec, const Integer& Np) {
  Rational x(1, Np);
  x.canonicalize();
  if (spec.mode == LocalMode::Full) return eval_poly(euler_factor(n), x);
  if (spec.mode == LocalMode::TameEnumerated) return (1 - x) * tame_local_mass_oracle(n, Np).sum_disc_over_aut;
  Rational s = 0;
  for (auto& e : spec.entries) {
    Rational d(1, ipow(Np, e.disc_valuation));
    d.canonicalize();
    s += d * Rational(e.multiplicity) / Rational(e.aut_order);
  }
  return (1 - x) * s;
}

Rational tail_constant(int n) {
  Rational c = 0;
  auto e = euler_factor(n);
  for (std::size_t k = 2; k < e.size(); ++k) c += abs(e[k]);
  return c;
}

}  // namespace

DensityResult predicted_density(int n, const FieldDescriptor& field, const std::vector<std::string>& S,
                                const std::vector<LocalSpec>& specs, long D, unsigned bits) {
  if (n < 2 || n > 5) throw std::invalid_argument("predicted_density: n must be in 2..5");
  if (D < 1) throw std::invalid_argument("truncation must be >= 1");
  DensityResult res;
  auto find_spec = [&](const std::string& id) -> const LocalSpec* {
    for (auto& s : specs)
      if (s.place == id) return &s;
    return nullptr;
  };
  if (std::find(S.begin(), S.end(), "inf") == S.end()) throw std::invalid_argument("S must contain the infinite place");
  for (auto& s : specs)
    if (s.mode == LocalMode::ExplicitList && s.entries.empty())
      throw std::invalid_argument("non-acceptable spec: empty explicit list at " + s.place);
  const Rational cn = tail_constant(n);

  if (field.kind == FieldKind::FunctionField) {
    const std::uint64_t q = field.q;
    const FqField& F = FqField::of_order(static_cast<std::uint32_t>(q));
    // Euler product over all finite places of degree <= D.
    RationalInterval prod(Rational(1));
    const auto E = euler_factor(n);
    for (long d = 1; d <= D; ++d) {
      Rational x(1, ipow(Integer(static_cast<unsigned long>(q)), d));
      x.canonicalize();
      prod = (prod * interval_pow(RationalInterval(eval_poly(E, x)), count_finite_places(q, d), bits)).rounded(bits);
    }
    Rational T = cn / (ipow(Integer(static_cast<unsigned long>(q)), D) * (q - 1));
    if (T >= 1) throw std::invalid_argument("truncation too small for a tail enclosure");
    prod = (prod * RationalInterval(1 - T, 1 / (1 - T))).rounded(bits);

    Rational cres = Rational(1) / (1 - Rational(1, q));
    Rational special = 1;
    bool all_full = true;
    for (auto& id : S) {
      Integer Np = q;
      if (id != "inf") {
        Place v = Place::finite(parse_poly(F, id).monic());
        Np = v.norm();
        Rational x(1, Np);
        x.canonicalize();
        if (v.degree() <= D) special /= eval_poly(E, x);
        all_full = false;
      }
      cres *= 1 - Rational(1) / Rational(Np);
      const LocalSpec* sp = find_spec(id);
      if (sp && sp->mode != LocalMode::Full) all_full = false;
      special *= s_place_mass(n, sp, Np, res.wild_model_used, res.notes);
    }
    for (auto& sp : specs) {
      if (std::find(S.begin(), S.end(), sp.place) != S.end()) continue;
      if (sp.place == "inf") throw std::invalid_argument("the infinite place must lie in S");
      Place v = Place::finite(parse_poly(F, sp.place).monic());
      if (sp.mode == LocalMode::Full) continue;
      all_full = false;
      Rational x(1, v.norm());
      x.canonicalize();
      if (v.degree() <= D) special /= eval_poly(E, x);
      special *= outside_mass(n, sp, v.norm());
    }
    res.value = (prod * RationalInterval(cres * special)).rounded(bits);
    if (all_full && S.size() == 1 && (n == 2 || n == 3)) {
      // prod over finite places of (1 - N^{-n}) = 1 - q^{1-n}.
      Rational z = 1 - Rational(1) / Rational(ipow(Integer(static_cast<unsigned long>(q)), n - 1));
      res.exact_closed_form = cres * special * z;
    }
    return res;
  }

  // Number fields: only F = Q is supported (the primes must be enumerable).
  RationalInterval residue(Rational(1));
  int r1 = 1, r2 = 0;
  if (field.kind == FieldKind::NumberFieldInput) {
    if (field.r1 != 1 || field.r2 != 0) throw std::invalid_argument("unsupported field kind: general number fields");
    residue = field.residue;
    r1 = field.r1;
    r2 = field.r2;
  }
  for (auto& id : S)
    if (id != "inf") throw std::invalid_argument("unsupported: finite places in S over Q");
  const auto E = euler_factor(n);
  RationalInterval prod(Rational(1));
  for (long p : primes_up_to(D)) {
    Rational x(1, p);
    const LocalSpec* sp = find_spec(std::to_string(p));
    Rational m = sp ? outside_mass(n, *sp, Integer(p)) : eval_poly(E, x);
    prod = (prod * RationalInterval(m)).rounded(bits);
  }
  Rational T = cn / D;
  if (T >= 1) throw std::invalid_argument("truncation too small for a tail enclosure");
  prod = (prod * RationalInterval(1 - T, 1 / (1 - T))).rounded(bits);
  Rational arch = 1;
  const LocalSpec* sinf = find_spec("inf");
  if (sinf && sinf->mode == LocalMode::ExplicitList) {
    arch = s_place_mass(n, sinf, Integer(2), res.wild_model_used, res.notes);
  } else {
    for (int i = 0; i < r1; ++i) arch *= local_mass_real(n);
    for (int i = 0; i < r2; ++i) arch *= local_mass_complex(n);
  }
  res.value = (prod * residue * RationalInterval(Rational(1, 2) * arch)).rounded(bits);
  return res;
}

}  // namespace ffdens
