#include "ffdens/fq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ffdens {

namespace {

using IntPoly = std::vector<std::uint32_t>;  // over F_p, low to high

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IntPoly mod_poly(IntPoly a, const IntPoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  std::uint32_t linv = 1;
  for (std::uint32_t x = 1; x < p; ++x)
    if ((std::uint64_t)x * m.back() % p == 1) linv = x;
  while (a.size() > dm) {
    const std::uint32_t c = (std::uint64_t)a.back() * linv % p;
    const std::size_t sh = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[sh + i] = (a[sh + i] + (std::uint64_t)(p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_fp(const IntPoly& m, std::uint32_t p) {
  const std::size_t d = m.size() - 1;
  if (d <= 1) return d == 1;
  for (std::size_t k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      IntPoly g(k + 1, 0);
      std::uint64_t x = c;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = x % p;
        x /= p;
      }
      g[k] = 1;
      if (mod_poly(m, g, p).empty()) return false;
    }
  }
  return true;
}

std::mutex g_mu;
std::map<std::vector<std::uint32_t>, std::unique_ptr<FqField>>& registry() {
  static std::map<std::vector<std::uint32_t>, std::unique_ptr<FqField>> r;
  return r;
}

}  // namespace

FqField::FqField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("characteristic must be an odd prime");
  if (mod_.size() < 2 || mod_.back() != 1) throw std::invalid_argument("modulus must be monic of degree >= 1");
  e_ = static_cast<std::uint32_t>(mod_.size() - 1);
  if (!irreducible_fp(mod_, p)) throw std::invalid_argument("modulus is not irreducible");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e_; ++i) q *= p;
  if (q > 1024) throw std::invalid_argument("field too large for table arithmetic (q <= 1024)");
  q_ = static_cast<std::uint32_t>(q);

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  tr_.resize(q_);
  std::vector<IntPoly> dig(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    IntPoly d(e_);
    std::uint32_t x = a;
    for (std::uint32_t i = 0; i < e_; ++i) {
      d[i] = x % p;
      x /= p;
    }
    dig[a] = d;
  }
  auto encode = [&](const IntPoly& d) {
    std::uint32_t c = 0;
    for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
    return c;
  };
  for (std::uint32_t a = 0; a < q_; ++a) {
    IntPoly n(e_);
    for (std::uint32_t i = 0; i < e_; ++i) n[i] = (p - dig[a][i]) % p;
    neg_[a] = encode(n);
    for (std::uint32_t b = 0; b < q_; ++b) {
      IntPoly s(e_);
      for (std::uint32_t i = 0; i < e_; ++i) s[i] = (dig[a][i] + dig[b][i]) % p;
      add_[a * q_ + b] = encode(s);
      IntPoly pr(2 * e_, 0);
      for (std::uint32_t i = 0; i < e_; ++i)
        for (std::uint32_t j = 0; j < e_; ++j) pr[i + j] = (pr[i + j] + dig[a][i] * dig[b][j]) % p;
      IntPoly r = mod_poly(pr, mod_, p);
      r.resize(e_, 0);
      mul_[a * q_ + b] = encode(r);
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a)
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = b;
        break;
      }
  // Trace: sum of Frobenius conjugates, lands in F_p (codes 0..p-1).
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t s = 0, x = a;
    for (std::uint32_t i = 0; i < e_; ++i) {
      s = add_[s * q_ + x];
      std::uint32_t y = 1;
      for (std::uint32_t k = 0; k < p; ++k) y = mul_[y * q_ + x];
      x = y;
    }
    tr_[a] = s;
  }
  sq_.assign(q_, 0);
  sqrt_.assign(q_, 0);
  for (std::uint32_t a = q_; a-- > 0;) {
    const std::uint32_t s = mul_[a * q_ + a];
    sq_[s] = 1;
    sqrt_[s] = a;
  }
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = g, ord = 1;
    while (x != 1) {
      x = mul_[x * q_ + g];
      ++ord;
    }
    if (ord == q_ - 1) {
      prim_ = g;
      break;
    }
  }
}

const FqField& FqField::with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  std::vector<std::uint32_t> key = modulus;
  key.push_back(p);
  std::lock_guard<std::mutex> lk(g_mu);
  auto& r = registry();
  auto it = r.find(key);
  if (it != r.end()) return *it->second;
  std::unique_ptr<FqField> f(new FqField(p, modulus));
  const FqField& ref = *f;
  r.emplace(key, std::move(f));
  return ref;
}

const FqField& FqField::get(std::uint32_t p, std::uint32_t e) {
  if (e == 0) throw std::invalid_argument("extension degree must be >= 1");
  if (e == 1) return with_modulus(p, {0, 1});
  if (!is_prime(p) || p == 2) throw std::invalid_argument("characteristic must be an odd prime");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    IntPoly m(e + 1, 0);
    std::uint64_t x = c;
    for (std::uint32_t i = 0; i < e; ++i) {
      m[i] = x % p;
      x /= p;
    }
    m[e] = 1;
    if (m[0] != 0 && irreducible_fp(m, p)) return with_modulus(p, m);
  }
  throw std::logic_error("no irreducible polynomial found");
}

const FqField& FqField::of_order(std::uint32_t q) {
  if (q < 3) throw std::invalid_argument("q must be an odd prime power");
  for (std::uint32_t p = 3; p <= q; p += 2) {
    if (q % p) continue;
    std::uint32_t e = 0, x = q;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (x != 1 || !is_prime(p)) break;
    return get(p, e);
  }
  throw std::invalid_argument("q must be an odd prime power");
}

FqElem FqField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return elem(static_cast<std::uint32_t>(r));
}

std::uint32_t FqField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("division by zero in F_q");
  return inv_[a];
}

bool FqField::sqrt(const FqElem& x, FqElem& out) const {
  if (!sq_[x.v]) return false;
  out = elem(sqrt_[x.v]);
  return true;
}

std::vector<std::uint32_t> FqField::digits(std::uint32_t code) const {
  std::vector<std::uint32_t> d(e_);
  for (std::uint32_t i = 0; i < e_; ++i) {
    d[i] = code % p_;
    code /= p_;
  }
  return d;
}

std::string FqField::to_string(const FqElem& x) const {
  if (e_ == 1) return std::to_string(x.v);
  auto d = digits(x.v);
  std::string s;
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (d[i] == 0) continue;
    std::string term;
    if (i == 0)
      term = std::to_string(d[i]);
    else {
      term = (d[i] == 1 ? "" : std::to_string(d[i]) + "*") + "u";
      if (i > 1) term += "^" + std::to_string(i);
    }
    s += (s.empty() ? "" : "+") + term;
  }
  return s.empty() ? "0" : s;
}

FqElem FqElem::operator+(const FqElem& o) const { return {f, f->add(v, o.v)}; }
FqElem FqElem::operator-(const FqElem& o) const { return {f, f->sub(v, o.v)}; }
FqElem FqElem::operator*(const FqElem& o) const { return {f, f->mul(v, o.v)}; }
FqElem FqElem::operator/(const FqElem& o) const { return {f, f->mul(v, f->inv(o.v))}; }
FqElem FqElem::operator-() const { return {f, f->neg(v)}; }
FqElem FqElem::inv() const { return {f, f->inv(v)}; }
FqElem FqElem::pow(std::uint64_t k) const {
  FqElem r{f, 1}, b = *this;
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

}  // namespace ffdens
