// Finite fields F_q, q = p^e odd, with table arithmetic.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ffdens {

class FqField;

// Element of F_q. Code is sum c_i p^i for c_0 + c_1 u + ... + c_{e-1} u^{e-1}.
struct FqElem {
  const FqField* f = nullptr;
  std::uint32_t v = 0;

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator/(const FqElem& o) const;
  FqElem operator-() const;
  FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
  FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
  FqElem& operator*=(const FqElem& o) { return *this = *this * o; }
  bool operator==(const FqElem& o) const { return v == o.v; }
  bool operator!=(const FqElem& o) const { return v != o.v; }
  bool operator<(const FqElem& o) const { return v < o.v; }
  bool is_zero() const { return v == 0; }
  FqElem inv() const;
  FqElem pow(std::uint64_t k) const;
};

class FqField {
 public:
  // Cached instance with the first monic irreducible modulus of degree e
  // (in code order). Instances live for the whole program.
  static const FqField& get(std::uint32_t p, std::uint32_t e = 1);
  // q must be an odd prime power.
  static const FqField& of_order(std::uint32_t q);
  // Custom modulus, coefficients low to high, monic of degree e.
  static const FqField& with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  FqElem elem(std::uint32_t code) const { return FqElem{this, code}; }
  FqElem zero() const { return elem(0); }
  FqElem one() const { return elem(1); }
  FqElem from_int(long long n) const;
  FqElem gen() const { return elem(e_ > 1 ? p_ : 0); }  // u, only meaningful for e > 1
  FqElem primitive() const { return elem(prim_); }
  bool is_square(const FqElem& x) const { return sq_[x.v] != 0; }
  // Square root when it exists (smallest code), else returns false.
  bool sqrt(const FqElem& x, FqElem& out) const;
  // Trace to F_p, as an integer 0..p-1.
  std::uint32_t trace(const FqElem& x) const { return tr_[x.v]; }
  // Digits over F_p.
  std::vector<std::uint32_t> digits(std::uint32_t code) const;
  std::string to_string(const FqElem& x) const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint32_t inv(std::uint32_t a) const;

 private:
  FqField(std::uint32_t p, std::vector<std::uint32_t> modulus);
  std::uint32_t p_, e_, q_, prim_ = 1;
  std::vector<std::uint32_t> mod_;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_, tr_;
  std::vector<std::uint8_t> sq_;
  std::vector<std::uint16_t> sqrt_;
};

}  // namespace ffdens
