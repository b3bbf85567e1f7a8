// The rings F_q[t]/(pi^k); a field when k = 1.
#pragma once

#include <memory>

#include "ffdens/poly.hpp"

namespace ffdens {

struct ResidueCtx {
  PolyFq prime;    // monic irreducible pi
  int k = 1;       // exponent
  PolyFq modulus;  // pi^k
  ResidueCtx(PolyFq pi, int kk) : prime(std::move(pi)), k(kk), modulus(poly_pow(prime, kk)) {}
};

class Residue {
 public:
  Residue(std::shared_ptr<const ResidueCtx> ctx, const PolyFq& v) : ctx_(std::move(ctx)), v_(v % ctx_->modulus) {}
  static Residue make(std::shared_ptr<const ResidueCtx> ctx, const PolyFq& v) { return Residue(std::move(ctx), v); }

  const PolyFq& value() const { return v_; }
  const std::shared_ptr<const ResidueCtx>& ctx() const { return ctx_; }

  Residue operator+(const Residue& o) const { return Residue(ctx_, v_ + o.v_, 0); }
  Residue operator-(const Residue& o) const { return Residue(ctx_, v_ - o.v_, 0); }
  Residue operator*(const Residue& o) const { return Residue(ctx_, v_ * o.v_); }
  Residue operator-() const { return Residue(ctx_, -v_, 0); }
  bool operator==(const Residue& o) const { return v_ == o.v_; }
  bool operator!=(const Residue& o) const { return !(v_ == o.v_); }

 private:
  Residue(std::shared_ptr<const ResidueCtx> ctx, PolyFq v, int) : ctx_(std::move(ctx)), v_(std::move(v)) {}
  std::shared_ptr<const ResidueCtx> ctx_;
  PolyFq v_;
};

inline Residue ring_int(const Residue& proto, long long n) {
  return Residue(proto.ctx(), PolyFq::constant(ring_int(proto.value().zero(), n)));
}
inline std::optional<Residue> ring_unit_inverse(const Residue& x) {
  auto [g, s, t] = poly_xgcd(x.value(), x.ctx()->modulus);
  if (g.degree() != 0) return std::nullopt;
  return Residue(x.ctx(), s);
}

inline std::shared_ptr<const ResidueCtx> residue_ctx(const PolyFq& pi, int k = 1) {
  return std::make_shared<const ResidueCtx>(pi.monic(), k);
}

// Finite-field interface used by generic factorization.
inline std::uint64_t ff_order(const FqElem& x) { return x.f->q(); }
inline std::uint32_t ff_char(const FqElem& x) { return x.f->p(); }
inline FqElem ff_element(const FqElem& proto, std::uint64_t i) { return proto.f->elem(static_cast<std::uint32_t>(i)); }

inline std::uint64_t ff_order(const Residue& x) {
  std::uint64_t n = 1;
  const std::uint64_t q = x.value().zero().f->q();
  for (int i = 0; i < x.ctx()->modulus.degree(); ++i) n *= q;
  return n;
}
inline std::uint32_t ff_char(const Residue& x) { return x.value().zero().f->p(); }
inline Residue ff_element(const Residue& proto, std::uint64_t i) {
  const FqField& F = *proto.value().zero().f;
  std::vector<FqElem> c;
  while (i) {
    c.push_back(F.elem(static_cast<std::uint32_t>(i % F.q())));
    i /= F.q();
  }
  return Residue(proto.ctx(), PolyFq(F.zero(), c));
}

}  // namespace ffdens
