#include "ffdens/poly_text.hpp"

#include <cctype>
#include <stdexcept>

namespace ffdens {

namespace {

class Parser {
 public:
  Parser(const FqField& F, const std::string& s) : F_(F), s_(s) {}

  PolyFq run() {
    PolyFq r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(i_) + ": " + what + " in \"" + s_ + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  PolyFq expr() {
    PolyFq r = eat('-') ? -term() : (eat('+'), term());
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  PolyFq term() {
    PolyFq r = factor();
    while (eat('*')) r = r * factor();
    return r;
  }
  PolyFq factor() {
    PolyFq b = primary();
    if (eat('^')) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      b = poly_pow(b, static_cast<unsigned>(std::stoul(s_.substr(st, i_ - st))));
    }
    return b;
  }
  PolyFq primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      PolyFq r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++i_;
      return -factor();
    }
    if (c == 't') {
      ++i_;
      return PolyFq::var(F_.zero());
    }
    if (c == 'u') {
      if (F_.e() < 2) fail("u used over a prime field");
      ++i_;
      return PolyFq::constant(F_.gen());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      const std::string digits = s_.substr(st, i_ - st);
      long long v = 0;
      for (char d : digits) v = (v * 10 + (d - '0')) % static_cast<long long>(F_.p());
      return PolyFq::constant(F_.from_int(v));
    }
    fail("unexpected character");
  }

  const FqField& F_;
  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

PolyFq parse_poly(const FqField& F, const std::string& text) { return Parser(F, text).run(); }

FqElem parse_fq(const FqField& F, const std::string& text) {
  PolyFq p = parse_poly(F, text);
  if (p.degree() > 0) throw std::invalid_argument("expected a constant: " + text);
  return p[0];
}

std::string format_poly(const PolyFq& f) {
  if (f.is_zero()) return "0";
  const FqField& F = *f.zero().f;
  std::string s;
  for (int i = f.degree(); i >= 0; --i) {
    if (f[i].is_zero()) continue;
    std::string c = F.to_string(f[i]);
    const bool compound = c.find('+') != std::string::npos || c.find('u') != std::string::npos;
    std::string term;
    if (i == 0)
      term = compound && F.e() > 1 && c.find('+') != std::string::npos ? "(" + c + ")" : c;
    else {
      std::string mono = i == 1 ? "t" : "t^" + std::to_string(i);
      if (c == "1")
        term = mono;
      else
        term = (compound ? "(" + c + ")" : c) + "*" + mono;
    }
    s += (s.empty() ? "" : "+") + term;
  }
  return s;
}

}  // namespace ffdens
