#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace torext {

// Expression templates off: `auto` on arithmetic results must be safe.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Vec = std::vector<Rat>;

inline BigInt num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline BigInt floor_rat(const Rat& q) {
  BigInt n = num(q), d = den(q);
  BigInt f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline BigInt ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline long long to_ll(const BigInt& v) { return v.convert_to<long long>(); }

inline long long to_ll(const Rat& q) {
  require(is_integer(q), "expected an integer, got a fraction");
  return to_ll(num(q));
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat& q) {
  if (is_integer(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

/// Parses `-?[0-9]+(/[1-9][0-9]*)?` and reduces to lowest terms.
inline Rat parse_rational(std::string_view text) {
  std::size_t i = 0;
  auto digits = [&](bool nonzero_lead) {
    std::size_t start = i;
    if (i < text.size() && nonzero_lead && text[i] == '0')
      throw ParseError("denominator must not start with 0", i);
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start) throw ParseError("expected digit", i);
    return std::string(text.substr(start, i - start));
  };
  bool neg = false;
  if (i < text.size() && text[i] == '-') {
    neg = true;
    ++i;
  }
  BigInt n(digits(false));
  BigInt d = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    d = BigInt(digits(true));
  }
  if (i != text.size()) throw ParseError("unexpected character", i);
  Rat q(n, d);
  return neg ? Rat(-q) : q;
}

// ---- vectors -------------------------------------------------------------

inline Vec zeros(std::size_t n) { return Vec(n, Rat(0)); }

inline Vec unit(std::size_t n, std::size_t i) {
  Vec v = zeros(n);
  v[i] = 1;
  return v;
}

inline Vec ivec(std::initializer_list<long long> xs) {
  Vec v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec operator*(const Rat& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const Vec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_integral(const Vec& v) {
  for (const Rat& x : v)
    if (!is_integer(x)) return false;
  return true;
}

/// Positive multiple of v with coprime integer entries. Zero stays zero.
inline Vec primitive(const Vec& v) {
  BigInt l = 1;
  for (const Rat& x : v) l = lcm(l, den(x));
  BigInt g = 0;
  for (const Rat& x : v) g = gcd(g, num(x * l));
  if (g == 0) return v;
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(num(v[i] * l) / g);
  return r;
}

/// Primitive vector with first nonzero entry positive.
inline Vec primitive_signed(const Vec& v) {
  Vec p = primitive(v);
  for (const Rat& x : p) {
    if (x > 0) break;
    if (x < 0) return -p;
  }
  return p;
}

inline std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Vec& v) {
  return os << to_string(v);
}

}  // namespace torext
