#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <string>

#include "bondcat/errors.hpp"

namespace bondcat {

/// Exact rational scalars. Entries in the worked examples are tiny, but
/// elimination is free to blow up denominators, so arbitrary precision it is.
using Rational = boost::multiprecision::cpp_rational;

/// Residue field GF(p). The modulus is a session parameter: set it once
/// before building any values, never mid-computation.
class Gf {
 public:
  Gf() = default;
  Gf(long long x) : v_(normalize(x)) {}

  static void set_modulus(std::uint64_t p) {
    if (!is_prime(p)) throw Error("GF modulus must be a prime < 2^31, got " + std::to_string(p));
    p_ = p;
  }
  static std::uint64_t modulus() { return p_; }

  std::uint64_t value() const { return v_; }

  Gf operator+(Gf o) const { return from_raw((v_ + o.v_) % p_); }
  Gf operator-(Gf o) const { return from_raw((v_ + p_ - o.v_) % p_); }
  Gf operator*(Gf o) const { return from_raw((v_ * o.v_) % p_); }
  Gf operator-() const { return from_raw(v_ == 0 ? 0 : p_ - v_); }
  Gf& operator+=(Gf o) { return *this = *this + o; }
  Gf& operator-=(Gf o) { return *this = *this - o; }
  Gf& operator*=(Gf o) { return *this = *this * o; }
  bool operator==(const Gf&) const = default;

  Gf inv() const {
    if (v_ == 0) throw Error("division by zero in GF(" + std::to_string(p_) + ")");
    // extended Euclid on (v, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(v_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return from_raw(static_cast<std::uint64_t>(t));
  }
  Gf operator/(Gf o) const { return *this * o.inv(); }

 private:
  static Gf from_raw(std::uint64_t v) {
    Gf g;
    g.v_ = v;
    return g;
  }
  static std::uint64_t normalize(long long x) {
    long long m = static_cast<long long>(p_);
    long long r = x % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
  }
  static bool is_prime(std::uint64_t p) {
    if (p < 2 || p >= (1ull << 31)) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  std::uint64_t v_ = 0;
  inline static std::uint64_t p_ = 5;
};

template <class K>
concept Scalar = requires(K a, K b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a* b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  K(0);
  K(1);
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Gf& x) { return x.value() == 0; }

inline Rational inverse(const Rational& x) {
  if (x.is_zero()) throw Error("division by zero");
  return Rational(1) / x;
}
inline Gf inverse(const Gf& x) { return x.inv(); }

inline std::string scalar_to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}
inline std::string scalar_to_string(const Gf& x) { return std::to_string(x.value()); }

/// Parses "n" or "n/d" exactly; no floating point anywhere.
inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    using boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return Rational(cpp_int(s));
    cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator");
    return Rational(num, den);
  } catch (const std::exception& e) {
    throw Error("bad rational literal '" + s + "': " + e.what());
  }
}

template <Scalar K>
K scalar_from_string(const std::string& s);
template <>
inline Rational scalar_from_string<Rational>(const std::string& s) {
  return rational_from_string(s);
}
template <>
inline Gf scalar_from_string<Gf>(const std::string& s) {
  try {
    return Gf(std::stoll(s));
  } catch (const std::exception&) {
    throw Error("bad GF(" + std::to_string(Gf::modulus()) + ") literal '" + s + "'");
  }
}

template <Scalar K>
std::string field_name();
template <>
inline std::string field_name<Rational>() {
  return "rational";
}
template <>
inline std::string field_name<Gf>() {
  return "gf:" + std::to_string(Gf::modulus());
}

}  // namespace bondcat
