#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppk {

/// Error type for all input/shape/precondition failures. The CLI maps it to
/// exit code 2; check failures are reported through CheckReport instead.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class FieldKind { rationals, prime };

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Which exact field scalars live in: the rationals, or F_p for a prime
/// modulus 2 <= p <= 251.
struct FieldDescriptor {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t modulus = 0;

  static FieldDescriptor rationals() { return {FieldKind::rationals, 0}; }
  static FieldDescriptor fp(std::uint32_t p) {
    if (p < 2 || p > 251 || !is_prime_u32(p))
      throw Error("field modulus must be a prime in [2, 251], got " + std::to_string(p));
    return {FieldKind::prime, p};
  }

  bool operator==(const FieldDescriptor&) const = default;
};

/// Exact rational scalar backed by arbitrary-precision integers. Kept in
/// lowest terms with positive denominator.
class Rational {
 public:
  using Int = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT: implicit on purpose, mirrors int literals
  Rational(const Int& num, const Int& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Int n = num, d = den;
    if (d < 0) { n = -n; d = -d; }
    v_ = boost::multiprecision::cpp_rational(n, d);
  }

  static Rational from_int(long v) { return Rational(v); }

  Int numerator() const { return boost::multiprecision::numerator(v_); }
  Int denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  Rational inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    return Rational(boost::multiprecision::cpp_rational(1) / v_);
  }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }

  /// "3", "-1/2"; integers never print a denominator.
  std::string str() const { return v_.str(); }

  /// Accepts "3", "-3", "3/7".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Int(s), Int(1));
      return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw Error("cannot parse rational scalar '" + s + "'");
    }
  }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
  boost::multiprecision::cpp_rational v_;
};

/// Prime-field scalar with a runtime modulus. A value with modulus 0 is a
/// formal integer (literals, default-constructed zeros); it unifies with any
/// modulus on first contact. Mixing two distinct nonzero moduli throws.
class Fp {
 public:
  Fp() = default;
  static Fp from_int(long v) { Fp s; s.v_ = v; s.p_ = 0; return s; }
  static Fp make(long v, std::uint32_t p) {
    Fp s; s.p_ = p; s.v_ = reduce(v, p); return s;
  }

  std::uint32_t modulus() const { return p_; }
  long residue() const { return static_cast<long>(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return p_ ? v_ == 1 : v_ == 1; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    auto [x, y, p] = unify(a, b);
    Fp s; s.p_ = p; s.v_ = reduce(x + y, p); return s;
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    auto [x, y, p] = unify(a, b);
    Fp s; s.p_ = p; s.v_ = reduce(x - y, p); return s;
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    auto [x, y, p] = unify(a, b);
    Fp s; s.p_ = p; s.v_ = reduce(x * y, p); return s;
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { Fp s; s.p_ = p_; s.v_ = reduce(-v_, p_); return s; }
  Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
  Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
  Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

  Fp inverse() const {
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) { Fp s; s.v_ = v_; return s; }
      throw Error("inverse of formal integer without a modulus");
    }
    if (v_ % p_ == 0) throw Error("inverse of zero in F_p");
    // extended Euclid
    long t = 0, newt = 1, r = p_, newr = static_cast<long>(v_);
    while (newr != 0) {
      long q = r / newr;
      long tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    Fp s; s.p_ = p_; s.v_ = reduce(t, p_); return s;
  }

  bool operator==(const Fp& o) const {
    auto [x, y, p] = unify(*this, o);
    return reduce(x - y, p) == 0;
  }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  std::string str() const { return std::to_string(v_); }

  static Fp parse(const std::string& s, std::uint32_t p) {
    try {
      std::size_t pos = 0;
      long v = std::stol(s, &pos);
      if (pos != s.size()) throw Error("");
      return make(v, p);
    } catch (const std::exception&) {
      throw Error("cannot parse F_p scalar '" + s + "'");
    }
  }

 private:
  static long reduce(long v, std::uint32_t p) {
    if (p == 0) return v;
    long m = v % static_cast<long>(p);
    return m < 0 ? m + static_cast<long>(p) : m;
  }
  struct Unified { long x, y; std::uint32_t p; };
  static Unified unify(const Fp& a, const Fp& b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    if (a.p_ && b.p_ && a.p_ != b.p_)
      throw Error("mixed moduli " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
    return {reduce(a.v_, p), reduce(b.v_, p), p};
  }

  long v_ = 0;
  std::uint32_t p_ = 0;
};

template <class S>
inline S scalar_from_int(long v) { return S::from_int(v); }

/// Parse a scalar from its serialized form under the given field.
template <class S>
S parse_scalar(const std::string& text, const FieldDescriptor& field);

template <>
inline Rational parse_scalar<Rational>(const std::string& text, const FieldDescriptor& field) {
  if (field.kind != FieldKind::rationals) throw Error("field mismatch: expected rationals");
  return Rational::parse(text);
}

template <>
inline Fp parse_scalar<Fp>(const std::string& text, const FieldDescriptor& field) {
  if (field.kind != FieldKind::prime) throw Error("field mismatch: expected a prime field");
  return Fp::parse(text, field.modulus);
}

}  // namespace ppk
