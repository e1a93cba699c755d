// Rationals extended by explicit +infinity / -infinity sentinels.
#pragma once

#include "tvb/rational.hpp"

#include <compare>
#include <string>

namespace tvb {

class ExtRational {
 public:
  enum class Kind { MinusInfinity, Finite, PlusInfinity };

  ExtRational() = default;
  ExtRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT implicit
  ExtRational(int v) : kind_(Kind::Finite), value_(v) {}                  // NOLINT implicit

  static ExtRational plus_infinity() { return ExtRational(Kind::PlusInfinity); }
  static ExtRational minus_infinity() { return ExtRational(Kind::MinusInfinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_infinity() const { return kind_ == Kind::PlusInfinity; }
  bool is_minus_infinity() const { return kind_ == Kind::MinusInfinity; }

  /// Throws std::logic_error on an infinite value.
  const Rational& value() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

  /// +inf + (-inf) is rejected.
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a);

 private:
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rational value_ = 0;
};

inline ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }
inline ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

std::string to_string(const ExtRational& x);

}  // namespace tvb
