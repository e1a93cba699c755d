#include "tvb/ext_rational.hpp"

#include <stdexcept>

namespace tvb {

const Rational& ExtRational::value() const {
  if (kind_ != Kind::Finite) throw std::logic_error("value() of an infinite ExtRational");
  return value_;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtRational::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != ExtRational::Kind::Finite) return std::strong_ordering::equal;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  using K = ExtRational::Kind;
  if ((a.kind_ == K::PlusInfinity && b.kind_ == K::MinusInfinity) ||
      (a.kind_ == K::MinusInfinity && b.kind_ == K::PlusInfinity))
    throw std::domain_error("+inf + -inf is undefined");
  if (a.kind_ != K::Finite) return a;
  if (b.kind_ != K::Finite) return b;
  return ExtRational(a.value_ + b.value_);
}

ExtRational operator-(const ExtRational& a) {
  using K = ExtRational::Kind;
  if (a.kind_ == K::PlusInfinity) return ExtRational::minus_infinity();
  if (a.kind_ == K::MinusInfinity) return ExtRational::plus_infinity();
  return ExtRational(Rational(-a.value_));
}

std::string to_string(const ExtRational& x) {
  if (x.is_plus_infinity()) return "+inf";
  if (x.is_minus_infinity()) return "-inf";
  return to_string(x.value());
}

}  // namespace tvb
