// Polynomials and rational functions in one variable t over Q.
#pragma once

#include "tvb/rational.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tvb {

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT implicit
  Polynomial(const Rational& c);                  // NOLINT implicit
  /// Coefficients from degree 0 upward.
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial t() { return Polynomial(std::vector<Rational>{0, 1}); }
  static Polynomial monomial(const Rational& c, int degree);
  /// t - p
  static Polynomial linear(const Rational& root);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  const std::vector<Rational>& coefficients() const { return c_; }

  Rational operator()(const Rational& x) const;
  Polynomial monic() const;
  /// f(p + s) as a polynomial in s.
  Polynomial shifted(const Rational& p) const;
  /// s^n f(1/s) for n >= degree.
  Polynomial reversed(int n) const;
  /// Largest k with s^k dividing the polynomial (zero polynomial: -1).
  int low_order() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Plain text such as "3*t^2 - t + 1/2".
  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder. Throws on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& p, int e);

/// Element of Q(t): reduced fraction with monic denominator; zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(int c) : num_(c), den_(1) {}              // NOLINT implicit
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT implicit
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT implicit
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction t() { return RationalFunction(Polynomial::t()); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const { return den_.degree() == 0; }
  /// Throws unless constant.
  Rational constant_value() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws std::domain_error on division by zero.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Canonical serialization with integer coefficients: "num" or "(num)/(den)".
  std::string to_string() const;

 private:
  void normalize();
  /// num/den already coprime: only makes den monic.
  static RationalFunction coprime(Polynomial num, Polynomial den);
  Polynomial num_;
  Polynomial den_;
};

RationalFunction pow(const RationalFunction& f, int e);

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

/// Parses an expression in t with + - * / ^, parentheses and integer or a/b
/// literals. Juxtaposition multiplies ("2t", "3(t+1)"). Throws std::invalid_argument.
RationalFunction parse_rational_function(std::string_view text);

using KVec = Vec<RationalFunction>;
using KMat = Mat<RationalFunction>;

KMat to_kmat(const RatMat& m);
KVec to_kvec(const RatVec& v);
std::string to_string(const KVec& v);

}  // namespace tvb

namespace Eigen {

template <>
struct NumTraits<tvb::RationalFunction> : GenericNumTraits<tvb::RationalFunction> {
  using Real = tvb::RationalFunction;
  using NonInteger = tvb::RationalFunction;
  using Nested = tvb::RationalFunction;
  using Literal = tvb::RationalFunction;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 200,
    MulCost = 200
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
