// The curve Y = P^1 over Q: rational points, valuations, Q-divisors and
// Riemann-Roch spaces.
#pragma once

#include "tvb/ext_rational.hpp"
#include "tvb/rational_function.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvb {

class CurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational point of P^1: a finite p in Q or infinity. Infinity sorts last.
struct PointP1 {
  std::optional<Rational> finite;

  static PointP1 at(const Rational& p) { return PointP1{p}; }
  static PointP1 infinity() { return PointP1{std::nullopt}; }

  bool is_infinity() const { return !finite.has_value(); }
  const Rational& value() const;

  friend bool operator==(const PointP1& a, const PointP1& b) { return a.finite == b.finite; }
  friend bool operator<(const PointP1& a, const PointP1& b);
};

/// "3/2" or "inf".
std::string to_string(const PointP1& p);
PointP1 parse_point(std::string_view text);

/// Uniformizer t - p, or 1/t at infinity.
RationalFunction uniformizer(const PointP1& p);

/// Order of vanishing; +infinity for f = 0.
ExtRational val_at(const RationalFunction& f, const PointP1& p);
/// Same as val_at but throws on f = 0.
int val_int(const RationalFunction& f, const PointP1& p);
/// Order of a nonzero polynomial at p; at infinity this is -degree.
int poly_order(const Polynomial& f, const PointP1& p);
/// min over entries (+infinity for the zero vector).
ExtRational val_at(const KVec& v, const PointP1& p);

/// Laurent expansion in the uniformizer at p: coefficient of order k is
/// result.coeffs[k - result.order]. Computes orders order..max_order.
struct LaurentSeries {
  int order = 0;
  std::vector<Rational> coeffs;
  Rational at(int k) const;
};
LaurentSeries laurent(const RationalFunction& f, const PointP1& p, int max_order);

/// Value at p of a function regular at p (reduction modulo the maximal ideal).
Rational residue_value(const RationalFunction& f, const PointP1& p);

using DivisorOnY = std::map<PointP1, Rational>;

/// Drops zero coefficients.
DivisorOnY normalized(const DivisorOnY& d);
DivisorOnY floor_divisor(const DivisorOnY& d);
Rational degree(const DivisorOnY& d);
Rational coefficient(const DivisorOnY& d, const PointP1& p);
DivisorOnY operator+(const DivisorOnY& a, const DivisorOnY& b);
std::string to_string(const DivisorOnY& d);

/// Rational roots of a nonzero polynomial with multiplicity. If some factor
/// has no rational root, `irrational_degree` of the leftover is positive.
struct RootData {
  std::map<Rational, int> roots;
  int irrational_degree = 0;
};
RootData rational_roots(const Polynomial& p);

/// Principal divisor. Throws CurveError for f = 0 or irrational zeros/poles.
DivisorOnY divisor_of(const RationalFunction& f);
/// Finite poles of f (throws CurveError if a pole is irrational).
std::vector<PointP1> finite_poles(const RationalFunction& f);

/// Basis of L(floor(D)) = {f : div(f) + floor(D) >= 0}, deterministic order.
std::vector<RationalFunction> rr_space(const DivisorOnY& d);

/// div(f) + floor(D) >= 0 at every point.
bool in_rr_space(const RationalFunction& f, const DivisorOnY& d);

/// A finite point not in `avoid`, deterministic (smallest positive integer).
PointP1 fresh_point(const std::vector<PointP1>& avoid);

}  // namespace tvb
