// Exact rational scalars shared by every module.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvb {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Dense column vector over an exact scalar.
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense matrix over an exact scalar.
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RatVec = Vec<Rational>;
using RatMat = Mat<Rational>;
using IntVec = Vec<Integer>;

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer floor_int(const Rational& q);
Integer ceil_int(const Rational& q);
inline Rational floor_q(const Rational& q) { return Rational(floor_int(q)); }
inline Rational ceil_q(const Rational& q) { return Rational(ceil_int(q)); }
inline bool is_integral(const Rational& q) { return denom(q) == 1; }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Canonical text form: "3", "-1/2".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "a" or "a/b" with optional sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

RatVec make_vec(std::initializer_list<Rational> entries);
RatVec make_vec(const std::vector<Rational>& entries);
std::vector<Rational> to_std(const RatVec& v);

Rational dot(const RatVec& a, const RatVec& b);

/// Lexicographic order on equal-length vectors.
bool lex_less(const RatVec& a, const RatVec& b);
bool equal(const RatVec& a, const RatVec& b);

/// Integer vector with gcd 1 on the same ray (zero stays zero).
RatVec primitive(const RatVec& v);

/// "(1, -1/2)"
std::string to_string(const RatVec& v);

}  // namespace tvb
