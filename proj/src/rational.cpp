#include "tvb/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace tvb {

Integer floor_int(const Rational& q) {
  Integer n = numer(q);
  Integer d = denom(q);
  Integer quot = n / d;  // truncates toward zero
  if (n < 0 && quot * d != n) quot -= 1;
  return quot;
}

Integer ceil_int(const Rational& q) { return -floor_int(-q); }

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Integer(0);
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  if (denom(q) == 1) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

namespace {

Integer parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  size_t i = 0;
  if (text[0] == '+' || text[0] == '-') i = 1;
  if (i == text.size()) throw std::invalid_argument("bad integer '" + std::string(text) + "'");
  for (size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("bad integer '" + std::string(text) + "'");
  std::string s(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(s);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer n = parse_integer(trim(text.substr(0, slash)));
  const Integer d = parse_integer(trim(text.substr(slash + 1)));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(n) / Rational(d);
}

RatVec make_vec(std::initializer_list<Rational> entries) {
  return make_vec(std::vector<Rational>(entries));
}

RatVec make_vec(const std::vector<Rational>& entries) {
  RatVec v(static_cast<Eigen::Index>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
  return v;
}

std::vector<Rational> to_std(const RatVec& v) {
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

bool equal(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

RatVec primitive(const RatVec& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denom(v(i)));
  Integer g = 0;
  std::vector<Integer> ints;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    ints.push_back(numer(v(i)) * (l / denom(v(i))));
    g = gcd(g, ints.back());
  }
  if (g == 0) return v;
  RatVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(ints[static_cast<size_t>(i)] / g);
  return out;
}

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v(i));
  }
  return s + ")";
}

}  // namespace tvb
