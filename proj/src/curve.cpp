#include "tvb/curve.hpp"

#include <algorithm>

namespace tvb {

const Rational& PointP1::value() const {
  if (!finite) throw CurveError("point at infinity has no finite coordinate");
  return *finite;
}

bool operator<(const PointP1& a, const PointP1& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return *a.finite < *b.finite;
}

std::string to_string(const PointP1& p) { return p.is_infinity() ? "inf" : to_string(*p.finite); }

PointP1 parse_point(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "infinity") return PointP1::infinity();
  return PointP1::at(parse_rational(text));
}

RationalFunction uniformizer(const PointP1& p) {
  if (p.is_infinity()) return RationalFunction(Polynomial(1), Polynomial::t());
  return RationalFunction(Polynomial::linear(*p.finite));
}

namespace {

// Repeated synthetic division by t - p.
int order_at(const Polynomial& poly, const Rational& p) {
  if (p == 0) return poly.low_order();
  std::vector<Rational> c = poly.coefficients();
  int k = 0;
  Rational scratch;
  while (c.size() > 1) {
    // quotient coefficients overwrite c[1..], remainder ends in c[0]
    for (size_t i = c.size() - 1; i > 0; --i) {
      mpq_mul(scratch.backend().data(), c[i].backend().data(), p.backend().data());
      mpq_add(c[i - 1].backend().data(), c[i - 1].backend().data(), scratch.backend().data());
    }
    if (c[0] != 0) break;
    c.erase(c.begin());
    ++k;
  }
  return k;
}

}  // namespace

int poly_order(const Polynomial& f, const PointP1& p) {
  if (f.is_zero()) throw CurveError("valuation of zero is infinite");
  return p.is_infinity() ? -f.degree() : order_at(f, *p.finite);
}

ExtRational val_at(const RationalFunction& f, const PointP1& p) {
  if (f.is_zero()) return ExtRational::plus_infinity();
  return val_int(f, p);
}

int val_int(const RationalFunction& f, const PointP1& p) {
  if (f.is_zero()) throw CurveError("valuation of zero is infinite");
  if (p.is_infinity()) return f.denominator().degree() - f.numerator().degree();
  return order_at(f.numerator(), *p.finite) - order_at(f.denominator(), *p.finite);
}

ExtRational val_at(const KVec& v, const PointP1& p) {
  ExtRational best = ExtRational::plus_infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) best = min(best, val_at(v(i), p));
  return best;
}

Rational LaurentSeries::at(int k) const {
  const int idx = k - order;
  if (idx < 0 || idx >= static_cast<int>(coeffs.size())) return 0;
  return coeffs[static_cast<size_t>(idx)];
}

LaurentSeries laurent(const RationalFunction& f, const PointP1& p, int max_order) {
  LaurentSeries out;
  if (f.is_zero()) {
    out.order = max_order + 1;
    return out;
  }
  // f = s^shift * n(s) / d(s) with d(0) != 0
  Polynomial n, d;
  int shift;
  if (p.is_infinity()) {
    const int dn = f.numerator().degree(), dd = f.denominator().degree();
    n = f.numerator().reversed(dn);
    d = f.denominator().reversed(dd);
    shift = dd - dn;
  } else {
    n = f.numerator().shifted(*p.finite);
    d = f.denominator().shifted(*p.finite);
    shift = 0;
  }
  const int zn = n.low_order(), zd = d.low_order();
  n = divmod(n, Polynomial::monomial(1, zn)).first;
  d = divmod(d, Polynomial::monomial(1, zd)).first;
  out.order = shift + zn - zd;
  const int terms = max_order - out.order + 1;
  if (terms <= 0) return out;
  // power series division n / d
  std::vector<Rational> q(static_cast<size_t>(terms), Rational(0));
  const Rational d0 = d.coeff(0);
  for (int k = 0; k < terms; ++k) {
    Rational acc = n.coeff(k);
    for (int j = 1; j <= std::min(k, d.degree()); ++j) acc -= d.coeff(j) * q[static_cast<size_t>(k - j)];
    q[static_cast<size_t>(k)] = acc / d0;
  }
  out.coeffs = std::move(q);
  return out;
}

Rational residue_value(const RationalFunction& f, const PointP1& p) {
  if (f.is_zero()) return 0;
  if (val_int(f, p) < 0) throw CurveError("residue of " + f.to_string() + " at pole " + to_string(p));
  return laurent(f, p, 0).at(0);
}

// ---------------------------------------------------------------- divisors

DivisorOnY normalized(const DivisorOnY& d) {
  DivisorOnY out;
  for (const auto& [p, c] : d)
    if (c != 0) out[p] = c;
  return out;
}

DivisorOnY floor_divisor(const DivisorOnY& d) {
  DivisorOnY out;
  for (const auto& [p, c] : d) out[p] = floor_q(c);
  return normalized(out);
}

Rational degree(const DivisorOnY& d) {
  Rational s = 0;
  for (const auto& [p, c] : d) s += c;
  return s;
}

Rational coefficient(const DivisorOnY& d, const PointP1& p) {
  auto it = d.find(p);
  return it == d.end() ? Rational(0) : it->second;
}

DivisorOnY operator+(const DivisorOnY& a, const DivisorOnY& b) {
  DivisorOnY out = a;
  for (const auto& [p, c] : b) out[p] += c;
  return normalized(out);
}

std::string to_string(const DivisorOnY& d) {
  const DivisorOnY n = normalized(d);
  if (n.empty()) return "0";
  std::string s;
  for (const auto& [p, c] : n) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const Rational a = c < 0 ? Rational(-c) : c;
    if (a != 1) s += to_string(a) + "*";
    s += "[" + to_string(p) + "]";
  }
  return s;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    small.push_back(k);
    if (k * k != n) large.push_back(n / k);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

RootData rational_roots(const Polynomial& poly) {
  if (poly.is_zero()) throw CurveError("roots of the zero polynomial");
  RootData out;
  Polynomial p = poly;
  const int z = p.low_order();
  if (z > 0) {
    out.roots[Rational(0)] = z;
    p = divmod(p, Polynomial::monomial(1, z)).first;
  }
  while (p.degree() > 0) {
    // integer coefficients
    Integer l = 1;
    for (const auto& c : p.coefficients()) l = lcm(l, denom(c));
    const Integer a0 = numer(p.coeff(0) * Rational(l));
    const Integer an = numer(p.leading() * Rational(l));
    std::optional<Rational> found;
    for (const auto& num : positive_divisors(a0)) {
      for (const auto& den : positive_divisors(an)) {
        for (int sign : {1, -1}) {
          const Rational cand = Rational(num * sign) / Rational(den);
          if (p(cand) == 0) {
            found = cand;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
    ++out.roots[*found];
    p = divmod(p, Polynomial::linear(*found)).first;
  }
  out.irrational_degree = std::max(0, p.degree());
  return out;
}

DivisorOnY divisor_of(const RationalFunction& f) {
  if (f.is_zero()) throw CurveError("divisor of the zero function");
  DivisorOnY out;
  const RootData zn = rational_roots(f.numerator());
  const RootData zd = rational_roots(f.denominator());
  if (zn.irrational_degree > 0 || zd.irrational_degree > 0)
    throw CurveError("function " + f.to_string() + " has zeros or poles outside Q");
  for (const auto& [r, m] : zn.roots) out[PointP1::at(r)] += m;
  for (const auto& [r, m] : zd.roots) out[PointP1::at(r)] -= m;
  out[PointP1::infinity()] += f.denominator().degree() - f.numerator().degree();
  out = normalized(out);
  if (degree(out) != 0) throw std::logic_error("principal divisor of nonzero degree");
  return out;
}

std::vector<PointP1> finite_poles(const RationalFunction& f) {
  const RootData zd = rational_roots(f.denominator());
  if (zd.irrational_degree > 0) throw CurveError("function " + f.to_string() + " has poles outside Q");
  std::vector<PointP1> out;
  for (const auto& [r, m] : zd.roots) out.push_back(PointP1::at(r));
  return out;
}

// ---------------------------------------------------------------- Riemann-Roch

std::vector<RationalFunction> rr_space(const DivisorOnY& d) {
  const DivisorOnY fl = floor_divisor(d);
  const Rational deg = degree(fl);
  if (deg < 0) return {};
  const int n_inf = static_cast<int>(coefficient(fl, PointP1::infinity()));
  bool effective_finite = n_inf >= 0;
  for (const auto& [p, c] : fl)
    if (c < 0) effective_finite = false;
  std::vector<RationalFunction> out;
  if (effective_finite) {
    for (int j = 0; j <= n_inf; ++j) out.emplace_back(Polynomial::monomial(1, j));
    for (const auto& [p, c] : fl) {
      if (p.is_infinity()) continue;
      const int n = static_cast<int>(c);
      for (int k = 1; k <= n; ++k) out.emplace_back(Polynomial(1), pow(Polynomial::linear(*p.finite), k));
    }
    return out;
  }
  Polynomial num(1), den(1);
  for (const auto& [p, c] : fl) {
    if (p.is_infinity()) continue;
    const int n = static_cast<int>(c);
    if (n > 0) den = den * pow(Polynomial::linear(*p.finite), n);
    if (n < 0) num = num * pow(Polynomial::linear(*p.finite), -n);
  }
  const int top = static_cast<int>(deg);
  for (int j = 0; j <= top; ++j) out.emplace_back(Polynomial::monomial(1, j) * num, den);
  return out;
}

bool in_rr_space(const RationalFunction& f, const DivisorOnY& d) {
  if (f.is_zero()) return true;
  const DivisorOnY fl = floor_divisor(d);
  DivisorOnY sum = divisor_of(f) + fl;
  for (const auto& [p, c] : sum)
    if (c < 0) return false;
  return true;
}

PointP1 fresh_point(const std::vector<PointP1>& avoid) {
  for (int k = 1;; ++k) {
    const PointP1 p = PointP1::at(k);
    if (std::find(avoid.begin(), avoid.end(), p) == avoid.end()) return p;
  }
}

}  // namespace tvb
