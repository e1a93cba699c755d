#include "doctest.h"
#include "tvb/curve.hpp"
#include "tvb/linalg.hpp"

#include <random>

using namespace tvb;

namespace {

RationalFunction rf(const char* s) { return parse_rational_function(s); }
const PointP1 kInf = PointP1::infinity();
PointP1 pt(int p) { return PointP1::at(p); }

}  // namespace

TEST_CASE("parsing and printing") {
  CHECK(rf("t^2 - 1").to_string() == "t^2 - 1");
  CHECK(rf("(t^2-1)/(t-1)").to_string() == "t + 1");
  CHECK(rf("t/2").to_string() == "(t)/(2)");
  CHECK(rf("1/(2t+4)").to_string() == "(1)/(2*t + 4)");
  CHECK(rf("2t^2 - 3(t+1)") == rf("2*t^2-3*t-3"));
  CHECK(rf("-t^-2") == RationalFunction(Polynomial(-1), pow(Polynomial::t(), 2)));
  CHECK(rf("0").to_string() == "0");
  CHECK(rf("3/2").to_string() == "3/2");
  for (const char* s : {"(t^3 - 2*t + 1)/(t^2 + 5)", "-7", "(1)/(t)", "(3*t - 1)/(2*t^2 + 1)"})
    CHECK(rf(rf(s).to_string().c_str()) == rf(s));
  CHECK_THROWS_AS(rf("t +"), std::invalid_argument);
  CHECK_THROWS_AS(rf("1/(t-t)"), std::invalid_argument);
  CHECK_THROWS_AS(rf("x"), std::invalid_argument);
}

TEST_CASE("valuations") {
  const auto f = rf("(t-2)^3/(t+1)");
  CHECK(val_at(f, pt(2)) == ExtRational(3));
  CHECK(val_at(f, kInf) == ExtRational(-2));
  CHECK(val_at(f, pt(-1)) == ExtRational(-1));
  CHECK(val_at(RationalFunction(0), pt(5)).is_plus_infinity());
  CHECK(val_int(uniformizer(kInf), kInf) == 1);
  CHECK(val_int(uniformizer(pt(3)), pt(3)) == 1);
}

TEST_CASE("arithmetic cancels common factors") {
  CHECK(rf("1/(t-1)") - rf("1/(t-1)") == RationalFunction(0));
  CHECK(rf("1/(t(t-1))") + rf("1/t") == rf("1/(t-1)"));
  CHECK(rf("1/(t^2-1)") + rf("1/(t^2+t)") == rf("(2t-1)/(t(t-1)(t+1))"));
  CHECK(rf("(t^2-4)/(t+3)") * rf("(t+3)/(t-2)") == rf("t+2"));
  CHECK(rf("(t^2-4)/(t+3)") / rf("(t-2)/(t+3)") == rf("t+2"));
  CHECK((rf("(t+1)/(2t)") * rf("4t/(t+1)")).to_string() == "2");
  CHECK(rf("3/(2t-2)").denominator() == Polynomial::linear(1));
  CHECK(gcd(Polynomial::linear(2) * Polynomial::linear(3), Polynomial::linear(3) * Polynomial(7)) ==
        Polynomial::linear(3));
  CHECK(gcd(Polynomial(0), Polynomial(5)) == Polynomial(1));
}

TEST_CASE("polynomial orders") {
  const Polynomial f = rf("(t-2)^3 (t+1) t^2").numerator();
  CHECK(poly_order(f, pt(2)) == 3);
  CHECK(poly_order(f, pt(-1)) == 1);
  CHECK(poly_order(f, pt(0)) == 2);
  CHECK(poly_order(f, pt(5)) == 0);
  CHECK(poly_order(f, kInf) == -6);
  CHECK(poly_order(rf("(2t-1)^2").numerator(), PointP1(Rational(1, 2))) == 2);
  CHECK_THROWS_AS(poly_order(Polynomial(), pt(0)), CurveError);
}

TEST_CASE("divisors of functions") {
  CHECK(divisor_of(rf("t")) == DivisorOnY{{pt(0), 1}, {kInf, -1}});
  CHECK(divisor_of(rf("(t-1)/(t+1)")) == DivisorOnY{{pt(1), 1}, {pt(-1), -1}});
  CHECK_THROWS_AS(divisor_of(rf("t^2+1")), CurveError);
  CHECK_THROWS_AS(divisor_of(RationalFunction(0)), CurveError);
  CHECK(divisor_of(rf("(2t-1)^2/(3t+2)")) ==
        DivisorOnY{{PointP1::at(Rational(1, 2)), 2}, {PointP1::at(Rational(-2, 3)), -1}, {kInf, -1}});
}

TEST_CASE("floor and degree") {
  DivisorOnY d{{pt(0), Rational(3, 2)}, {pt(1), Rational(-1, 2)}};
  CHECK(floor_divisor(DivisorOnY{{pt(0), Rational(3, 2)}}) == DivisorOnY{{pt(0), 1}});
  CHECK(floor_divisor(DivisorOnY{{pt(1), Rational(-1, 2)}}) == DivisorOnY{{pt(1), -1}});
  CHECK(degree(d) == 1);
}

TEST_CASE("Riemann-Roch spaces") {
  auto b0 = rr_space({});
  REQUIRE(b0.size() == 1);
  CHECK(b0[0] == RationalFunction(1));
  auto b1 = rr_space({{pt(0), 2}});
  REQUIRE(b1.size() == 3);
  CHECK(b1[0] == rf("1"));
  CHECK(b1[1] == rf("1/t"));
  CHECK(b1[2] == rf("1/t^2"));
  CHECK(rr_space({{pt(0), 1}, {pt(1), -2}}).empty());
  auto b2 = rr_space({{pt(0), -1}, {kInf, 3}});
  CHECK(b2.size() == 3);
  for (const auto& f : b2) CHECK(in_rr_space(f, {{pt(0), -1}, {kInf, 3}}));
}

TEST_CASE("Riemann-Roch dimension and membership, randomized") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-3, 3), where(-2, 3);
  for (int trial = 0; trial < 200; ++trial) {
    DivisorOnY d;
    for (int k = 0; k < 3; ++k) {
      const int w = where(rng);
      const PointP1 p = w == 3 ? kInf : pt(w);
      d[p] += Rational(coef(rng) * 2 + coef(rng) % 2, 2);
    }
    d = normalized(d);
    const Rational deg = degree(floor_divisor(d));
    const auto basis = rr_space(d);
    const long expect = deg >= 0 ? static_cast<long>(deg) + 1 : 0;
    CHECK(static_cast<long>(basis.size()) == expect);
    for (const auto& f : basis) CHECK(in_rr_space(f, d));
    if (basis.empty()) continue;
    // linear independence: evaluate at distinct sample points
    RatMat m(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()) + 4);
    for (size_t i = 0; i < basis.size(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const Rational x = Rational(2 * j + 7, 3);
        const auto& f = basis[i];
        m(static_cast<Eigen::Index>(i), j) = f.numerator()(x) / f.denominator()(x);
      }
    CHECK(rank(m) == static_cast<int>(basis.size()));
  }
}

TEST_CASE("valuation axioms on random functions") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> root(-2, 2), mult(0, 2), c(1, 3);
  auto random_f = [&]() {
    RationalFunction f(c(rng));
    for (int k = 0; k < 3; ++k) {
      f *= pow(RationalFunction(Polynomial::linear(root(rng))), mult(rng));
      f /= pow(RationalFunction(Polynomial::linear(root(rng))), mult(rng));
    }
    return f;
  };
  std::vector<PointP1> pts = {pt(-2), pt(-1), pt(0), pt(1), pt(2), pt(5), kInf};
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_f(), g = random_f();
    int total = 0;
    for (const auto& p : pts) {
      CHECK(val_at(f * g, p) == val_at(f, p) + val_at(g, p));
      CHECK(val_at(f + g, p) >= min(val_at(f, p), val_at(g, p)));
      total += val_int(f, p);
    }
    CHECK(total == 0);
  }
}

TEST_CASE("Laurent expansions") {
  const auto s = laurent(rf("1/(t*(t-1))"), pt(0), 2);
  CHECK(s.order == -1);
  CHECK(s.at(-1) == -1);
  CHECK(s.at(0) == -1);
  CHECK(s.at(1) == -1);
  const auto inf = laurent(rf("(t^2+1)/(t-1)"), kInf, 1);
  CHECK(inf.order == -1);
  CHECK(inf.at(-1) == 1);
  CHECK(inf.at(0) == 1);
  CHECK(inf.at(1) == 2);
  CHECK(residue_value(rf("(t+3)/(t-1)"), pt(0)) == -3);
  CHECK(residue_value(rf("(2t+3)/(t-1)"), kInf) == 2);
  CHECK_THROWS_AS(residue_value(rf("1/t"), pt(0)), CurveError);
}

TEST_CASE("points") {
  CHECK(to_string(kInf) == "inf");
  CHECK(parse_point("inf") == kInf);
  CHECK(parse_point("-3/4") == PointP1::at(Rational(-3, 4)));
  CHECK(pt(100) < kInf);
  CHECK(fresh_point({pt(1), pt(2)}) == pt(3));
}
