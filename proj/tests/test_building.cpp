#include "doctest.h"
#include "random_building.hpp"
#include "tvb/building.hpp"
#include "tvb/linalg.hpp"

using namespace tvb;

namespace {

const PointP1 kZero = PointP1::at(0);

KMat kmat2(const char* a, const char* b, const char* c, const char* d) {
  KMat m(2, 2);
  m << parse_rational_function(a), parse_rational_function(b), parse_rational_function(c),
      parse_rational_function(d);
  return m;
}

KVec kvec2(const char* a, const char* b) {
  KVec v(2);
  v << parse_rational_function(a), parse_rational_function(b);
  return v;
}

KMat id2() { return KMat::Identity(2, 2); }

}  // namespace

TEST_CASE("norm evaluation") {
  AdaptedNorm w(1, kZero, id2(), {0, 1});
  CHECK(norm_eval(w, kvec2("t", "1")) == ExtRational(1));
  AdaptedNorm v(0, kZero, id2(), {0, 2});
  CHECK(norm_eval(v, kvec2("t^5", "0")) == ExtRational(0));
  AdaptedNorm skew(1, kZero, kmat2("1", "1", "0", "t"), {0, 0});
  CHECK(norm_eval(skew, kvec2("0", "1")) == ExtRational(-1));
  CHECK(norm_eval(w, kvec2("0", "0")).is_plus_infinity());
  CHECK_THROWS_AS(AdaptedNorm(1, kZero, kmat2("1", "1", "1", "1"), {0, 0}), BuildingError);
}

TEST_CASE("norm comparison") {
  AdaptedNorm w(1, kZero, id2(), {0, 0});
  CHECK(norm_leq(w, w));
  AdaptedNorm shifted(1, kZero, id2(), {1, 1});
  CHECK(norm_leq(w, shifted));
  CHECK_FALSE(norm_leq(shifted, w));
  AdaptedNorm other(1, kZero, kmat2("1", "1", "0", "1"), {0, 0});
  CHECK(norm_eq(w, other));
  CHECK_THROWS_AS(norm_leq(w, AdaptedNorm(0, kZero, id2(), {0, 0})), BuildingError);
  CHECK_THROWS_AS(norm_leq(w, AdaptedNorm(1, PointP1::at(1), id2(), {0, 0})), BuildingError);
}

TEST_CASE("frame rescaling") {
  AdaptedNorm w(1, kZero, id2(), {0, 3});
  AdaptedNorm unit(1, kZero, kmat2("t+1", "0", "0", "1"), {0, 3});
  CHECK(norm_eq(w, unit));
  AdaptedNorm by_t(1, kZero, kmat2("t", "0", "0", "1"), {0, 3});
  CHECK_FALSE(norm_eq(w, by_t));
  AdaptedNorm adjusted(1, kZero, kmat2("t", "0", "0", "1"), {1, 3});
  CHECK(norm_eq(w, adjusted));
}

TEST_CASE("evaluation with cancelling coordinates") {
  // coordinates of (1 + t, 1) in the frame (1, 0), (1, 1) are (t, 1): the two
  // unit terms of the first coordinate cancel
  const AdaptedNorm w(1, kZero, kmat2("1", "1", "0", "1"), {0, 5});
  CHECK(norm_eval(w, kvec2("1+t", "1")) == ExtRational(1));
  CHECK(norm_eval(w, kvec2("1", "1")) == ExtRational(5));
  CHECK(norm_eval(w, kvec2("1", "0")) == ExtRational(0));
  const AdaptedNorm skew(1, PointP1::infinity(), kmat2("t", "1", "0", "1"), {0, 0});
  CHECK(norm_eval(skew, kvec2("t+1", "1")) == ExtRational(0));
  CHECK(norm_eval(skew, kvec2("t^2+1", "1")) == ExtRational(-1));
  // (t + 1, t) = 1 * (1, 0) + t * (1, 1): the poles of order one cancel
  const AdaptedNorm at_inf(1, PointP1::infinity(), kmat2("1", "1", "0", "1"), {0, 5});
  CHECK(norm_eval(at_inf, kvec2("t+1", "t")) == ExtRational(0));
}

TEST_CASE("lattices and norms") {
  const auto std_lattice = lattice_from_norm(AdaptedNorm(1, kZero, id2(), {0, 0}));
  CHECK(std_lattice.generators == id2());
  const auto l = lattice_from_norm(AdaptedNorm(1, kZero, id2(), {0, -1}));
  CHECK(l.generators == kmat2("1", "0", "0", "t"));
  CHECK(norm_eval(norm_from_lattice(l), kvec2("0", "1")) == ExtRational(-1));
  const LatticeRep skew{kZero, kmat2("1", "1", "0", "t")};
  CHECK(norm_eval(norm_from_lattice(skew), kvec2("0", "1")) == ExtRational(-1));
  CHECK(lattice_eq(lattice_from_norm(norm_from_lattice(skew)), skew));
  CHECK_THROWS_AS(lattice_from_norm(AdaptedNorm(1, kZero, id2(), {Rational(1, 2), 0})), BuildingError);
  CHECK_THROWS_AS(lattice_from_norm(AdaptedNorm(0, kZero, id2(), {0, 0})), BuildingError);
}

TEST_CASE("lattice intersection") {
  const LatticeRep a{kZero, id2()};
  CHECK(lattice_eq(lattice_intersect(a, a), a));
  const LatticeRep b{kZero, kmat2("t", "0", "0", "1/t")};
  CHECK(lattice_eq(lattice_intersect(a, b), LatticeRep{kZero, kmat2("t", "0", "0", "1")}));
  const LatticeRep skew{kZero, kmat2("1", "1", "0", "t")};
  const LatticeRep x = lattice_intersect(skew, a);
  // skew is contained in the standard lattice
  CHECK(lattice_eq(x, skew));
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    const KVec e = testing::random_vector(rng, kZero, 2);
    CHECK(lattice_contains(x, e) == (lattice_contains(skew, e) && lattice_contains(a, e)));
  }
  CHECK_THROWS_AS(lattice_intersect(a, LatticeRep{PointP1::at(1), id2()}), BuildingError);
}

TEST_CASE("local Smith form") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const PointP1 p = testing::random_place(rng);
    const KMat a = testing::random_frame(rng, p, 3);
    const LocalSmith s = local_smith(a, p);
    REQUIRE(s.rank == 3);
    const KMat d = multiply(multiply(s.left, a), s.right);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j)
          CHECK(d(i, j) == uniformizer_power(p, s.exponents[static_cast<size_t>(i)]));
        else
          CHECK(d(i, j).is_zero());
      }
    for (const KMat* u : {&s.left, &s.right}) {
      CHECK(val_int(determinant(*u), p) == 0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(val_at((*u)(i, j), p) >= ExtRational(0));
    }
  }
}

TEST_CASE("residue link") {
  AdaptedNorm w(1, kZero, id2(), {0, 0});
  const AdaptedNorm same = residue_link(w, w);
  CHECK(same.level() == 0);
  CHECK(same.values() == std::vector<Rational>{0, 0});
  const AdaptedNorm eps = residue_link(w, AdaptedNorm(1, kZero, id2(), {0, Rational(1, 3)}));
  CHECK(eps.values() == std::vector<Rational>{0, Rational(1, 3)});
  CHECK(eps.frame() == id2());
  // w' adapted only to its own frame (1, 1), (0, 1): residue frame is the reduction
  AdaptedNorm wp(1, kZero, kmat2("1", "0", "1", "1"), {1, 0});
  const AdaptedNorm link = residue_link(w, wp);
  CHECK(link.frame() == kmat2("1", "0", "1", "1"));
  CHECK(link.values() == std::vector<Rational>{1, 0});
  AdaptedNorm far(1, kZero, kmat2("1", "0", "1/t", "1"), {1, 0});
  CHECK_THROWS_AS(residue_link(AdaptedNorm(1, kZero, kmat2("1", "1/t^2", "0", "1"), {0, 5}), far),
                  BuildingError);
}

TEST_CASE("scaling equivalence") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const PointP1 p = testing::random_place(rng);
    const AdaptedNorm w = testing::random_norm(rng, 2, p, 1, false);
    KMat f = w.frame();
    std::vector<Rational> c = w.values();
    const RationalFunction s = testing::random_scalar(rng, p, -3, 3);
    for (int i = 0; i < 2; ++i) f(i, 0) = f(i, 0) * s;
    c[0] += val_int(s, p);
    CHECK(norm_eq(w, AdaptedNorm(1, p, f, c)));
  }
}
