#include "doctest.h"
#include "tvb/divisorial_fan.hpp"

using namespace tvb;

namespace {

const PointP1 kZero = PointP1::at(0);
const PointP1 kOne = PointP1::at(1);
const PointP1 kInf = PointP1::infinity();

RatVec v1(const Rational& a) { return make_vec({a}); }

Cone ray1(int s) { return Cone::from_generators(1, {v1(s)}); }

Polyhedron half(const Rational& start, int dir) { return Polyhedron::from_vertices_rays(1, {v1(start)}, {v1(dir)}); }

Polyhedron seg(const Rational& a, const Rational& b) { return Polyhedron::from_vertices_rays(1, {v1(a), v1(b)}); }

PPDivisor make(const std::string& name, Cone tail, std::map<PointP1, std::optional<Polyhedron>> coeffs) {
  return PPDivisor{name, std::move(tail), std::move(coeffs)};
}

// Three cells (-inf,0], [0,1], [1,inf) at 0, everything removed at infinity.
DivisorialFan line_fan() {
  DivisorialFan s;
  s.lattice_rank = 1;
  s.divisors.push_back(make("A", ray1(-1), {{kZero, half(0, -1)}, {kInf, std::nullopt}}));
  s.divisors.push_back(make("B", Cone::zero(1), {{kZero, seg(0, 1)}, {kInf, std::nullopt}}));
  s.divisors.push_back(make("C", ray1(1), {{kZero, half(1, 1)}, {kInf, std::nullopt}}));
  s.divisors.push_back(make("AB", Cone::zero(1), {{kZero, Polyhedron::point(v1(0))}, {kInf, std::nullopt}}));
  s.divisors.push_back(make("BC", Cone::zero(1), {{kZero, Polyhedron::point(v1(1))}, {kInf, std::nullopt}}));
  s.divisors.push_back(make("O", Cone::zero(1), {{kZero, std::nullopt}, {kInf, std::nullopt}}));
  return s;
}

}  // namespace

TEST_CASE("locus") {
  CHECK(locus(make("D", ray1(1), {{kZero, half(1, 1)}})).complete);
  auto l = locus(make("D", ray1(1), {{kInf, std::nullopt}}));
  CHECK_FALSE(l.complete);
  CHECK(l.removed == std::vector<PointP1>{kInf});
  auto l2 = locus(make("D", ray1(1), {{kZero, std::nullopt}, {kOne, std::nullopt}}));
  CHECK(l2.removed == std::vector<PointP1>{kZero, kOne});
}

TEST_CASE("evaluation") {
  const PPDivisor d = make("D", ray1(1), {{kZero, half(1, 1)}, {kOne, half(Rational(-1, 2), 1)}});
  CHECK(eval_divisor(d, v1(0)).empty());
  CHECK(eval_divisor(d, v1(1)) == DivisorOnY{{kZero, 1}, {kOne, Rational(-1, 2)}});
  CHECK(eval_divisor(d, v1(2)) == DivisorOnY{{kZero, 2}, {kOne, -1}});
  CHECK_THROWS_AS(eval_divisor(d, v1(-1)), GeometryError);
}

TEST_CASE("pp conditions") {
  // trivial coefficients on an affine locus
  CHECK(validate_pp(make("D", ray1(1), {{kInf, std::nullopt}})).ok());
  // trivial coefficients on all of P^1 are not big
  Report trivial = validate_pp(make("D", ray1(1), {}));
  CHECK_FALSE(trivial.ok());
  CHECK_FALSE(trivial.check("big").ok);
  CHECK(validate_pp(make("D", ray1(1), {{kZero, half(Rational(-1, 2), 1)}, {kInf, half(1, 1)}})).ok());
  // deg D(1) = 0 - 1 < 0 for conv{0,1} at 0 and conv{-1,0} at infinity
  Report neg = validate_pp(make("D", Cone::zero(1), {{kZero, seg(0, 1)}, {kInf, seg(-1, 0)}}));
  CHECK_FALSE(neg.check("semiample").ok);
  Report bad = validate_pp(make("D", Cone::zero(1), {{kZero, Polyhedron::point(v1(-1))}}));
  CHECK_FALSE(bad.check("semiample").ok);
  CHECK(bad.check("semiample").witnesses.size() == 1);
  Report wrong_tail = validate_pp(make("D", ray1(1), {{kZero, seg(0, 1)}}));
  CHECK_FALSE(wrong_tail.check("structure").ok);
}

TEST_CASE("fan validation") {
  DivisorialFan single;
  single.lattice_rank = 1;
  single.divisors.push_back(make("D", ray1(1), {{kZero, half(1, 1)}, {kInf, std::nullopt}}));
  CHECK(validate_fan(single).ok());
  CHECK(validate_fan(line_fan()).ok());

  DivisorialFan overlap;
  overlap.lattice_rank = 1;
  overlap.divisors.push_back(make("P", Cone::zero(1), {{kZero, seg(0, 2)}, {kInf, std::nullopt}}));
  overlap.divisors.push_back(make("Q", Cone::zero(1), {{kZero, seg(1, 3)}, {kInf, std::nullopt}}));
  Report r = validate_fan(overlap);
  CHECK_FALSE(r.ok());
  const auto& face = r.check("combinatorial face check");
  CHECK_FALSE(face.ok);
  REQUIRE(face.witnesses.size() == 1);
  CHECK(face.witnesses[0].find("P and Q") != std::string::npos);

  DivisorialFan missing = line_fan();
  missing.divisors.pop_back();
  CHECK_FALSE(validate_fan(missing).check("intersections listed").ok);
}

TEST_CASE("slices") {
  const DivisorialFan s = line_fan();
  const PolyhedralComplex generic = slice_at(s, PointP1::at(5));
  CHECK(generic.tail_fan().cones == tail_fan(s).cones);
  CHECK(generic.cells.size() == 3);
  const PolyhedralComplex at0 = slice_at(s, kZero);
  CHECK(at0.maximal_cells().size() == 3);
  CHECK(at0.vertices().size() == 2);
  CHECK(slice_at(s, kInf).cells.empty());
  const auto maximal = s.maximal_divisors();
  CHECK(maximal.size() == 3);
}

TEST_CASE("cone over a slice") {
  const DivisorialFan s = line_fan();
  const Fan c = slice_cone_fan(s, kZero);
  CHECK(c.validate().empty());
  CHECK(c.is_complete() == false);  // only the upper half plane
  CHECK(c.maximal_cones().size() == 3);
  CHECK(c.rays() == std::vector<RatVec>{make_vec({-1, 0}), make_vec({0, 1}), make_vec({1, 0}), make_vec({1, 1})});
  // vertices of S_P correspond to rays of c(S_P) off the boundary
  int lifted = 0;
  for (const auto& r : c.rays())
    if (r(1) > 0) ++lifted;
  CHECK(lifted == static_cast<int>(slice_at(s, kZero).vertices().size()));
  // generic point: product structure
  const Fan g = slice_cone_fan(s, PointP1::at(7));
  CHECK(g.rays() == std::vector<RatVec>{make_vec({-1, 0}), make_vec({0, 1}), make_vec({1, 0})});
  // the complete 1-D tail fan is its own tail fan
  CHECK(tail_fan(s).is_complete());
  CHECK(tail_fan(s).cones.size() == 3);
}
