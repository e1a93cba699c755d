#include "tvb/divisorial_fan.hpp"

#include <algorithm>

namespace tvb {

std::optional<Polyhedron> PPDivisor::at(const PointP1& p) const {
  auto it = coefficients.find(p);
  if (it != coefficients.end()) return it->second;
  return Polyhedron::from_cone(tail);
}

std::vector<PointP1> PPDivisor::explicit_points() const {
  std::vector<PointP1> out;
  for (const auto& [p, c] : coefficients) out.push_back(p);
  return out;
}

Locus locus(const PPDivisor& d) {
  Locus l;
  for (const auto& [p, c] : d.coefficients)
    if (!c) l.removed.push_back(p);
  l.complete = l.removed.empty();
  return l;
}

DivisorOnY eval_divisor(const PPDivisor& d, const RatVec& u) {
  if (!dual_cone(d.tail).contains(u))
    throw GeometryError("weight " + to_string(u) + " is not in the dual of the tail cone of " + d.name);
  DivisorOnY out;
  for (const auto& [p, c] : d.coefficients) {
    if (!c) continue;
    out[p] = eval_u(u, *c).value();
  }
  return normalized(out);
}

Report validate_pp(const PPDivisor& d) {
  Report r;
  r.check("structure");
  if (!d.tail.is_pointed()) r.fail("structure", "tail cone " + d.tail.describe() + " contains a line");
  for (const auto& [p, c] : d.coefficients) {
    if (!c) continue;
    if (c->ambient_dim() != d.lattice_rank())
      r.fail("structure", "coefficient at " + to_string(p) + " has wrong dimension");
    else if (!(tail_cone(*c) == d.tail))
      r.fail("structure", "coefficient at " + to_string(p) + " has tail " + tail_cone(*c).describe() +
                              " instead of " + d.tail.describe());
  }
  r.check("semiample");
  r.check("big");
  if (!r.ok() || !locus(d).complete) return r;
  const Cone dual = dual_cone(d.tail);
  for (const auto& u : dual.generators()) {
    const Rational deg = degree(eval_divisor(d, u));
    if (deg < 0) r.fail("semiample", "deg D(" + to_string(u) + ") = " + to_string(deg) + " < 0");
  }
  const RatVec interior = primitive(dual.relative_interior_point());
  const Rational deg = degree(eval_divisor(d, interior));
  if (deg <= 0) r.fail("big", "deg D(" + to_string(interior) + ") = " + to_string(deg) + " at an interior weight");
  return r;
}

namespace {

std::vector<PointP1> union_points(const PPDivisor& a, const PPDivisor& b) {
  std::vector<PointP1> pts = a.explicit_points();
  for (const auto& p : b.explicit_points())
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

bool same_divisor(const PPDivisor& a, const PPDivisor& b) {
  if (!(a.tail == b.tail)) return false;
  for (const auto& p : union_points(a, b)) {
    const auto x = a.at(p), y = b.at(p);
    if (x.has_value() != y.has_value()) return false;
    if (x && !(*x == *y)) return false;
  }
  return true;
}

PPDivisor intersect(const PPDivisor& a, const PPDivisor& b) {
  PPDivisor out;
  out.name = a.name + "&" + b.name;
  out.tail = intersect(a.tail, b.tail);
  for (const auto& p : union_points(a, b)) {
    const auto x = a.at(p), y = b.at(p);
    out.coefficients[p] = (x && y) ? intersect(*x, *y) : std::nullopt;
  }
  return out;
}

bool is_face(const PPDivisor& face, const PPDivisor& d) {
  if (!is_face(face.tail, d.tail)) return false;
  for (const auto& p : union_points(face, d)) {
    const auto f = face.at(p), g = d.at(p);
    if (!f) continue;
    if (!g || !is_face(*f, *g)) return false;
  }
  return true;
}

std::vector<PointP1> DivisorialFan::explicit_points() const {
  std::vector<PointP1> pts;
  for (const auto& d : divisors)
    for (const auto& p : d.explicit_points())
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<const PPDivisor*> DivisorialFan::maximal_divisors() const {
  std::vector<const PPDivisor*> out;
  for (const auto& d : divisors) {
    bool maximal = true;
    for (const auto& e : divisors)
      if (&e != &d && !same_divisor(d, e) && is_face(d, e)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(&d);
  }
  return out;
}

const PPDivisor* DivisorialFan::find(const std::string& name) const {
  for (const auto& d : divisors)
    if (d.name == name) return &d;
  return nullptr;
}

Report validate_fan(const DivisorialFan& s) {
  Report r;
  r.check("combinatorial face check");
  r.check("intersections listed");
  r.check("slices");
  for (const auto& d : s.divisors) {
    if (d.lattice_rank() != s.lattice_rank) r.fail("structure", d.name + " has the wrong lattice rank");
    r.merge(validate_pp(d), "pp " + d.name + ": ");
  }
  if (!r.ok()) return r;
  for (size_t i = 0; i < s.divisors.size(); ++i)
    for (size_t j = i + 1; j < s.divisors.size(); ++j) {
      const auto& a = s.divisors[i];
      const auto& b = s.divisors[j];
      const PPDivisor x = intersect(a, b);
      if (!is_face(x, a) || !is_face(x, b))
        r.fail("combinatorial face check", a.name + " and " + b.name + " do not meet in a common face");
      bool listed = false;
      for (const auto& m : s.divisors)
        if (same_divisor(m, x)) listed = true;
      if (!listed) r.fail("intersections listed", "intersection of " + a.name + " and " + b.name + " is not in the fan");
    }
  std::vector<PointP1> pts = s.explicit_points();
  pts.push_back(fresh_point(pts));
  for (const auto& p : pts)
    for (const auto& e : slice_at(s, p).validate()) r.fail("slices", "slice at " + to_string(p) + ": " + e);
  for (const auto& e : tail_fan(s).validate()) r.fail("slices", "tail fan: " + e);
  return r;
}

PolyhedralComplex slice_at(const DivisorialFan& s, const PointP1& p) {
  std::vector<Polyhedron> cells;
  for (const auto& d : s.divisors)
    if (auto c = d.at(p)) cells.push_back(*c);
  return PolyhedralComplex::from_cells(s.lattice_rank, cells);
}

Fan tail_fan(const DivisorialFan& s) {
  std::vector<Cone> tails;
  for (const auto& d : s.divisors) tails.push_back(d.tail);
  return Fan::from_maximal(s.lattice_rank, tails);
}

Fan slice_cone_fan(const DivisorialFan& s, const PointP1& p) {
  std::vector<Cone> cones;
  for (const auto& cell : slice_at(s, p).maximal_cells()) cones.push_back(cone_over(cell, 1));
  for (const auto& t : tail_fan(s).maximal_cones()) {
    std::vector<RatVec> gens;
    for (const auto& g : t.generators()) {
      RatVec h = RatVec::Zero(s.lattice_rank + 1);
      h.head(s.lattice_rank) = g;
      gens.push_back(h);
    }
    cones.push_back(Cone::from_generators(s.lattice_rank + 1, gens));
  }
  return Fan::from_maximal(s.lattice_rank + 1, cones);
}

}  // namespace tvb
