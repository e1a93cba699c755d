// Proper polyhedral divisors on P^1 and divisorial fans.
#pragma once

#include "tvb/curve.hpp"
#include "tvb/polyhedral.hpp"
#include "tvb/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tvb {

/// sum D_P (x) P. Points without an explicit entry carry the tail cone;
/// an explicit nullopt marks a point outside the locus.
struct PPDivisor {
  std::string name;
  Cone tail;
  std::map<PointP1, std::optional<Polyhedron>> coefficients;

  int lattice_rank() const { return tail.ambient_dim(); }
  /// Coefficient at P (the tail polyhedron when not explicit).
  std::optional<Polyhedron> at(const PointP1& p) const;
  std::vector<PointP1> explicit_points() const;
};

struct Locus {
  bool complete = true;
  std::vector<PointP1> removed;
};

Locus locus(const PPDivisor& d);

/// D(u) = sum eval_u(D_P) P over the locus. Throws GeometryError unless u is in tail^dual.
DivisorOnY eval_divisor(const PPDivisor& d, const RatVec& u);

/// Structural checks plus semiample and big (complete locus only).
Report validate_pp(const PPDivisor& d);

/// Same tail and same coefficient (or emptiness) at every point.
bool same_divisor(const PPDivisor& a, const PPDivisor& b);
PPDivisor intersect(const PPDivisor& a, const PPDivisor& b);
/// Combinatorial face check: tail face of tail and coefficientwise faces
/// (an empty coefficient is allowed on the smaller divisor).
bool is_face(const PPDivisor& face, const PPDivisor& d);

struct DivisorialFan {
  int lattice_rank = 0;
  std::vector<PPDivisor> divisors;

  std::vector<PointP1> explicit_points() const;
  /// Divisors not a proper face of another member.
  std::vector<const PPDivisor*> maximal_divisors() const;
  const PPDivisor* find(const std::string& name) const;
};

Report validate_fan(const DivisorialFan& s);
PolyhedralComplex slice_at(const DivisorialFan& s, const PointP1& p);
Fan tail_fan(const DivisorialFan& s);
/// Cones over the cells of S_P at height 1 together with tail_fan x {0}.
Fan slice_cone_fan(const DivisorialFan& s, const PointP1& p);

}  // namespace tvb
