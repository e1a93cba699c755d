// Exact rational polyhedral geometry in small ambient dimension.
//
// Representation conversion is done by combinatorial double description:
// extreme rays are enumerated from (d-1)-subsets of tight constraints and
// facets from (k-1)-subsets of generators. That is exponential in general but
// exact and adequate for the ambient dimensions this library is built for
// (kMaxAmbientDim). Every value is canonical after construction: rays and
// normals are primitive integer vectors, lists are sorted lexicographically.
#pragma once

#include "tvb/ext_rational.hpp"
#include "tvb/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvb {

inline constexpr int kMaxAmbientDim = 5;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polyhedral cone {x : <a, x> >= 0 for all inner normals a}.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(int dim, const std::vector<RatVec>& generators);
  static Cone from_inequalities(int dim, const std::vector<RatVec>& inner_normals);
  static Cone zero(int dim);
  static Cone full(int dim);

  int ambient_dim() const { return dim_; }
  /// Extreme rays of the pointed part (primitive, sorted).
  const std::vector<RatVec>& rays() const { return rays_; }
  /// Basis of the lineality space (empty iff the cone is strongly convex).
  const std::vector<RatVec>& lineality() const { return lineality_; }
  /// rays() together with +/- every lineality basis vector.
  std::vector<RatVec> generators() const;
  /// Canonical inner normals; an implicit equation appears as a +/- pair.
  const std::vector<RatVec>& inequalities() const { return inequalities_; }

  bool is_pointed() const { return lineality_.empty(); }
  /// Dimension of the linear span.
  int dim() const { return span_dim_; }
  bool is_full_dimensional() const { return span_dim_ == dim_; }

  bool contains(const RatVec& x) const;
  bool contains(const Cone& other) const;
  /// A point of the relative interior (sum of generators).
  RatVec relative_interior_point() const;

  friend bool operator==(const Cone& a, const Cone& b);
  /// Total order: dimension first, then canonical data.
  friend bool operator<(const Cone& a, const Cone& b);

  std::string describe() const;

 private:
  int dim_ = 0;
  int span_dim_ = 0;
  std::vector<RatVec> rays_;
  std::vector<RatVec> lineality_;
  std::vector<RatVec> inequalities_;
};

/// Halfspace {x : <normal, x> >= offset}.
struct Halfspace {
  RatVec normal;
  Rational offset;
};

/// Nonempty pointed polyhedron conv(vertices) + cone(rays).
class Polyhedron {
 public:
  Polyhedron() = default;

  /// Throws GeometryError if the result contains a line or no vertices are given.
  static Polyhedron from_vertices_rays(int dim, const std::vector<RatVec>& vertices,
                                       const std::vector<RatVec>& rays = {});
  /// Returns nullopt when the halfspaces have empty intersection.
  static std::optional<Polyhedron> from_halfspaces(int dim, const std::vector<Halfspace>& halfspaces);
  /// The cone viewed as a polyhedron with the single vertex 0. Must be pointed.
  static Polyhedron from_cone(const Cone& cone);
  static Polyhedron point(const RatVec& p);

  int ambient_dim() const { return dim_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<RatVec>& rays() const { return rays_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  bool is_bounded() const { return rays_.empty(); }
  bool contains(const RatVec& x) const;
  bool contains(const Polyhedron& other) const;
  RatVec relative_interior_point() const;
  /// Affine dimension.
  int dim() const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b);
  friend bool operator<(const Polyhedron& a, const Polyhedron& b);

  std::string describe() const;

  /// cone_over(*this, 1), kept from construction.
  const Cone& homogenization() const { return hom_; }

 private:
  static Polyhedron from_homogenization(int dim, Cone hom);

  int dim_ = 0;
  Cone hom_;
  std::vector<RatVec> vertices_;
  std::vector<RatVec> rays_;
  std::vector<Halfspace> halfspaces_;
};

Cone tail_cone(const Polyhedron& poly);
Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);
/// min <u, v> over the polyhedron, or -infinity off the dual of the tail cone.
ExtRational eval_u(const RatVec& u, const Polyhedron& poly);
Cone dual_cone(const Cone& cone);
/// Cone in one higher dimension generated by (v, height) and (r, 0).
Cone cone_over(const Polyhedron& poly, int height);
std::optional<Polyhedron> intersect(const Polyhedron& a, const Polyhedron& b);
Cone intersect(const Cone& a, const Cone& b);
bool is_face(const Polyhedron& face, const Polyhedron& poly);
bool is_face(const Cone& face, const Cone& cone);
/// All nonempty faces including the polyhedron itself, sorted.
std::vector<Polyhedron> faces(const Polyhedron& poly);
std::vector<Cone> faces(const Cone& cone);
/// Primitive ray generators extend to a Z-basis of Z^n.
bool is_smooth_cone(const Cone& cone);
/// Unimodular integer n x n matrix whose first columns are the given integer
/// vectors. Throws GeometryError unless they extend to a basis of Z^n.
RatMat complete_to_basis(const std::vector<RatVec>& vectors, int n);
/// Points x with (x, height) in the cone, as a polyhedron in one lower dimension.
std::optional<Polyhedron> slice_at_height(const Cone& cone, const Rational& height);

/// Face-closed collection of cones.
struct Fan {
  int dim = 0;
  std::vector<Cone> cones;

  /// Closure under faces of the given cones, deduplicated and sorted by dimension.
  static Fan from_maximal(int dim, const std::vector<Cone>& cones);
  std::vector<Cone> maximal_cones() const;
  std::vector<RatVec> rays() const;
  /// Pairwise intersections are faces of both; face closure holds.
  std::vector<std::string> validate() const;
  /// Support covers the whole space (checked on a sign-pattern probe grid plus
  /// facet adjacency).
  bool is_complete() const;
  bool contains_cone(const Cone& c) const;
  /// Some maximal cone containing x, if any.
  std::optional<Cone> locate(const RatVec& x) const;
};

/// Face-closed collection of polyhedra.
struct PolyhedralComplex {
  int dim = 0;
  std::vector<Polyhedron> cells;

  static PolyhedralComplex from_cells(int dim, const std::vector<Polyhedron>& cells);
  std::vector<Polyhedron> maximal_cells() const;
  std::vector<RatVec> vertices() const;
  std::vector<std::string> validate() const;
  Fan tail_fan() const;
  bool contains_cell(const Polyhedron& p) const;
};

bool same_cells(const PolyhedralComplex& a, const PolyhedralComplex& b);

}  // namespace tvb
