// Global sections, splitting, toric downgrades and cotangent support maps.
#pragma once

#include "tvb/support_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tvb {

// ---------------------------------------------------------------- sections

struct SectionSpace {
  RatVec weight;
  std::vector<KVec> basis;
  int dimension() const { return static_cast<int>(basis.size()); }
};

/// H^0(X, E)_u = {e : <u, v> <= h_P(v)(e) at every vertex v of every S_P and
/// <u, w> <= lin(h)(w)(e) on every tail ray}. Requires a complete tail fan.
/// Throws SupportError when the space is unbounded.
SectionSpace global_sections(const SupportMap& h, const RatVec& u);

/// Sections of weight u over the union of the given maximal divisors.
SectionSpace sections_over(const SupportMap& h, const std::vector<std::string>& divisors, const RatVec& u);

/// Integral points of the bounding box of all characters, inflated by one.
std::vector<RatVec> weight_box(const SupportMap& h);

/// The vector bundle E^u_Y on Y: generic fibre E_u (columns of reference * subspace,
/// with `subspace` polynomial and saturated away from `points`) and the
/// norms g^u_P(e) = min_v floor(h_P(v)(e) - <u, v>) at the listed points; at all
/// other points the lattice is reference * O^r.
struct BundleOnY {
  RatVec weight;
  KMat reference;
  KMat subspace;
  std::vector<PointP1> points;
  std::vector<AdaptedNorm> norms;  // parallel to points
};

BundleOnY sections_bundle_on_Y(const SupportMap& h, const RatVec& u);
/// dim H^0(Y, E^u_Y).
int h0_on_Y(const BundleOnY& bundle);

// --------------------------------------------------------------- splitting

/// Block-diagonal sum on the same fan.
SupportMap direct_sum(const SupportMap& a, const SupportMap& b);

enum class SplitStatus { Split, NotSplit, Unknown };

struct SplitResult {
  SplitStatus status = SplitStatus::Unknown;
  std::optional<KMat> witness;
  int candidates = 0;  // frames tried in the candidate search
  std::string reason;
};

SplitResult split_check(const SupportMap& h);

/// Every piece norm at every vertex and ray, at every relevant point, is adapted to `frame`.
bool adapted_everywhere(const SupportMap& h, const KMat& frame, std::string* witness = nullptr);

std::string to_string(SplitStatus s);

// ------------------------------------------------------------------- toric

struct KlyachkoCone {
  Cone cone;
  RatMat frame;                    // columns: basis of E_k
  std::vector<RatVec> characters;  // Phi(x)(b_i) = <u_i, x> on the cone
};

/// A toric vector bundle on the complete fan `fan` as a piecewise linear map
/// into the building of E_k = Q^rank, with a primitive linear form `projection`
/// N -> Z whose kernel is N'.
struct KlyachkoInput {
  Fan fan;
  int rank = 0;
  std::vector<KlyachkoCone> cones;
  RatVec projection;

  const KlyachkoCone* cone_data(const Cone& c) const;
};

Report validate_klyachko(const KlyachkoInput& k);

/// The line bundle with character u_sigma on each maximal cone (listed in the
/// order of fan.maximal_cones()).
KlyachkoInput klyachko_line_bundle(const Fan& fan, const std::vector<RatVec>& characters, const RatVec& projection);
KlyachkoInput klyachko_direct_sum(const KlyachkoInput& a, const KlyachkoInput& b);
/// Omega of a smooth complete toric variety: frame m_i, characters -m_i for the
/// dual basis m_i of each maximal cone.
KlyachkoInput klyachko_cotangent(const Fan& fan, const RatVec& projection);

struct Downgrade {
  RatMat coordinates;  // unimodular U with last row the projection; y = U x
  SupportMap support;
};

/// Divisorial fan and support map of the bundle as a T'-variety over P^1, with
/// P+ = 0 and P- = infinity. Divisors are named c<ray indices>.
Downgrade toric_downgrade(const KlyachkoInput& k);

// --------------------------------------------------------------- cotangent

/// Pieces of the cotangent support map at p, one per maximal divisor whose
/// slice at p is nonempty, on E = (M x Z) (x) K with (0, 1) = dt.
/// Throws GeometryError at a non-smooth cone of c(S_P).
std::vector<std::pair<std::string, Piece>> cotangent_slice_map(const DivisorialFan& s, const PointP1& p);

/// The full cotangent support map of X(S): local pieces at the explicit points
/// and infinity, designated pieces from a generic point, and for complete-locus
/// divisors a global frame found by graded generation of the section module.
SupportMap cotangent_support_map(const DivisorialFan& s);

}  // namespace tvb
