// Building-valued support maps on a divisorial fan.
//
// Conventions. On a maximal divisor D and a point P of its locus, h_P on D_P is
// given by a piece (frame b_i, characters u_i, offsets c_i):
//     h_P(x)(sum l_i b_i) = min_i (val_P(l_i) + <u_i, x> + c_i).
// Its linear part on tail(D) is the level-0 norm with values <u_i, w>.
// A section e of weight u satisfies <u, v> <= h_P(v)(e) at every vertex v.
#pragma once

#include "tvb/building.hpp"
#include "tvb/divisorial_fan.hpp"
#include "tvb/report.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvb {

class SupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Piece {
  KMat frame;
  std::vector<RatVec> characters;
  std::vector<Rational> offsets;

  int rank() const { return static_cast<int>(frame.cols()); }
};

/// The data attached to one maximal divisor: a designated piece used at every
/// point without a local piece, local pieces, and the declared exceptional points
/// where the designated piece is not required to agree.
struct DivisorPieces {
  std::string divisor;
  Piece generic;
  std::map<PointP1, Piece> local;
  std::vector<PointP1> exceptional;
};

struct SupportMap {
  DivisorialFan fan;
  int rank = 0;
  std::vector<DivisorPieces> pieces;

  const DivisorPieces& pieces_for(const std::string& divisor) const;
  /// Local piece at p if present, else the designated one.
  const Piece& piece_at(const std::string& divisor, const PointP1& p) const;
  /// Maximal divisors of the fan in file order.
  std::vector<const PPDivisor*> maximal_divisors() const;
  /// Explicit fan points, local and exceptional points, poles of the designated
  /// frames and of their transition matrices, plus one fresh point.
  std::vector<PointP1> check_points() const;
  PointP1 generic_point() const;
};

/// Absorbs integral parts of local offsets into the frame (b <- pi^{-floor c} b)
/// and checks shapes. Designated pieces must have zero offsets.
void normalize(SupportMap& h);

/// Level-1 norm h_P(x) of divisor `divisor`; x must lie in D_P.
AdaptedNorm piece_norm(const SupportMap& h, const std::string& divisor, const PointP1& p, const RatVec& x);
/// Level-0 norm lin(h_P)(w) for w in tail(D).
AdaptedNorm piece_ray_norm(const SupportMap& h, const std::string& divisor, const PointP1& p, const RatVec& w);

/// h_P(x)(e) using any maximal cell containing x.
ExtRational evaluate(const SupportMap& h, const PointP1& p, const RatVec& x, const KVec& e);

Report validate_support(const SupportMap& h);

struct LinearPiece {
  Cone cone;
  KMat frame;
  std::vector<RatVec> characters;
};

/// Per maximal tail cone, the level-0 piece of the linear part.
std::vector<LinearPiece> linear_part(const SupportMap& h);

struct ResiduePiece {
  Cone cone;
  RatMat frame;
  std::vector<RatVec> characters;
};

/// The piecewise linear map on the tail fan valued in norms on the residue
/// space of the lattice h_P(0). Frames are in coordinates of the residues of
/// lattice_from_norm(h_P(0)).generators, with h_P(0) taken from the first
/// maximal divisor. Requires S_P = tail fan and integral h_P(0).
std::vector<ResiduePiece> special_fiber_map(const SupportMap& h, const PointP1& p);

struct WeightSummand {
  int index = 0;
  KVec frame_vector;
  std::vector<RationalFunction> coefficients;
};

/// Sections over X(D) of weight u: sum_i L(D(u_i - u)) b_i over the admissible i.
/// Requires D maximal with complete locus.
std::vector<WeightSummand> weight_module(const SupportMap& h, const std::string& divisor, const RatVec& u);

/// Lattices {e : h_P(v)(e) >= <u, v>} of D1 and D2 agree at every vertex v of
/// D1_P cap D2_P, and the subspaces {e : lin(h)(w)(e) >= <u, w>} agree on the
/// shared tail rays. `witness` receives the first failure.
bool check_transition(const SupportMap& h, const std::string& d1, const std::string& d2, const RatVec& u,
                      const PointP1& p, std::string* witness = nullptr);

/// The lattice {e : h_P(v)(e) >= <u, v>} for the piece of D at P.
LatticeRep weight_lattice(const SupportMap& h, const std::string& divisor, const PointP1& p, const RatVec& v,
                          const RatVec& u);

/// phi : E -> E' (r' x r over K) respects the support maps on the same fan.
bool is_morphism(const KMat& phi, const SupportMap& source, const SupportMap& target, std::string* witness = nullptr);

/// Rational poles of the entries plus infinity.
std::vector<PointP1> special_points(const KMat& m);

}  // namespace tvb
