// Points of the extended building of GL(E), E = K^r, K = Q(t), given in
// adapted form: a frame (basis of E) and the norm value of each frame vector.
#pragma once

#include "tvb/curve.hpp"
#include "tvb/ext_rational.hpp"
#include "tvb/rational_function.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tvb {

class BuildingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Level-m additive norm at `place` adapted to the columns of `frame`:
/// w(sum l_i b_i) = min_i (m * val(l_i) + c_i). Level 0 ignores the place.
class AdaptedNorm {
 public:
  AdaptedNorm() = default;
  /// Throws BuildingError if the frame is singular or sizes disagree.
  AdaptedNorm(Rational level, PointP1 place, KMat frame, std::vector<Rational> values);

  static AdaptedNorm zero_valuation(int rank);

  const Rational& level() const { return level_; }
  const PointP1& place() const { return place_; }
  const KMat& frame() const { return frame_; }
  const KMat& frame_inverse() const { return inverse_; }
  const std::vector<Rational>& values() const { return values_; }
  int rank() const { return static_cast<int>(values_.size()); }
  /// All values integral.
  bool is_integral() const;

  std::string describe() const;

 private:
  Rational level_ = 0;
  PointP1 place_ = PointP1::at(0);
  KMat frame_;
  KMat inverse_;
  std::vector<Rational> values_;
};

/// +infinity iff e = 0.
ExtRational norm_eval(const AdaptedNorm& w, const KVec& e);

/// w1(e) <= w2(e) for all e, decided on the frame of w1.
bool norm_leq(const AdaptedNorm& w1, const AdaptedNorm& w2);
bool norm_eq(const AdaptedNorm& w1, const AdaptedNorm& w2);

/// The same norm presented in `frame` if it is adapted to it.
std::optional<AdaptedNorm> adapt_to(const AdaptedNorm& w, const KMat& frame);

/// O_P-lattice spanned by the columns of `generators`.
struct LatticeRep {
  PointP1 place;
  KMat generators;
};

/// Generators pi^{-c_i} b_i. Requires level 1 and integral values.
LatticeRep lattice_from_norm(const AdaptedNorm& w);
AdaptedNorm norm_from_lattice(const LatticeRep& lattice);

bool lattice_contains(const LatticeRep& lattice, const KVec& e);
bool lattice_eq(const LatticeRep& a, const LatticeRep& b);

/// Local Smith form over O_P: left * a * right = diag(pi^{exponents}) (rectangular,
/// zero beyond `rank`), with left and right invertible over O_P.
struct LocalSmith {
  KMat left;
  KMat right;
  std::vector<int> exponents;
  int rank = 0;
};
LocalSmith local_smith(const KMat& a, const PointP1& place);

LatticeRep lattice_intersect(const LatticeRep& a, const LatticeRep& b);
/// A frame to which both lattices are adapted.
KMat common_frame(const LatticeRep& a, const LatticeRep& b);

/// pi_P^k (k may be negative).
RationalFunction uniformizer_power(const PointP1& place, int k);

/// Reduction modulo the maximal ideal of a matrix over O_P.
RatMat residue_matrix(const KMat& a, const PointP1& place);

/// Level-0 norm on the residue space of the lattice of w (coordinates with
/// respect to the generators of lattice_from_norm(w)), with values
/// w'(b_i) - w(b_i) on a common frame. Throws BuildingError if w and w' share
/// no frame among their two presentations.
AdaptedNorm residue_link(const AdaptedNorm& w, const AdaptedNorm& w_prime);
/// Same, computed in a given frame adapted to both.
AdaptedNorm residue_link(const AdaptedNorm& w, const AdaptedNorm& w_prime, const KMat& frame);

}  // namespace tvb
