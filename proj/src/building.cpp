#include "tvb/building.hpp"

#include "tvb/linalg.hpp"

namespace tvb {

AdaptedNorm::AdaptedNorm(Rational level, PointP1 place, KMat frame, std::vector<Rational> values)
    : level_(std::move(level)), place_(std::move(place)), frame_(std::move(frame)), values_(std::move(values)) {
  if (level_ < 0) throw BuildingError("negative norm level");
  const auto r = static_cast<Eigen::Index>(values_.size());
  if (r == 0 || frame_.rows() != r || frame_.cols() != r)
    throw BuildingError("frame must be a square matrix matching the number of values");
  auto inv = inverse(frame_);
  if (!inv) throw BuildingError("frame is not a basis");
  inverse_ = std::move(*inv);
}

AdaptedNorm AdaptedNorm::zero_valuation(int rank) {
  return AdaptedNorm(0, PointP1::at(0), KMat::Identity(rank, rank), std::vector<Rational>(static_cast<size_t>(rank), 0));
}

bool AdaptedNorm::is_integral() const {
  for (const auto& c : values_)
    if (!tvb::is_integral(c)) return false;
  return true;
}

std::string AdaptedNorm::describe() const {
  std::string s = "level " + to_string(level_);
  if (level_ != 0) s += " at " + to_string(place_);
  s += ": ";
  for (Eigen::Index j = 0; j < frame_.cols(); ++j) {
    if (j) s += ", ";
    s += to_string(KVec(frame_.col(j))) + " -> " + to_string(values_[static_cast<size_t>(j)]);
  }
  return s;
}

namespace {

// Valuation of sum_j m(i, j) e(j) from an unreduced common fraction; zero iff
// the numerator vanishes. Avoids the gcds of reduced arithmetic.
std::optional<int> row_valuation(const KMat& m, Eigen::Index i, const KVec& e, const PointP1& p) {
  // a unique term of least valuation cannot cancel
  int best = 0, attained = 0;
  for (Eigen::Index j = 0; j < e.size(); ++j) {
    if (m(i, j).is_zero() || e(j).is_zero()) continue;
    const int v = val_int(m(i, j), p) + val_int(e(j), p);
    if (attained == 0 || v < best) {
      best = v;
      attained = 1;
    } else if (v == best) {
      ++attained;
    }
  }
  if (attained == 0) return std::nullopt;
  if (attained == 1) return best;
  Polynomial num, den(1);
  for (Eigen::Index j = 0; j < e.size(); ++j) {
    if (m(i, j).is_zero() || e(j).is_zero()) continue;
    const Polynomial n = m(i, j).numerator() * e(j).numerator();
    const Polynomial d = m(i, j).denominator() * e(j).denominator();
    if (d == den) {
      num = num + n;
    } else {
      num = num * d + n * den;
      den = den * d;
    }
  }
  if (num.is_zero()) return std::nullopt;
  return poly_order(num, p) - poly_order(den, p);
}

}  // namespace

ExtRational norm_eval(const AdaptedNorm& w, const KVec& e) {
  if (e.size() != w.rank()) throw BuildingError("vector length does not match norm rank");
  ExtRational best = ExtRational::plus_infinity();
  for (Eigen::Index i = 0; i < w.rank(); ++i) {
    const auto val = row_valuation(w.frame_inverse(), i, e, w.place());
    if (!val) continue;
    Rational v = w.values()[static_cast<size_t>(i)];
    if (w.level() != 0) v += w.level() * *val;
    best = min(best, ExtRational(v));
  }
  return best;
}

namespace {

void check_comparable(const AdaptedNorm& a, const AdaptedNorm& b) {
  if (a.rank() != b.rank()) throw BuildingError("norms of different rank");
  if (a.level() != b.level()) throw BuildingError("norms of different level");
  if (a.level() != 0 && !(a.place() == b.place())) throw BuildingError("norms at different places");
}

}  // namespace

bool norm_leq(const AdaptedNorm& w1, const AdaptedNorm& w2) {
  check_comparable(w1, w2);
  for (Eigen::Index j = 0; j < w1.frame().cols(); ++j)
    if (ExtRational(w1.values()[static_cast<size_t>(j)]) > norm_eval(w2, w1.frame().col(j))) return false;
  return true;
}

bool norm_eq(const AdaptedNorm& w1, const AdaptedNorm& w2) { return norm_leq(w1, w2) && norm_leq(w2, w1); }

std::optional<AdaptedNorm> adapt_to(const AdaptedNorm& w, const KMat& frame) {
  if (frame.rows() != w.rank() || frame.cols() != w.rank()) return std::nullopt;
  if (!inverse(frame)) return std::nullopt;
  std::vector<Rational> values;
  for (Eigen::Index j = 0; j < frame.cols(); ++j) values.push_back(norm_eval(w, frame.col(j)).value());
  AdaptedNorm candidate(w.level(), w.place(), frame, std::move(values));
  if (!norm_eq(candidate, w)) return std::nullopt;
  return candidate;
}

RationalFunction uniformizer_power(const PointP1& place, int k) { return pow(uniformizer(place), k); }

LatticeRep lattice_from_norm(const AdaptedNorm& w) {
  if (w.level() != 1) throw BuildingError("lattices correspond to level-1 norms only");
  if (!w.is_integral()) throw BuildingError("lattice requires integral norm values: " + w.describe());
  KMat gens = w.frame();
  for (Eigen::Index j = 0; j < gens.cols(); ++j) {
    const int c = static_cast<int>(numer(w.values()[static_cast<size_t>(j)]));
    const RationalFunction s = uniformizer_power(w.place(), -c);
    for (Eigen::Index i = 0; i < gens.rows(); ++i) gens(i, j) = gens(i, j) * s;
  }
  return {w.place(), gens};
}

AdaptedNorm norm_from_lattice(const LatticeRep& lattice) {
  return AdaptedNorm(1, lattice.place, lattice.generators,
                     std::vector<Rational>(static_cast<size_t>(lattice.generators.cols()), 0));
}

bool lattice_contains(const LatticeRep& lattice, const KVec& e) {
  const auto coords = solve(lattice.generators, e);
  if (!coords) throw BuildingError("lattice generators are singular");
  return val_at(*coords, lattice.place) >= ExtRational(0);
}

bool lattice_eq(const LatticeRep& a, const LatticeRep& b) {
  if (!(a.place == b.place)) throw BuildingError("lattices at different places");
  return norm_eq(norm_from_lattice(a), norm_from_lattice(b));
}

LocalSmith local_smith(const KMat& a, const PointP1& place) {
  const Eigen::Index n = a.rows(), m = a.cols();
  LocalSmith out;
  KMat d = a;
  out.left = KMat::Identity(n, n);
  out.right = KMat::Identity(m, m);
  for (Eigen::Index k = 0; k < std::min(n, m); ++k) {
    Eigen::Index bi = -1, bj = -1;
    int best = 0;
    for (Eigen::Index i = k; i < n; ++i)
      for (Eigen::Index j = k; j < m; ++j) {
        if (d(i, j).is_zero()) continue;
        const int v = val_int(d(i, j), place);
        if (bi < 0 || v < best) {
          bi = i;
          bj = j;
          best = v;
        }
      }
    if (bi < 0) break;
    d.row(k).swap(d.row(bi));
    out.left.row(k).swap(out.left.row(bi));
    d.col(k).swap(d.col(bj));
    out.right.col(k).swap(out.right.col(bj));
    // scale row k by a unit so that the pivot is exactly pi^best
    const RationalFunction unit = uniformizer_power(place, best) / d(k, k);
    for (Eigen::Index j = 0; j < m; ++j) d(k, j) = d(k, j) * unit;
    for (Eigen::Index j = 0; j < n; ++j) out.left(k, j) = out.left(k, j) * unit;
    const RationalFunction pivot = d(k, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || d(i, k).is_zero()) continue;
      const RationalFunction f = d(i, k) / pivot;
      for (Eigen::Index j = 0; j < m; ++j) d(i, j) = d(i, j) - f * d(k, j);
      for (Eigen::Index j = 0; j < n; ++j) out.left(i, j) = out.left(i, j) - f * out.left(k, j);
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == k || d(k, j).is_zero()) continue;
      const RationalFunction f = d(k, j) / pivot;
      for (Eigen::Index i = 0; i < n; ++i) d(i, j) = d(i, j) - f * d(i, k);
      for (Eigen::Index i = 0; i < m; ++i) out.right(i, j) = out.right(i, j) - f * out.right(i, k);
    }
    out.exponents.push_back(best);
    ++out.rank;
  }
  return out;
}

namespace {

struct IntersectionData {
  KMat frame;
  KMat basis;
};

IntersectionData intersect_data(const LatticeRep& a, const LatticeRep& b) {
  if (!(a.place == b.place)) throw BuildingError("lattices at different places");
  const auto inv_a = inverse(a.generators);
  if (!inv_a) throw BuildingError("lattice generators are singular");
  const KMat rel = multiply(*inv_a, b.generators);
  const LocalSmith s = local_smith(rel, a.place);
  if (s.rank != rel.rows()) throw BuildingError("lattice generators are singular");
  const auto left_inv = inverse(s.left);
  IntersectionData out;
  out.frame = multiply(a.generators, *left_inv);
  out.basis = out.frame;
  for (Eigen::Index j = 0; j < out.basis.cols(); ++j) {
    const int e = std::max(0, s.exponents[static_cast<size_t>(j)]);
    if (e == 0) continue;
    const RationalFunction f = uniformizer_power(a.place, e);
    for (Eigen::Index i = 0; i < out.basis.rows(); ++i) out.basis(i, j) = out.basis(i, j) * f;
  }
  return out;
}

}  // namespace

LatticeRep lattice_intersect(const LatticeRep& a, const LatticeRep& b) { return {a.place, intersect_data(a, b).basis}; }

KMat common_frame(const LatticeRep& a, const LatticeRep& b) { return intersect_data(a, b).frame; }

RatMat residue_matrix(const KMat& a, const PointP1& place) {
  RatMat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = residue_value(a(i, j), place);
  return out;
}

AdaptedNorm residue_link(const AdaptedNorm& w, const AdaptedNorm& w_prime) {
  if (adapt_to(w_prime, w.frame())) return residue_link(w, w_prime, w.frame());
  if (adapt_to(w, w_prime.frame())) return residue_link(w, w_prime, w_prime.frame());
  throw BuildingError("norms are not adapted to a common frame");
}

AdaptedNorm residue_link(const AdaptedNorm& w, const AdaptedNorm& w_prime, const KMat& frame) {
  if (w.level() != 1 || w_prime.level() != 1) throw BuildingError("residue_link needs level-1 norms");
  if (!(w.place() == w_prime.place())) throw BuildingError("residue_link: norms at different places");
  if (!adapt_to(w, frame) || !adapt_to(w_prime, frame)) throw BuildingError("frame is not adapted to both norms");
  const LatticeRep base = lattice_from_norm(w);
  const PointP1& p = w.place();
  KMat scaled = frame;
  std::vector<Rational> values;
  for (Eigen::Index j = 0; j < frame.cols(); ++j) {
    const ExtRational cw = norm_eval(w, frame.col(j));
    const ExtRational cp = norm_eval(w_prime, frame.col(j));
    const int c = static_cast<int>(numer(cw.value()));
    const RationalFunction s = uniformizer_power(p, -c);
    for (Eigen::Index i = 0; i < frame.rows(); ++i) scaled(i, j) = scaled(i, j) * s;
    values.push_back(cp.value() - cw.value());
  }
  const KMat rel = multiply(*inverse(base.generators), scaled);
  const RatMat res = residue_matrix(rel, p);
  return AdaptedNorm(0, p, to_kmat(res), std::move(values));
}

}  // namespace tvb
