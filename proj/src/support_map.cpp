#include "tvb/support_map.hpp"

#include "tvb/linalg.hpp"

#include <algorithm>
#include <set>

namespace tvb {

namespace {

void add_point(std::vector<PointP1>& pts, const PointP1& p) {
  if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
}

std::vector<Rational> piece_values(const Piece& piece, const RatVec& x, bool with_offsets) {
  std::vector<Rational> out;
  for (int i = 0; i < piece.rank(); ++i) {
    Rational v = dot(piece.characters[static_cast<size_t>(i)], x);
    if (with_offsets) v += piece.offsets[static_cast<size_t>(i)];
    out.push_back(v);
  }
  return out;
}

AdaptedNorm norm_of(const Piece& piece, const PointP1& p, const RatVec& x) {
  return AdaptedNorm(1, p, piece.frame, piece_values(piece, x, true));
}

AdaptedNorm ray_norm_of(const Piece& piece, const PointP1& p, const RatVec& w) {
  return AdaptedNorm(0, p, piece.frame, piece_values(piece, w, false));
}

const PPDivisor& divisor_named(const SupportMap& h, const std::string& name) {
  const PPDivisor* d = h.fan.find(name);
  if (!d) throw SupportError("unknown divisor " + name);
  return *d;
}

Polyhedron cell_of(const SupportMap& h, const std::string& name, const PointP1& p) {
  auto c = divisor_named(h, name).at(p);
  if (!c) throw SupportError(to_string(p) + " is outside the locus of " + name);
  return *c;
}

std::string at_text(const std::string& what, const PointP1& p, const RatVec& x) {
  return what + " at P=" + to_string(p) + ", x=" + to_string(x);
}

bool same_span(const KMat& a, const KMat& b) {
  if (a.cols() == 0 || b.cols() == 0) return a.cols() == b.cols() || (rank(a) == 0 && rank(b) == 0);
  KMat both(a.rows(), a.cols() + b.cols());
  both.leftCols(a.cols()) = a;
  both.rightCols(b.cols()) = b;
  const int ra = rank(a);
  return ra == rank(b) && ra == rank(both);
}

KMat columns(const KMat& m, const std::vector<int>& idx) {
  KMat out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(idx[j]);
  return out;
}

std::vector<PointP1> rational_poles(const KMat& m) {
  std::vector<PointP1> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (const auto& [root, mult] : rational_roots(m(i, j).denominator()).roots) add_point(out, PointP1::at(root));
  return out;
}

}  // namespace

std::vector<PointP1> special_points(const KMat& m) {
  std::vector<PointP1> out = rational_poles(m);
  add_point(out, PointP1::infinity());
  std::sort(out.begin(), out.end());
  return out;
}

const DivisorPieces& SupportMap::pieces_for(const std::string& divisor) const {
  for (const auto& p : pieces)
    if (p.divisor == divisor) return p;
  throw SupportError("no pieces for divisor " + divisor);
}

const Piece& SupportMap::piece_at(const std::string& divisor, const PointP1& p) const {
  const DivisorPieces& dp = pieces_for(divisor);
  auto it = dp.local.find(p);
  return it == dp.local.end() ? dp.generic : it->second;
}

std::vector<const PPDivisor*> SupportMap::maximal_divisors() const { return fan.maximal_divisors(); }

namespace {

// Places where designated pieces can change behaviour: poles of the frames,
// their inverses and the pairwise transition matrices.
std::vector<PointP1> designated_special_points(const SupportMap& h) {
  std::vector<PointP1> out;
  std::vector<KMat> inverses;
  for (const auto& dp : h.pieces) {
    for (const auto& p : rational_poles(dp.generic.frame)) add_point(out, p);
    auto inv = inverse(dp.generic.frame);
    if (!inv) continue;
    for (const auto& p : rational_poles(*inv)) add_point(out, p);
    for (const auto& other : h.pieces)
      for (const auto& p : rational_poles(multiply(*inv, other.generic.frame))) add_point(out, p);
  }
  return out;
}

}  // namespace

PointP1 SupportMap::generic_point() const {
  std::vector<PointP1> avoid = fan.explicit_points();
  for (const auto& dp : pieces) {
    for (const auto& [p, piece] : dp.local) add_point(avoid, p);
    for (const auto& p : dp.exceptional) add_point(avoid, p);
  }
  for (const auto& p : designated_special_points(*this)) add_point(avoid, p);
  return fresh_point(avoid);
}

std::vector<PointP1> SupportMap::check_points() const {
  std::vector<PointP1> pts = fan.explicit_points();
  for (const auto& dp : pieces) {
    for (const auto& [p, piece] : dp.local) add_point(pts, p);
    for (const auto& p : dp.exceptional) add_point(pts, p);
  }
  for (const auto& p : designated_special_points(*this)) add_point(pts, p);
  add_point(pts, generic_point());
  std::sort(pts.begin(), pts.end());
  return pts;
}

void normalize(SupportMap& h) {
  const int n = h.fan.lattice_rank;
  auto check_shape = [&](Piece& piece, const std::string& where) {
    if (piece.frame.rows() != h.rank || piece.frame.cols() != h.rank)
      throw SupportError(where + ": frame must be " + std::to_string(h.rank) + "x" + std::to_string(h.rank));
    if (static_cast<int>(piece.characters.size()) != h.rank)
      throw SupportError(where + ": expected " + std::to_string(h.rank) + " characters");
    for (const auto& u : piece.characters)
      if (u.size() != n) throw SupportError(where + ": characters must have length " + std::to_string(n));
    if (piece.offsets.empty()) piece.offsets.assign(static_cast<size_t>(h.rank), Rational(0));
    if (static_cast<int>(piece.offsets.size()) != h.rank) throw SupportError(where + ": wrong number of offsets");
    if (!inverse(piece.frame)) throw SupportError(where + ": frame is singular");
  };
  for (auto& dp : h.pieces) {
    check_shape(dp.generic, dp.divisor);
    for (const auto& c : dp.generic.offsets)
      if (c != 0) throw SupportError(dp.divisor + ": the designated piece must have zero offsets");
    for (auto& [p, piece] : dp.local) {
      check_shape(piece, dp.divisor + " at " + to_string(p));
      for (int i = 0; i < h.rank; ++i) {
        Rational& c = piece.offsets[static_cast<size_t>(i)];
        const Integer k = floor_int(c);
        if (k == 0) continue;
        const RationalFunction s = uniformizer_power(p, -static_cast<int>(k));
        for (Eigen::Index r = 0; r < piece.frame.rows(); ++r) piece.frame(r, i) = piece.frame(r, i) * s;
        c -= Rational(k);
      }
    }
    std::sort(dp.exceptional.begin(), dp.exceptional.end());
    dp.exceptional.erase(std::unique(dp.exceptional.begin(), dp.exceptional.end()), dp.exceptional.end());
  }
}

AdaptedNorm piece_norm(const SupportMap& h, const std::string& divisor, const PointP1& p, const RatVec& x) {
  if (!cell_of(h, divisor, p).contains(x))
    throw SupportError(to_string(x) + " is not in the cell of " + divisor + " at " + to_string(p));
  return norm_of(h.piece_at(divisor, p), p, x);
}

AdaptedNorm piece_ray_norm(const SupportMap& h, const std::string& divisor, const PointP1& p, const RatVec& w) {
  if (!divisor_named(h, divisor).tail.contains(w))
    throw SupportError(to_string(w) + " is not in the tail cone of " + divisor);
  return ray_norm_of(h.piece_at(divisor, p), p, w);
}

ExtRational evaluate(const SupportMap& h, const PointP1& p, const RatVec& x, const KVec& e) {
  for (const PPDivisor* d : h.maximal_divisors()) {
    auto c = d->at(p);
    if (c && c->contains(x)) return norm_eval(norm_of(h.piece_at(d->name, p), p, x), e);
  }
  throw SupportError(to_string(x) + " is not in the support of the slice at " + to_string(p));
}

Report validate_support(const SupportMap& h) {
  Report r;
  r.check("structure");
  r.check("continuity");
  r.check("common linear part");
  r.check("designated piece");
  r.check("complete locus");

  const auto maximal = h.maximal_divisors();
  std::set<std::string> maximal_names;
  for (const PPDivisor* d : maximal) maximal_names.insert(d->name);
  for (const PPDivisor* d : maximal) {
    bool found = false;
    for (const auto& dp : h.pieces) found = found || dp.divisor == d->name;
    if (!found) r.fail("structure", "maximal divisor " + d->name + " has no pieces");
  }
  for (const auto& dp : h.pieces) {
    if (!maximal_names.count(dp.divisor)) {
      r.fail("structure", "pieces given for " + dp.divisor + ", which is not a maximal divisor");
      continue;
    }
    const PPDivisor& d = divisor_named(h, dp.divisor);
    for (const auto& [p, piece] : dp.local)
      if (!d.at(p)) r.fail("structure", dp.divisor + " has a local piece at " + to_string(p) + " outside its locus");
    const int r_ = h.rank;
    auto bad_piece = [&](const Piece& piece) {
      return piece.frame.rows() != r_ || piece.frame.cols() != r_ ||
             static_cast<int>(piece.characters.size()) != r_ || static_cast<int>(piece.offsets.size()) != r_ ||
             !inverse(piece.frame);
    };
    if (bad_piece(dp.generic)) r.fail("structure", dp.divisor + ": malformed designated piece");
    for (const auto& [p, piece] : dp.local)
      if (bad_piece(piece)) r.fail("structure", dp.divisor + ": malformed piece at " + to_string(p));
  }
  if (!r.ok()) return r;

  const std::vector<PointP1> points = h.check_points();
  const PointP1 generic = h.generic_point();

  for (const auto& p : points) {
    std::vector<std::pair<const PPDivisor*, Polyhedron>> cells;
    for (const PPDivisor* d : maximal)
      if (auto c = d->at(p)) cells.emplace_back(d, *c);
    for (size_t i = 0; i < cells.size(); ++i)
      for (size_t j = i + 1; j < cells.size(); ++j) {
        const auto f = intersect(cells[i].second, cells[j].second);
        if (!f) continue;
        const std::string& a = cells[i].first->name;
        const std::string& b = cells[j].first->name;
        const Piece& pa = h.piece_at(a, p);
        const Piece& pb = h.piece_at(b, p);
        for (const auto& v : f->vertices())
          if (!norm_eq(norm_of(pa, p, v), norm_of(pb, p, v)))
            r.fail("continuity", at_text(a + " and " + b + " disagree", p, v));
        for (const auto& w : f->rays())
          if (!norm_eq(ray_norm_of(pa, p, w), ray_norm_of(pb, p, w)))
            r.fail("continuity", at_text(a + " and " + b + " have different linear parts", p, w));
      }
  }

  for (const PPDivisor* d : maximal) {
    std::vector<RatVec> dirs = d->tail.rays();
    if (!dirs.empty()) dirs.push_back(d->tail.relative_interior_point());
    const Piece& ref = h.piece_at(d->name, generic);
    for (const auto& p : points) {
      if (!d->at(p)) continue;
      const Piece& here = h.piece_at(d->name, p);
      for (const auto& w : dirs)
        if (!norm_eq(ray_norm_of(here, p, w), ray_norm_of(ref, p, w)))
          r.fail("common linear part", at_text(d->name + " changes its linear part", p, w));
    }
  }

  for (const auto& dp : h.pieces) {
    const PPDivisor& d = divisor_named(h, dp.divisor);
    const bool complete = locus(d).complete;
    if (complete && !dp.exceptional.empty())
      r.fail("complete locus", dp.divisor + " has a complete locus but declares exceptional points");
    for (const auto& [p, piece] : dp.local) {
      const bool exempt = !complete && std::binary_search(dp.exceptional.begin(), dp.exceptional.end(), p);
      if (exempt) continue;
      const auto cell = d.at(p);
      if (!cell) continue;
      const std::string check = complete ? "complete locus" : "designated piece";
      for (const auto& v : cell->vertices())
        if (!norm_eq(norm_of(dp.generic, p, v), norm_of(piece, p, v)))
          r.fail(check, at_text("designated piece of " + dp.divisor + " does not reproduce the local piece", p, v));
      for (const auto& w : cell->rays())
        if (!norm_eq(ray_norm_of(dp.generic, p, w), ray_norm_of(piece, p, w)))
          r.fail(check, at_text("designated piece of " + dp.divisor + " has a different linear part", p, w));
    }
  }
  return r;
}

namespace {

const PPDivisor& divisor_with_tail(const SupportMap& h, const Cone& tau) {
  for (const PPDivisor* d : h.maximal_divisors())
    if (d->tail == tau) return *d;
  throw SupportError("no maximal divisor has tail cone " + tau.describe());
}

}  // namespace

std::vector<LinearPiece> linear_part(const SupportMap& h) {
  const PointP1 generic = h.generic_point();
  std::vector<LinearPiece> out;
  for (const auto& tau : tail_fan(h.fan).maximal_cones()) {
    const PPDivisor& d = divisor_with_tail(h, tau);
    const Piece& piece = h.piece_at(d.name, generic);
    out.push_back({tau, piece.frame, piece.characters});
  }
  return out;
}

std::vector<ResiduePiece> special_fiber_map(const SupportMap& h, const PointP1& p) {
  const Fan tails = tail_fan(h.fan);
  std::vector<Polyhedron> tail_cells;
  for (const auto& c : tails.cones) tail_cells.push_back(Polyhedron::from_cone(c));
  const int n = h.fan.lattice_rank;
  if (!same_cells(slice_at(h.fan, p), PolyhedralComplex::from_cells(n, tail_cells)))
    throw SupportError("the slice at " + to_string(p) + " is not the tail fan");
  const RatVec origin = RatVec::Zero(n);
  const auto maximal = h.maximal_divisors();
  if (maximal.empty()) throw SupportError("empty fan");
  const AdaptedNorm base = piece_norm(h, maximal.front()->name, p, origin);
  if (!base.is_integral()) throw SupportError("h_P(0) is not a lattice at " + to_string(p));
  std::vector<ResiduePiece> out;
  for (const auto& tau : tails.maximal_cones()) {
    const PPDivisor& d = divisor_with_tail(h, tau);
    const Piece& piece = h.piece_at(d.name, p);
    const RatVec x = tau.relative_interior_point();
    const AdaptedNorm link = residue_link(base, norm_of(piece, p, x), piece.frame);
    RatMat frame(h.rank, h.rank);
    for (int i = 0; i < h.rank; ++i)
      for (int j = 0; j < h.rank; ++j) frame(i, j) = link.frame()(i, j).constant_value();
    out.push_back({tau, frame, piece.characters});
  }
  return out;
}

std::vector<WeightSummand> weight_module(const SupportMap& h, const std::string& divisor, const RatVec& u) {
  const PPDivisor& d = divisor_named(h, divisor);
  if (!locus(d).complete) throw SupportError(divisor + " has an affine locus; its weight spaces are infinite");
  const Piece& piece = h.pieces_for(divisor).generic;
  const Cone dual = dual_cone(d.tail);
  std::vector<WeightSummand> out;
  for (int i = 0; i < piece.rank(); ++i) {
    const RatVec w = piece.characters[static_cast<size_t>(i)] - u;
    if (!dual.contains(w)) continue;
    auto basis = rr_space(eval_divisor(d, w));
    if (basis.empty()) continue;
    out.push_back({i, piece.frame.col(i), std::move(basis)});
  }
  return out;
}

LatticeRep weight_lattice(const SupportMap& h, const std::string& divisor, const PointP1& p, const RatVec& v,
                          const RatVec& u) {
  const Piece& piece = h.piece_at(divisor, p);
  KMat gens = piece.frame;
  for (int i = 0; i < piece.rank(); ++i) {
    const Rational e = dot(u - piece.characters[static_cast<size_t>(i)], v) - piece.offsets[static_cast<size_t>(i)];
    const RationalFunction s = uniformizer_power(p, static_cast<int>(ceil_int(e)));
    for (Eigen::Index r = 0; r < gens.rows(); ++r) gens(r, i) = gens(r, i) * s;
  }
  return {p, gens};
}

bool check_transition(const SupportMap& h, const std::string& d1, const std::string& d2, const RatVec& u,
                      const PointP1& p, std::string* witness) {
  const auto f = intersect(cell_of(h, d1, p), cell_of(h, d2, p));
  if (!f) throw SupportError(d1 + " and " + d2 + " do not meet at " + to_string(p));
  auto fail = [&](const std::string& msg) {
    if (witness) *witness = msg;
    return false;
  };
  for (const auto& v : f->vertices())
    if (!lattice_eq(weight_lattice(h, d1, p, v, u), weight_lattice(h, d2, p, v, u)))
      return fail(at_text("lattices differ for u=" + to_string(u), p, v));
  const Cone shared = intersect(divisor_named(h, d1).tail, divisor_named(h, d2).tail);
  const Piece& a = h.piece_at(d1, p);
  const Piece& b = h.piece_at(d2, p);
  for (const auto& w : shared.rays()) {
    auto admissible = [&](const Piece& piece) {
      std::vector<int> idx;
      for (int i = 0; i < piece.rank(); ++i)
        if (dot(piece.characters[static_cast<size_t>(i)] - u, w) >= 0) idx.push_back(i);
      return columns(piece.frame, idx);
    };
    if (!same_span(admissible(a), admissible(b)))
      return fail("spans differ along ray " + to_string(w) + " for u=" + to_string(u));
  }
  return true;
}

bool is_morphism(const KMat& phi, const SupportMap& source, const SupportMap& target, std::string* witness) {
  auto fail = [&](const std::string& msg) {
    if (witness) *witness = msg;
    return false;
  };
  if (phi.cols() != source.rank || phi.rows() != target.rank) return fail("matrix has the wrong shape");
  if (source.fan.divisors.size() != target.fan.divisors.size()) return fail("the fans differ");
  for (const auto& d : source.fan.divisors) {
    const PPDivisor* e = target.fan.find(d.name);
    if (!e || !same_divisor(d, *e)) return fail("the fans differ at " + d.name);
  }
  std::vector<PointP1> points = source.check_points();
  for (const auto& p : target.check_points()) add_point(points, p);
  for (const auto& p : special_points(phi)) add_point(points, p);
  for (const PPDivisor* d : source.maximal_divisors()) {
    const KMat m = multiply(*inverse(target.pieces_for(d->name).generic.frame),
                            multiply(phi, source.pieces_for(d->name).generic.frame));
    for (const auto& p : special_points(m)) add_point(points, p);
  }
  std::sort(points.begin(), points.end());
  for (const auto& p : points)
    for (const PPDivisor* d : source.maximal_divisors()) {
      const auto cell = d->at(p);
      if (!cell) continue;
      const Piece& s = source.piece_at(d->name, p);
      const Piece& t = target.piece_at(d->name, p);
      const KMat images = multiply(phi, s.frame);
      auto compare = [&](const AdaptedNorm& ws, const AdaptedNorm& wt, const RatVec& x, const char* kind) -> bool {
        for (int i = 0; i < s.rank(); ++i) {
          if (!(norm_eval(ws, s.frame.col(i)) <= norm_eval(wt, images.col(i))))
            return fail(at_text(std::string(kind) + " inequality fails on " + d->name + " for frame vector " +
                                    std::to_string(i),
                                p, x));
        }
        return true;
      };
      for (const auto& v : cell->vertices())
        if (!compare(norm_of(s, p, v), norm_of(t, p, v), v, "norm")) return false;
      for (const auto& w : cell->rays())
        if (!compare(ray_norm_of(s, p, w), ray_norm_of(t, p, w), w, "linear part")) return false;
    }
  return true;
}

}  // namespace tvb
