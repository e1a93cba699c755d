#include "tvb/applications.hpp"
#include "tvb/linalg.hpp"

#include <algorithm>
#include <functional>

namespace tvb {

namespace {

KMat block_diag(const KMat& a, const KMat& b) {
  KMat m = KMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Piece sum_piece(const Piece& a, const Piece& b) {
  Piece p;
  p.frame = block_diag(a.frame, b.frame);
  p.characters = a.characters;
  p.characters.insert(p.characters.end(), b.characters.begin(), b.characters.end());
  p.offsets = a.offsets;
  p.offsets.insert(p.offsets.end(), b.offsets.begin(), b.offsets.end());
  return p;
}

void add_point(std::vector<PointP1>& pts, const PointP1& p) {
  if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
}

void add_points(std::vector<PointP1>& pts, const std::vector<PointP1>& more) {
  for (const auto& p : more) add_point(pts, p);
}

bool proportional(const KVec& a, const KVec& b) {
  KMat m(a.size(), 2);
  m.col(0) = a;
  m.col(1) = b;
  return rank(m) < 2;
}

KMat columns_of(const std::vector<KVec>& vs) {
  KMat m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vs[j];
  return m;
}

// Points where a frame can stop being adapted: the validation points and every
// place where `frame` and some designated frame are not related by GL(O_P).
std::vector<PointP1> frame_points(const SupportMap& h, const KMat& frame) {
  std::vector<PointP1> pts = h.check_points();
  add_point(pts, PointP1::infinity());
  const auto inv_f = inverse(frame);
  for (const auto& dp : h.pieces) {
    const KMat& b = dp.generic.frame;
    const KMat b_inv = *inverse(b);
    add_points(pts, special_points(b));
    add_points(pts, special_points(b_inv));
    add_points(pts, special_points(multiply(b_inv, frame)));
    if (inv_f) add_points(pts, special_points(multiply(*inv_f, b)));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Every norm of h that constrains a frame, at the given points.
template <typename F>
bool for_each_norm(const SupportMap& h, const std::vector<PointP1>& pts, F&& visit) {
  for (const auto& p : pts)
    for (const PPDivisor* d : h.maximal_divisors()) {
      const auto cell = d->at(p);
      if (!cell) continue;
      for (const auto& v : cell->vertices())
        if (!visit(piece_norm(h, d->name, p, v), d->name, p, v)) return false;
      for (const auto& w : cell->rays())
        if (!visit(piece_ray_norm(h, d->name, p, w), d->name, p, w)) return false;
    }
  return true;
}

ExtRational value_at(const KVec& x, const AdaptedNorm& w) { return norm_eval(w, x); }

// Lines forced into any splitting frame of a rank-2 map: the top step of each
// two-step filtration of the linear part.
std::vector<KVec> forced_lines(const SupportMap& h) {
  std::vector<KVec> out;
  const PointP1 generic = h.generic_point();
  for (const PPDivisor* d : h.maximal_divisors())
    for (const auto& w : d->tail.rays()) {
      const AdaptedNorm n = piece_ray_norm(h, d->name, generic, w);
      if (n.values()[0] == n.values()[1]) continue;
      const KVec line = n.frame().col(n.values()[0] > n.values()[1] ? 0 : 1);
      if (std::none_of(out.begin(), out.end(), [&](const KVec& l) { return proportional(l, line); }))
        out.push_back(line);
    }
  return out;
}

struct Ball {
  PointP1 p;
  RationalFunction centre;
  int radius;  // val_P(phi - centre) >= radius
};

// Some phi in K with every ball condition and phi regular elsewhere.
std::optional<RationalFunction> solve_balls(const std::vector<Ball>& balls) {
  std::map<PointP1, int> bound;
  for (const auto& b : balls) {
    int low = b.radius;
    if (!b.centre.is_zero()) low = std::min(low, val_int(b.centre, b.p));
    bound[b.p] = std::max(bound[b.p], -low);
  }
  Polynomial den(1);
  int degree = 0;
  for (const auto& [p, n] : bound) {
    if (n <= 0) continue;
    degree += n;
    if (!p.is_infinity()) den = den * pow(Polynomial::linear(p.value()), n);
  }
  std::vector<RatVec> rows;
  std::vector<Rational> rhs;
  for (const auto& b : balls) {
    const int top = b.radius - 1;
    const LaurentSeries target = laurent(b.centre, b.p, top);
    std::vector<LaurentSeries> basis;
    int lowest = target.order;
    for (int a = 0; a <= degree; ++a) {
      basis.push_back(laurent(RationalFunction(Polynomial::monomial(1, a)) / RationalFunction(den), b.p, top));
      lowest = std::min(lowest, basis.back().order);
    }
    for (int o = lowest; o <= top; ++o) {
      RatVec row(degree + 1);
      for (int a = 0; a <= degree; ++a) row(a) = basis[static_cast<size_t>(a)].at(o);
      rows.push_back(row);
      rhs.push_back(target.at(o));
    }
  }
  RatVec q = RatVec::Zero(degree + 1);
  if (!rows.empty()) {
    RatMat m(static_cast<Eigen::Index>(rows.size()), degree + 1);
    RatVec r(static_cast<Eigen::Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
      m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
      r(static_cast<Eigen::Index>(i)) = rhs[i];
    }
    const auto sol = solve(m, r);
    if (!sol) return std::nullopt;
    q = *sol;
  }
  return RationalFunction(Polynomial(to_std(q))) / RationalFunction(den);
}

// Rank 2 with one forced line l: a splitting frame is (l, c + phi l), and each
// norm w is adapted to it iff w(c + phi l) reaches val det(l, c) + w_1 + w_2 - w(l).
SplitResult affine_search(const SupportMap& h, const KVec& l) {
  SplitResult res;
  KVec c = KVec::Zero(2);
  c(0) = 1;
  if (proportional(l, c)) {
    c(0) = 0;
    c(1) = 1;
  }
  KMat lc(2, 2);
  lc.col(0) = l;
  lc.col(1) = c;
  const std::vector<PointP1> pts = frame_points(h, lc);

  std::vector<Ball> balls;
  std::optional<RationalFunction> exact;
  bool impossible = false;
  for_each_norm(h, pts, [&](const AdaptedNorm& w, const std::string& d, const PointP1& p, const RatVec& x) {
    const KMat& a_inv = w.frame_inverse();
    const KVec alpha = multiply(a_inv, c), beta = multiply(a_inv, l);
    const Rational m = w.level();
    Rational target = w.values()[0] + w.values()[1] - value_at(l, w).value();
    if (m != 0) target += m * val_int(determinant(KMat(multiply(a_inv, lc))), p);
    for (int i = 0; i < 2; ++i) {
      const Rational wi = w.values()[static_cast<size_t>(i)];
      if (beta(i).is_zero()) {
        if (!alpha(i).is_zero() && m * val_int(alpha(i), p) + wi < target) {
          impossible = true;
          res.reason = "no frame through the forced line is adapted at " + d + ", P=" + to_string(p) + ", x=" + to_string(x);
          return false;
        }
        continue;
      }
      const RationalFunction centre = -alpha(i) / beta(i);
      if (m == 0) {
        if (wi >= target) continue;
        if (exact && !(*exact == centre)) {
          impossible = true;
          res.reason = "linear part forces two different complements";
          return false;
        }
        exact = centre;
        continue;
      }
      const int radius = static_cast<int>(ceil_int((target - wi) / m)) - val_int(beta(i), p);
      balls.push_back({p, centre, radius});
    }
    return true;
  });
  if (impossible) {
    res.status = SplitStatus::NotSplit;
    return res;
  }
  std::optional<RationalFunction> phi = exact;
  if (!phi) phi = solve_balls(balls);
  if (phi) {
    KMat frame(2, 2);
    frame.col(0) = l;
    frame.col(1) = c + *phi * l;
    std::string why;
    if (adapted_everywhere(h, frame, &why)) {
      res.status = SplitStatus::Split;
      res.witness = frame;
      res.reason = "complement of the forced line found";
      return res;
    }
    if (exact) {
      res.status = SplitStatus::NotSplit;
      res.reason = "the complement forced by the linear part fails: " + why;
      return res;
    }
    throw SupportError("internal: solved complement is not adapted: " + why);
  }
  res.status = SplitStatus::NotSplit;
  res.reason = "no complement of the forced line satisfies the local conditions";
  return res;
}

// Frames drawn from the columns of all pieces.
SplitResult candidate_search(const SupportMap& h, std::vector<KVec> pool) {
  SplitResult res;
  for (const auto& dp : h.pieces) {
    auto add = [&](const Piece& piece) {
      for (Eigen::Index j = 0; j < piece.frame.cols(); ++j) {
        const KVec v = piece.frame.col(j);
        if (std::none_of(pool.begin(), pool.end(), [&](const KVec& l) { return proportional(l, v); })) pool.push_back(v);
      }
    };
    add(dp.generic);
    for (const auto& [p, piece] : dp.local) add(piece);
  }
  const int r = h.rank;
  const int n = static_cast<int>(pool.size());
  std::vector<int> idx(static_cast<size_t>(r));
  std::function<bool(int, int)> rec = [&](int start, int k) {
    if (k == r) {
      std::vector<KVec> cols;
      for (int i : idx) cols.push_back(pool[static_cast<size_t>(i)]);
      const KMat frame = columns_of(cols);
      if (rank(frame) < r) return false;
      ++res.candidates;
      if (adapted_everywhere(h, frame)) {
        res.status = SplitStatus::Split;
        res.witness = frame;
        return true;
      }
      return false;
    }
    for (int i = start; i < n; ++i) {
      idx[static_cast<size_t>(k)] = i;
      if (rec(i + 1, k + 1)) return true;
    }
    return false;
  };
  rec(0, 0);
  return res;
}

}  // namespace

SupportMap direct_sum(const SupportMap& a, const SupportMap& b) {
  if (a.fan.lattice_rank != b.fan.lattice_rank || a.fan.divisors.size() != b.fan.divisors.size())
    throw SupportError("direct sum needs the same divisorial fan");
  for (size_t i = 0; i < a.fan.divisors.size(); ++i)
    if (a.fan.divisors[i].name != b.fan.divisors[i].name || !same_divisor(a.fan.divisors[i], b.fan.divisors[i]))
      throw SupportError("direct sum needs the same divisorial fan; " + a.fan.divisors[i].name + " differs");
  SupportMap s;
  s.fan = a.fan;
  s.rank = a.rank + b.rank;
  for (const auto& da : a.pieces) {
    const DivisorPieces& db = b.pieces_for(da.divisor);
    DivisorPieces dp;
    dp.divisor = da.divisor;
    dp.generic = sum_piece(da.generic, db.generic);
    std::vector<PointP1> keys;
    for (const auto& [p, piece] : da.local) add_point(keys, p);
    for (const auto& [p, piece] : db.local) add_point(keys, p);
    for (const auto& p : keys) dp.local.emplace(p, sum_piece(a.piece_at(da.divisor, p), b.piece_at(da.divisor, p)));
    dp.exceptional = da.exceptional;
    add_points(dp.exceptional, db.exceptional);
    s.pieces.push_back(std::move(dp));
  }
  normalize(s);
  return s;
}

bool adapted_everywhere(const SupportMap& h, const KMat& frame, std::string* witness) {
  if (frame.rows() != h.rank || frame.cols() != h.rank || !inverse(frame)) {
    if (witness) *witness = "frame is not a basis";
    return false;
  }
  return for_each_norm(h, frame_points(h, frame),
                       [&](const AdaptedNorm& w, const std::string& d, const PointP1& p, const RatVec& x) {
                         if (adapt_to(w, frame)) return true;
                         if (witness) *witness = d + " at P=" + to_string(p) + ", x=" + to_string(x);
                         return false;
                       });
}

SplitResult split_check(const SupportMap& h) {
  if (h.rank == 1) {
    SplitResult res;
    res.status = SplitStatus::Split;
    res.witness = h.pieces.front().generic.frame;
    res.reason = "rank one";
    return res;
  }
  if (h.rank == 2) {
    const std::vector<KVec> forced = forced_lines(h);
    if (forced.size() >= 3) {
      SplitResult res;
      res.status = SplitStatus::NotSplit;
      res.reason = "the linear part forces " + std::to_string(forced.size()) + " distinct lines";
      return res;
    }
    if (forced.size() == 2) {
      SplitResult res;
      const KMat frame = columns_of(forced);
      res.candidates = 1;
      std::string why;
      if (rank(frame) == 2 && adapted_everywhere(h, frame, &why)) {
        res.status = SplitStatus::Split;
        res.witness = frame;
        res.reason = "the two forced lines";
      } else {
        res.status = SplitStatus::NotSplit;
        res.reason = "the only possible frame fails: " + why;
      }
      return res;
    }
    SplitResult found = candidate_search(h, forced);
    if (found.status == SplitStatus::Split) return found;
    if (forced.size() == 1) {
      SplitResult res = affine_search(h, forced.front());
      res.candidates += found.candidates;
      return res;
    }
    found.reason = "no candidate frame is adapted and the linear part forces no line";
    return found;
  }
  SplitResult found = candidate_search(h, {});
  if (found.status != SplitStatus::Split) found.reason = "no candidate frame is adapted";
  return found;
}

std::string to_string(SplitStatus s) {
  switch (s) {
    case SplitStatus::Split:
      return "split";
    case SplitStatus::NotSplit:
      return "not split";
    case SplitStatus::Unknown:
      break;
  }
  return "unknown";
}

}  // namespace tvb
