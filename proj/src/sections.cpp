#include "tvb/applications.hpp"
#include "tvb/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace tvb {

namespace {

// Unknown x in K^d with x_j = q_j / prod_p (t - p)^{N_p} and
// deg q_j <= sum_p N_p + N_inf; the conditions are Q-linear in the
// coefficients of the q_j.
class PoleAnsatz {
 public:
  PoleAnsatz(int d, const std::map<PointP1, int>& bounds) : d_(d) {
    Polynomial den(1);
    degree_ = 0;
    for (const auto& [p, n] : bounds) {
      if (n <= 0) continue;
      degree_ += n;
      if (!p.is_infinity()) den = den * pow(Polynomial::linear(p.value()), n);
    }
    den_ = RationalFunction(den);
  }

  int unknowns() const { return d_ * (degree_ + 1); }

  /// m x in O_p^rows.
  void require_integral(const PointP1& p, const KMat& m) {
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      std::map<int, RatVec> by_order;
      for (int j = 0; j < d_; ++j) {
        if (m(k, j).is_zero()) continue;
        const RationalFunction base = m(k, j) / den_;
        for (int a = 0; a <= degree_; ++a) {
          const LaurentSeries s = laurent(base * RationalFunction(Polynomial::monomial(1, a)), p, -1);
          for (int o = s.order; o < 0; ++o) {
            auto it = by_order.find(o);
            if (it == by_order.end()) it = by_order.emplace(o, RatVec::Zero(unknowns())).first;
            it->second(index(j, a)) = s.at(o);
          }
        }
      }
      for (auto& [o, row] : by_order) rows_.push_back(std::move(row));
    }
  }

  /// rows x = 0 as elements of K.
  void require_zero(const KMat& m) {
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      Polynomial common(1);
      for (int j = 0; j < d_; ++j) {
        const Polynomial& den = m(k, j).denominator();
        common = divmod(common * den, gcd(common, den)).first;
      }
      std::vector<Polynomial> polys;
      int top = 0;
      for (int j = 0; j < d_; ++j) {
        const RationalFunction scaled = m(k, j) * RationalFunction(common);
        polys.push_back(scaled.numerator());
        top = std::max(top, scaled.numerator().degree());
      }
      for (int s = 0; s <= top + degree_; ++s) {
        RatVec row = RatVec::Zero(unknowns());
        bool any = false;
        for (int j = 0; j < d_; ++j)
          for (int a = 0; a <= degree_; ++a) {
            const Rational c = polys[static_cast<size_t>(j)].coeff(s - a);
            if (c != 0) {
              row(index(j, a)) = c;
              any = true;
            }
          }
        if (any) rows_.push_back(std::move(row));
      }
    }
  }

  std::vector<KVec> solve() const {
    RatMat system(static_cast<Eigen::Index>(rows_.size()), unknowns());
    for (size_t i = 0; i < rows_.size(); ++i) system.row(static_cast<Eigen::Index>(i)) = rows_[i].transpose();
    const RatMat kernel = rows_.empty() ? RatMat(RatMat::Identity(unknowns(), unknowns())) : nullspace(system);
    std::vector<KVec> out;
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
      KVec x(d_);
      for (int j = 0; j < d_; ++j) {
        std::vector<Rational> coeffs;
        for (int a = 0; a <= degree_; ++a) coeffs.push_back(kernel(index(j, a), c));
        x(j) = RationalFunction(Polynomial(coeffs)) / den_;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  Eigen::Index index(int j, int a) const { return static_cast<Eigen::Index>(j * (degree_ + 1) + a); }

  int d_;
  int degree_ = 0;
  RationalFunction den_;
  std::vector<RatVec> rows_;
};

int min_valuation(const KMat& m, const PointP1& p) {
  int best = 0;
  bool first = true;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      const int v = val_int(m(i, j), p);
      if (first || v < best) best = v;
      first = false;
    }
  return best;
}

std::vector<PointP1> section_points(const SupportMap& h) {
  std::vector<PointP1> pts = h.check_points();
  if (std::find(pts.begin(), pts.end(), PointP1::infinity()) == pts.end()) pts.push_back(PointP1::infinity());
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Rows (over the coordinates of the reference frame G) cutting out E_u.
KMat ray_constraints(const SupportMap& h, const std::vector<std::string>& divisors, const RatVec& u, const KMat& g) {
  const PointP1 generic = h.generic_point();
  std::vector<KVec> rows;
  for (const auto& name : divisors) {
    const PPDivisor* d = h.fan.find(name);
    const Piece& lin = h.piece_at(name, generic);
    const KMat bg = multiply(*inverse(lin.frame), g);
    for (const auto& w : d->tail.rays())
      for (int j = 0; j < lin.rank(); ++j)
        if (dot(lin.characters[static_cast<size_t>(j)] - u, w) < 0) rows.push_back(bg.row(j).transpose());
  }
  KMat out(static_cast<Eigen::Index>(rows.size()), g.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

bool satisfies(const SupportMap& h, const std::vector<std::string>& divisors, const std::vector<PointP1>& points,
               const RatVec& u, const KVec& e) {
  for (const auto& p : points)
    for (const auto& name : divisors) {
      const auto cell = h.fan.find(name)->at(p);
      if (!cell) continue;
      for (const auto& v : cell->vertices())
        if (norm_eval(piece_norm(h, name, p, v), e) < ExtRational(dot(u, v))) return false;
      for (const auto& w : cell->rays())
        if (norm_eval(piece_ray_norm(h, name, p, w), e) < ExtRational(dot(u, w))) return false;
    }
  return true;
}

std::vector<std::string> maximal_names(const SupportMap& h) {
  std::vector<std::string> out;
  for (const PPDivisor* d : h.maximal_divisors()) out.push_back(d->name);
  return out;
}

}  // namespace

SectionSpace sections_over(const SupportMap& h, const std::vector<std::string>& divisors, const RatVec& u) {
  if (divisors.empty()) throw SupportError("sections_over: no divisors");
  if (u.size() != h.fan.lattice_rank) throw SupportError("weight has the wrong length");
  const int r = h.rank;
  const KMat g = h.pieces_for(divisors.front()).generic.frame;
  const KMat g_inv = *inverse(g);
  const std::vector<PointP1> points = section_points(h);

  struct Local {
    PointP1 p;
    KMat to_lattice;
  };
  std::vector<Local> locals;
  std::map<PointP1, int> bounds;
  for (const auto& p : points) {
    std::optional<LatticeRep> lattice;
    for (const auto& name : divisors) {
      const PPDivisor* d = h.fan.find(name);
      if (!d) throw SupportError("unknown divisor " + name);
      const auto cell = d->at(p);
      if (!cell) continue;
      for (const auto& v : cell->vertices()) {
        LatticeRep l = weight_lattice(h, name, p, v, u);
        lattice = lattice ? lattice_intersect(*lattice, l) : l;
      }
    }
    if (!lattice)
      throw SupportError("unbounded section space: no cell over " + to_string(p) + " bounds the poles there");
    bounds[p] = std::max(0, -min_valuation(multiply(g_inv, lattice->generators), p));
    locals.push_back({p, multiply(*inverse(lattice->generators), g)});
  }

  PoleAnsatz ansatz(r, bounds);
  for (const auto& l : locals) ansatz.require_integral(l.p, l.to_lattice);
  const KMat rays = ray_constraints(h, divisors, u, g);
  if (rays.rows() > 0) ansatz.require_zero(rays);

  SectionSpace out;
  out.weight = u;
  for (const KVec& lambda : ansatz.solve()) {
    KVec e = multiply(g, lambda);
    if (!satisfies(h, divisors, points, u, e)) throw SupportError("internal: a computed section violates its bounds");
    out.basis.push_back(std::move(e));
  }
  return out;
}

SectionSpace global_sections(const SupportMap& h, const RatVec& u) {
  if (!tail_fan(h.fan).is_complete()) throw SupportError("unbounded section space: the tail fan is not complete");
  return sections_over(h, maximal_names(h), u);
}

std::vector<RatVec> weight_box(const SupportMap& h) {
  const int n = h.fan.lattice_rank;
  std::vector<Integer> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
  bool first = true;
  auto visit = [&](const Piece& piece) {
    for (const auto& c : piece.characters)
      for (int i = 0; i < n; ++i) {
        const Integer f = floor_int(c(i)), e = ceil_int(c(i));
        if (first || f < lo[static_cast<size_t>(i)]) lo[static_cast<size_t>(i)] = f;
        if (first || e > hi[static_cast<size_t>(i)]) hi[static_cast<size_t>(i)] = e;
      }
    if (!piece.characters.empty()) first = false;
  };
  for (const auto& dp : h.pieces) {
    visit(dp.generic);
    for (const auto& [p, piece] : dp.local) visit(piece);
  }
  std::vector<RatVec> out;
  RatVec cur = RatVec::Zero(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (Integer x = lo[static_cast<size_t>(i)] - 1; x <= hi[static_cast<size_t>(i)] + 1; ++x) {
      cur(i) = Rational(x);
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

BundleOnY sections_bundle_on_Y(const SupportMap& h, const RatVec& u) {
  const std::vector<std::string> divisors = maximal_names(h);
  BundleOnY b;
  b.weight = u;
  b.reference = h.pieces_for(divisors.front()).generic.frame;
  const int r = h.rank;

  // E_u as a saturated polynomial submodule in the coordinates of the reference frame
  const KMat constraints = ray_constraints(h, divisors, u, b.reference);
  KMat basis = constraints.rows() == 0 ? KMat(KMat::Identity(r, r)) : nullspace(constraints);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Polynomial common(1);
    for (Eigen::Index i = 0; i < r; ++i) {
      const Polynomial& den = basis(i, j).denominator();
      common = divmod(common * den, gcd(common, den)).first;
    }
    Polynomial content;
    for (Eigen::Index i = 0; i < r; ++i) {
      basis(i, j) *= RationalFunction(common);
      content = gcd(content, basis(i, j).numerator());
    }
    for (Eigen::Index i = 0; i < r; ++i) basis(i, j) /= RationalFunction(content);
  }
  b.subspace = basis;

  std::vector<PointP1> points = section_points(h);
  const Eigen::Index d = basis.cols();
  if (d > 0) {
    // places where the columns fail to span a saturated module
    Polynomial minors;
    std::vector<int> rows(static_cast<size_t>(d));
    std::function<void(int, int)> choose = [&](int start, int k) {
      if (k == d) {
        KMat sub(d, d);
        for (Eigen::Index i = 0; i < d; ++i) sub.row(i) = basis.row(rows[static_cast<size_t>(i)]);
        minors = gcd(minors, determinant(sub).numerator());
        return;
      }
      for (int i = start; i < r; ++i) {
        rows[static_cast<size_t>(k)] = i;
        choose(i + 1, k + 1);
      }
    };
    choose(0, 0);
    const RootData roots = rational_roots(minors);
    if (roots.irrational_degree > 0)
      throw SupportError("E_u degenerates at a place of degree > 1; not supported");
    for (const auto& [root, mult] : roots.roots)
      if (std::find(points.begin(), points.end(), PointP1::at(root)) == points.end()) points.push_back(PointP1::at(root));
    std::sort(points.begin(), points.end());
  }

  for (const auto& p : points) {
    std::optional<LatticeRep> lattice;
    for (const auto& name : divisors) {
      const auto cell = h.fan.find(name)->at(p);
      if (!cell) continue;
      const Piece& piece = h.piece_at(name, p);
      for (const auto& v : cell->vertices()) {
        std::vector<Rational> values;
        for (int i = 0; i < r; ++i)
          values.push_back(floor_q(dot(piece.characters[static_cast<size_t>(i)] - u, v) +
                                   piece.offsets[static_cast<size_t>(i)]));
        const LatticeRep l = lattice_from_norm(AdaptedNorm(1, p, piece.frame, values));
        lattice = lattice ? lattice_intersect(*lattice, l) : l;
      }
    }
    if (!lattice) throw SupportError("unbounded: no cell over " + to_string(p));
    b.points.push_back(p);
    b.norms.push_back(norm_from_lattice(*lattice));
  }
  return b;
}

int h0_on_Y(const BundleOnY& b) {
  const Eigen::Index d = b.subspace.cols();
  if (d == 0) return 0;
  const KMat embed = multiply(b.reference, b.subspace);
  std::map<PointP1, int> bounds;
  std::vector<KMat> local;
  for (size_t i = 0; i < b.points.size(); ++i) {
    const PointP1& p = b.points[i];
    const KMat gens = lattice_from_norm(b.norms[i]).generators;
    const KMat a = multiply(*inverse(gens), embed);
    // {mu : a mu integral} = right * diag(pi^{-e}) O^d
    const LocalSmith s = local_smith(a, p);
    KMat span = s.right;
    for (Eigen::Index j = 0; j < d; ++j) {
      const RationalFunction scale = uniformizer_power(p, -s.exponents[static_cast<size_t>(j)]);
      for (Eigen::Index i2 = 0; i2 < d; ++i2) span(i2, j) *= scale;
    }
    bounds[p] = std::max(0, -min_valuation(span, p));
    local.push_back(a);
  }
  PoleAnsatz ansatz(static_cast<int>(d), bounds);
  for (size_t i = 0; i < b.points.size(); ++i) ansatz.require_integral(b.points[i], local[i]);
  return static_cast<int>(ansatz.solve().size());
}

}  // namespace tvb
