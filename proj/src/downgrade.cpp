#include "tvb/applications.hpp"
#include "tvb/linalg.hpp"

#include <algorithm>
#include <set>

namespace tvb {

namespace {

AdaptedNorm level0(const RatMat& frame, const std::vector<RatVec>& chars, const RatVec& w) {
  std::vector<Rational> values;
  for (const auto& u : chars) values.push_back(dot(u, w));
  return AdaptedNorm(0, PointP1::at(0), to_kmat(frame), values);
}

bool integral_vec(const RatVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integral(v(i))) return false;
  return true;
}

RatMat block_diag(const RatMat& a, const RatMat& b) {
  RatMat m = RatMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

RatVec head(const RatVec& v, Eigen::Index n) { return v.head(n); }

std::string cone_name(const Fan& fan, const Cone& c) {
  const auto rays = fan.rays();
  std::string name = "c";
  bool first = true;
  for (size_t i = 0; i < rays.size(); ++i)
    for (const auto& r : c.rays())
      if (equal(primitive(r), primitive(rays[i]))) {
        name += (first ? "" : "_") + std::to_string(i);
        first = false;
      }
  return name;
}

Cone transform(const RatMat& u, const Cone& c) {
  std::vector<RatVec> gens;
  for (const auto& g : c.generators()) gens.push_back(multiply(u, g));
  return Cone::from_generators(static_cast<int>(u.rows()), gens);
}

// Primitive ray generators of a pointed cone.
std::vector<RatVec> primitive_rays(const Cone& c) {
  std::vector<RatVec> out;
  for (const auto& r : c.rays()) out.push_back(primitive(r));
  return out;
}

}  // namespace

const KlyachkoCone* KlyachkoInput::cone_data(const Cone& c) const {
  for (const auto& k : cones)
    if (k.cone == c) return &k;
  return nullptr;
}

Report validate_klyachko(const KlyachkoInput& k) {
  Report rep;
  rep.check("fan");
  rep.check("projection");
  rep.check("cone data");
  rep.check("compatibility");
  const int n = k.fan.dim;
  for (const auto& msg : k.fan.validate()) rep.fail("fan", msg);
  if (!k.fan.is_complete()) rep.fail("fan", "fan is not complete");

  if (k.projection.size() != n || !integral_vec(k.projection) || k.projection.isZero()) {
    rep.fail("projection", "projection must be a nonzero integral vector of length " + std::to_string(n));
  } else {
    Integer g = 0;
    for (Eigen::Index i = 0; i < n; ++i) g = gcd(g, numer(k.projection(i)));
    if (g != 1) rep.fail("projection", "projection " + to_string(k.projection) + " is not primitive");
  }

  const auto maximal = k.fan.maximal_cones();
  for (const auto& c : maximal) {
    int count = 0;
    for (const auto& kc : k.cones) count += kc.cone == c ? 1 : 0;
    if (count != 1) rep.fail("cone data", "maximal cone " + c.describe() + " has " + std::to_string(count) + " entries");
  }
  for (const auto& kc : k.cones) {
    if (std::find(maximal.begin(), maximal.end(), kc.cone) == maximal.end())
      rep.fail("cone data", kc.cone.describe() + " is not a maximal cone of the fan");
    if (kc.frame.rows() != k.rank || kc.frame.cols() != k.rank || !inverse(kc.frame))
      rep.fail("cone data", kc.cone.describe() + ": frame is not an invertible rank x rank matrix");
    if (static_cast<int>(kc.characters.size()) != k.rank) {
      rep.fail("cone data", kc.cone.describe() + ": wrong number of characters");
      continue;
    }
    for (const auto& u : kc.characters)
      if (u.size() != n || !integral_vec(u)) rep.fail("cone data", kc.cone.describe() + ": bad character " + to_string(u));
  }
  if (!rep.ok()) return rep;

  for (size_t i = 0; i < k.cones.size(); ++i)
    for (size_t j = i + 1; j < k.cones.size(); ++j) {
      const auto& a = k.cones[i];
      const auto& b = k.cones[j];
      const Cone tau = intersect(a.cone, b.cone);
      std::vector<RatVec> probes = tau.rays();
      if (tau.dim() > 0) probes.push_back(tau.relative_interior_point());
      for (const auto& w : probes)
        if (!norm_eq(level0(a.frame, a.characters, w), level0(b.frame, b.characters, w))) {
          rep.fail("compatibility", "filtrations of " + a.cone.describe() + " and " + b.cone.describe() +
                                        " differ at w = " + to_string(w));
          break;
        }
    }
  return rep;
}

KlyachkoInput klyachko_line_bundle(const Fan& fan, const std::vector<RatVec>& characters, const RatVec& projection) {
  KlyachkoInput k;
  k.fan = fan;
  k.rank = 1;
  k.projection = projection;
  const auto maximal = fan.maximal_cones();
  if (maximal.size() != characters.size()) throw SupportError("one character per maximal cone expected");
  for (size_t i = 0; i < maximal.size(); ++i) k.cones.push_back({maximal[i], RatMat::Identity(1, 1), {characters[i]}});
  return k;
}

KlyachkoInput klyachko_direct_sum(const KlyachkoInput& a, const KlyachkoInput& b) {
  if (!(a.fan.cones == b.fan.cones)) throw SupportError("direct sum needs the same fan");
  KlyachkoInput k;
  k.fan = a.fan;
  k.rank = a.rank + b.rank;
  k.projection = a.projection;
  for (const auto& ca : a.cones) {
    const KlyachkoCone* cb = b.cone_data(ca.cone);
    if (!cb) throw SupportError("direct sum: missing cone data for " + ca.cone.describe());
    KlyachkoCone c{ca.cone, block_diag(ca.frame, cb->frame), ca.characters};
    c.characters.insert(c.characters.end(), cb->characters.begin(), cb->characters.end());
    k.cones.push_back(std::move(c));
  }
  return k;
}

KlyachkoInput klyachko_cotangent(const Fan& fan, const RatVec& projection) {
  KlyachkoInput k;
  k.fan = fan;
  k.rank = fan.dim;
  k.projection = projection;
  for (const auto& c : fan.maximal_cones()) {
    if (!c.is_full_dimensional() || !is_smooth_cone(c)) throw GeometryError("cone " + c.describe() + " is not smooth");
    const auto rays = primitive_rays(c);
    RatMat r(fan.dim, fan.dim);
    for (int j = 0; j < fan.dim; ++j) r.col(j) = rays[static_cast<size_t>(j)];
    const RatMat dual = *inverse(r);  // rows m_i with <m_i, v_j> = delta
    KlyachkoCone kc{c, dual.transpose(), {}};
    for (int i = 0; i < fan.dim; ++i) kc.characters.push_back(-dual.row(i).transpose());
    k.cones.push_back(std::move(kc));
  }
  return k;
}

Downgrade toric_downgrade(const KlyachkoInput& k) {
  const Report rep = validate_klyachko(k);
  if (!rep.ok()) {
    for (const auto& c : rep.checks)
      if (!c.ok) throw SupportError("invalid toric bundle (" + c.name + "): " + c.witnesses.front());
  }
  const int n = k.fan.dim;
  // y = U x with y_n = <projection, x>
  const RatMat basis = complete_to_basis({k.projection}, n);
  RatMat cols(n, n);
  for (int j = 1; j < n; ++j) cols.col(j - 1) = basis.col(j);
  cols.col(n - 1) = basis.col(0);
  Downgrade out;
  out.coordinates = cols.transpose();
  const RatMat dual = inverse(out.coordinates)->transpose();

  SupportMap& h = out.support;
  h.fan.lattice_rank = n - 1;
  h.rank = k.rank;
  const PointP1 zero = PointP1::at(0), inf = PointP1::infinity();
  for (const auto& c : k.fan.cones) {
    const Cone lifted = transform(out.coordinates, c);
    PPDivisor d;
    d.name = cone_name(k.fan, c);
    d.tail = tail_cone(*slice_at_height(lifted, 0));
    d.coefficients[zero] = slice_at_height(lifted, 1);
    d.coefficients[inf] = slice_at_height(lifted, -1);
    h.fan.divisors.push_back(std::move(d));
  }
  for (const auto& kc : k.cones) {
    DivisorPieces dp;
    dp.divisor = cone_name(k.fan, kc.cone);
    dp.generic.frame = to_kmat(kc.frame);
    for (int i = 0; i < k.rank; ++i) {
      const RatVec u = multiply(dual, kc.characters[static_cast<size_t>(i)]);
      // t^{-c} b has value <u', y'> at every point once the offset c sits at 0 and -c at infinity
      const RationalFunction scale = uniformizer_power(zero, -static_cast<int>(numer(u(n - 1))));
      for (int r = 0; r < k.rank; ++r) dp.generic.frame(r, i) *= scale;
      dp.generic.characters.push_back(head(u, n - 1));
      dp.generic.offsets.push_back(0);
    }
    h.pieces.push_back(std::move(dp));
  }
  normalize(h);
  return out;
}

std::vector<std::pair<std::string, Piece>> cotangent_slice_map(const DivisorialFan& s, const PointP1& p) {
  const int n = s.lattice_rank;
  const RationalFunction t = RationalFunction::t();
  const RationalFunction kappa = p.is_infinity() ? RationalFunction(-1) / t : RationalFunction(1) / (t - p.value());
  std::vector<std::pair<std::string, Piece>> out;
  for (const PPDivisor* d : s.maximal_divisors()) {
    const auto cell = d->at(p);
    if (!cell) continue;
    const Cone sigma = cone_over(*cell, 1);
    if (!sigma.is_pointed() || !is_smooth_cone(sigma))
      throw GeometryError("divisor " + d->name + " is not smooth over " + to_string(p) + ": cone " + sigma.describe());
    const RatMat w = complete_to_basis(primitive_rays(sigma), n + 1);
    const RatMat dual = *inverse(w);
    Piece piece;
    piece.frame = KMat(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      const RatVec m = dual.row(i).transpose();
      const int ell = static_cast<int>(numer(m(n)));
      const RationalFunction scale = uniformizer_power(p, ell);
      for (int r = 0; r < n; ++r) piece.frame(r, i) = scale * RationalFunction(m(r));
      piece.frame(n, i) = scale * RationalFunction(m(n)) * kappa;
      piece.characters.push_back(-head(m, n));
      piece.offsets.push_back(0);
    }
    out.emplace_back(d->name, std::move(piece));
  }
  return out;
}

namespace {

bool pieces_agree(const PPDivisor& d, const PointP1& p, const Piece& a, const Piece& b) {
  const auto cell = d.at(p);
  auto norm = [&](const Piece& piece, const RatVec& x, int level) {
    std::vector<Rational> values;
    for (int i = 0; i < piece.rank(); ++i)
      values.push_back(dot(piece.characters[static_cast<size_t>(i)], x) + (level ? piece.offsets[static_cast<size_t>(i)] : 0));
    return AdaptedNorm(level, p, piece.frame, values);
  };
  for (const auto& v : cell->vertices())
    if (!norm_eq(norm(a, v, 1), norm(b, v, 1))) return false;
  for (const auto& w : cell->rays())
    if (!norm_eq(norm(a, w, 0), norm(b, w, 0))) return false;
  return true;
}

// Q-rank of KVecs, flattened over a common denominator.
int q_rank(const std::vector<KVec>& vs) {
  if (vs.empty()) return 0;
  Polynomial common(1);
  for (const auto& v : vs)
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const Polynomial& den = v(i).denominator();
      common = divmod(common * den, gcd(common, den)).first;
    }
  int top = 0;
  std::vector<std::vector<Polynomial>> nums;
  for (const auto& v : vs) {
    std::vector<Polynomial> row;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      row.push_back((v(i) * RationalFunction(common)).numerator());
      top = std::max(top, row.back().degree());
    }
    nums.push_back(std::move(row));
  }
  const Eigen::Index width = static_cast<Eigen::Index>(vs.front().size()) * (top + 1);
  RatMat m(static_cast<Eigen::Index>(vs.size()), width);
  for (size_t k = 0; k < nums.size(); ++k)
    for (size_t i = 0; i < nums[k].size(); ++i)
      for (int a = 0; a <= top; ++a)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i) * (top + 1) + a) = nums[k][i].coeff(a);
  return rank(m);
}

// Homogeneous generators of the section module over X(D) for a complete-locus
// divisor, found degree by degree along an interior point of the tail.
Piece global_frame(const SupportMap& temp, const PPDivisor& d) {
  if (!d.tail.is_full_dimensional())
    throw SupportError("divisor " + d.name + ": complete locus with a lower-dimensional tail is not supported");
  const RatVec w0 = d.tail.relative_interior_point();
  const Piece& generic = temp.pieces_for(d.name).generic;
  std::vector<RatVec> weights;
  for (const auto& c : generic.characters)
    if (std::find_if(weights.begin(), weights.end(), [&](const RatVec& x) { return equal(x, c); }) == weights.end())
      weights.push_back(c);
  std::stable_sort(weights.begin(), weights.end(), [&](const RatVec& a, const RatVec& b) {
    const Rational da = dot(a, w0), db = dot(b, w0);
    return da != db ? da > db : lex_less(a, b);
  });
  const Cone dual = dual_cone(d.tail);
  Piece out;
  std::vector<KVec> gens;
  for (const auto& c : weights) {
    std::vector<KVec> span;
    for (size_t g = 0; g < gens.size(); ++g) {
      const RatVec diff = out.characters[g] - c;
      if (!dual.contains(diff)) continue;
      for (const auto& f : rr_space(eval_divisor(d, diff))) span.push_back(gens[g] * f);
    }
    int current = q_rank(span);
    for (const auto& e : sections_over(temp, {d.name}, c).basis) {
      span.push_back(e);
      const int next = q_rank(span);
      if (next == current) {
        span.pop_back();
        continue;
      }
      current = next;
      gens.push_back(e);
      out.characters.push_back(c);
      out.offsets.push_back(0);
    }
  }
  if (static_cast<int>(gens.size()) != temp.rank)
    throw SupportError("divisor " + d.name + ": found " + std::to_string(gens.size()) + " homogeneous generators, expected " +
                       std::to_string(temp.rank) + "; the cotangent sheaf is not free there");
  out.frame = KMat(temp.rank, temp.rank);
  for (int j = 0; j < temp.rank; ++j) out.frame.col(j) = gens[static_cast<size_t>(j)];
  if (!inverse(out.frame)) throw SupportError("divisor " + d.name + ": homogeneous generators are dependent");
  return out;
}

}  // namespace

SupportMap cotangent_support_map(const DivisorialFan& s) {
  SupportMap h;
  h.fan = s;
  h.rank = s.lattice_rank + 1;
  std::vector<PointP1> points = s.explicit_points();
  if (std::find(points.begin(), points.end(), PointP1::infinity()) == points.end())
    points.push_back(PointP1::infinity());
  const PointP1 fresh = fresh_point(points);
  std::map<std::string, Piece> designated;
  for (auto& [name, piece] : cotangent_slice_map(s, fresh)) designated.emplace(name, std::move(piece));

  for (const PPDivisor* d : s.maximal_divisors()) {
    DivisorPieces dp;
    dp.divisor = d->name;
    auto it = designated.find(d->name);
    if (it == designated.end()) throw SupportError("divisor " + d->name + " is empty at a generic point");
    dp.generic = it->second;
    h.pieces.push_back(std::move(dp));
  }
  for (const auto& p : points)
    for (auto& [name, piece] : cotangent_slice_map(s, p))
      for (auto& dp : h.pieces)
        if (dp.divisor == name) dp.local.emplace(p, piece);

  // designated pieces must hold away from the exceptional points. On a complete
  // locus the slice pieces describe the contraction-free model, whose sections
  // over X(D) are those of X(D); homogeneous generators give the frame there.
  for (auto& dp : h.pieces) {
    const PPDivisor& d = *s.find(dp.divisor);
    for (const auto& [p, piece] : dp.local)
      if (!pieces_agree(d, p, dp.generic, piece)) dp.exceptional.push_back(p);
  }
  for (auto& dp : h.pieces) {
    const PPDivisor& d = *s.find(dp.divisor);
    if (!locus(d).complete || dp.exceptional.empty()) continue;
    Piece frame = global_frame(h, d);
    dp.generic = std::move(frame);
    dp.local.clear();
    dp.exceptional.clear();
  }
  normalize(h);
  const Report rep = validate_support(h);
  if (!rep.ok())
    for (const auto& c : rep.checks)
      if (!c.ok) throw SupportError("cotangent support map fails " + c.name + ": " + c.witnesses.front());
  return h;
}

}  // namespace tvb
