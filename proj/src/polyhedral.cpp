#include "tvb/polyhedral.hpp"

#include "tvb/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tvb {

namespace {

void check_dim(int dim) {
  if (dim < 0 || dim > kMaxAmbientDim)
    throw GeometryError("ambient dimension " + std::to_string(dim) + " outside supported range 0.." +
                        std::to_string(kMaxAmbientDim));
}

void check_vec(int dim, const RatVec& v) {
  if (v.size() != dim) throw GeometryError("vector " + to_string(v) + " has wrong dimension");
}

RatMat rows_of(int dim, const std::vector<RatVec>& vs) {
  RatMat m(static_cast<Eigen::Index>(vs.size()), dim);
  for (size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return m;
}

bool is_zero_vec(const RatVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

void sort_unique(std::vector<RatVec>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end(), [](const RatVec& a, const RatVec& b) { return equal(a, b); }),
           vs.end());
}

bool vec_list_less(const std::vector<RatVec>& a, const std::vector<RatVec>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), lex_less);
}

bool vec_list_equal(const std::vector<RatVec>& a, const std::vector<RatVec>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

// Calls fn on every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

std::vector<RatVec> columns(const RatMat& m) {
  std::vector<RatVec> out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

// Canonical basis of the span of vs: primitive rows of the RREF.
std::vector<RatVec> canonical_basis(int dim, const std::vector<RatVec>& vs) {
  if (vs.empty()) return {};
  const auto ech = rref(rows_of(dim, vs));
  std::vector<RatVec> out;
  for (size_t r = 0; r < ech.pivots.size(); ++r)
    out.push_back(primitive(RatVec(ech.reduced.row(static_cast<Eigen::Index>(r)).transpose())));
  return out;
}

// Inner normals of cone(gens): +/- an equation basis of the span plus facet normals.
std::vector<RatVec> facet_normals(int dim, const std::vector<RatVec>& gens) {
  std::vector<RatVec> out;
  if (gens.empty()) {
    for (int i = 0; i < dim; ++i) {
      RatVec e = RatVec::Zero(dim);
      e(i) = 1;
      out.push_back(e);
      out.push_back(-e);
    }
    sort_unique(out);
    return out;
  }
  const RatMat g = rows_of(dim, gens);
  const int k = rank(g);
  std::vector<RatVec> eqs = canonical_basis(dim, columns(nullspace(g)));
  for (const auto& e : eqs) {
    out.push_back(e);
    out.push_back(-e);
  }
  const int ngen = static_cast<int>(gens.size());
  for_each_subset(ngen, k - 1, [&](const std::vector<int>& s) {
    std::vector<RatVec> rows;
    for (int i : s) rows.push_back(gens[static_cast<size_t>(i)]);
    rows.insert(rows.end(), eqs.begin(), eqs.end());
    RatMat ns = rows.empty() ? RatMat(RatMat::Identity(dim, dim)) : nullspace(rows_of(dim, rows));
    if (ns.cols() != 1) return;
    RatVec n = ns.col(0);
    bool pos = false, neg = false;
    for (const auto& v : gens) {
      const Rational d = dot(n, v);
      if (d > 0) pos = true;
      if (d < 0) neg = true;
    }
    if (pos && neg) return;
    if (neg) n = -n;
    out.push_back(primitive(n));
  });
  sort_unique(out);
  return out;
}

struct RayData {
  std::vector<RatVec> rays;
  std::vector<RatVec> lineality;
};

RayData extreme_rays(int dim, const std::vector<RatVec>& normals) {
  RayData out;
  if (normals.empty()) {
    for (int i = 0; i < dim; ++i) {
      RatVec e = RatVec::Zero(dim);
      e(i) = 1;
      out.lineality.push_back(e);
    }
    return out;
  }
  const RatMat a = rows_of(dim, normals);
  out.lineality = canonical_basis(dim, columns(nullspace(a)));
  const int need = dim - 1 - static_cast<int>(out.lineality.size());
  if (need < 0) return out;
  const int m = static_cast<int>(normals.size());
  for_each_subset(m, need, [&](const std::vector<int>& s) {
    std::vector<RatVec> rows;
    for (int i : s) rows.push_back(normals[static_cast<size_t>(i)]);
    rows.insert(rows.end(), out.lineality.begin(), out.lineality.end());
    RatMat ns = rows.empty() ? RatMat(RatMat::Identity(dim, dim)) : nullspace(rows_of(dim, rows));
    if (ns.cols() != 1) return;
    RatVec x = ns.col(0);
    bool pos = false, neg = false;
    for (const auto& n : normals) {
      const Rational d = dot(n, x);
      if (d > 0) pos = true;
      if (d < 0) neg = true;
    }
    if (pos && neg) return;
    if (neg) x = -x;
    out.rays.push_back(primitive(x));
  });
  sort_unique(out.rays);
  return out;
}

RatVec append(const RatVec& v, const Rational& last) {
  RatVec out(v.size() + 1);
  out.head(v.size()) = v;
  out(v.size()) = last;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Cone

Cone Cone::from_generators(int dim, const std::vector<RatVec>& generators) {
  check_dim(dim);
  std::vector<RatVec> gens;
  for (const auto& g : generators) {
    check_vec(dim, g);
    if (!is_zero_vec(g)) gens.push_back(primitive(g));
  }
  sort_unique(gens);
  return from_inequalities(dim, facet_normals(dim, gens));
}

Cone Cone::from_inequalities(int dim, const std::vector<RatVec>& inner_normals) {
  check_dim(dim);
  std::vector<RatVec> normals;
  for (const auto& n : inner_normals) {
    check_vec(dim, n);
    if (!is_zero_vec(n)) normals.push_back(primitive(n));
  }
  sort_unique(normals);
  Cone c;
  c.dim_ = dim;
  auto rd = extreme_rays(dim, normals);
  c.rays_ = std::move(rd.rays);
  c.lineality_ = std::move(rd.lineality);
  c.inequalities_ = facet_normals(dim, c.generators());
  const auto gens = c.generators();
  c.span_dim_ = gens.empty() ? 0 : rank(rows_of(dim, gens));
  return c;
}

Cone Cone::zero(int dim) { return from_generators(dim, {}); }

Cone Cone::full(int dim) { return from_inequalities(dim, {}); }

std::vector<RatVec> Cone::generators() const {
  std::vector<RatVec> out = rays_;
  for (const auto& l : lineality_) {
    out.push_back(l);
    out.push_back(-l);
  }
  return out;
}

bool Cone::contains(const RatVec& x) const {
  check_vec(dim_, x);
  for (const auto& n : inequalities_)
    if (dot(n, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  if (other.dim_ != dim_) return false;
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

RatVec Cone::relative_interior_point() const {
  RatVec p = RatVec::Zero(dim_);
  for (const auto& r : rays_) p += r;
  return p;
}

bool operator==(const Cone& a, const Cone& b) {
  return a.dim_ == b.dim_ && vec_list_equal(a.rays_, b.rays_) && vec_list_equal(a.lineality_, b.lineality_);
}

bool operator<(const Cone& a, const Cone& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  if (a.span_dim_ != b.span_dim_) return a.span_dim_ < b.span_dim_;
  if (!vec_list_equal(a.lineality_, b.lineality_)) return vec_list_less(a.lineality_, b.lineality_);
  return vec_list_less(a.rays_, b.rays_);
}

std::string Cone::describe() const {
  std::string s = "cone{";
  for (size_t i = 0; i < rays_.size(); ++i) s += (i ? ", " : "") + to_string(rays_[i]);
  s += "}";
  if (!lineality_.empty()) {
    s += " + lin{";
    for (size_t i = 0; i < lineality_.size(); ++i) s += (i ? ", " : "") + to_string(lineality_[i]);
    s += "}";
  }
  return s;
}

// ---------------------------------------------------------------- Polyhedron

Polyhedron Polyhedron::from_homogenization(int dim, Cone hom) {
  if (!hom.is_pointed()) throw GeometryError("polyhedron contains a line");
  Polyhedron p;
  p.dim_ = dim;
  for (const auto& r : hom.rays()) {
    const Rational h = r(dim);
    if (h > 0) {
      p.vertices_.push_back(RatVec(r.head(dim) / h));
    } else {
      p.rays_.push_back(RatVec(r.head(dim)));
    }
  }
  if (p.vertices_.empty()) throw GeometryError("polyhedron has no vertices");
  sort_unique(p.vertices_);
  for (const auto& n : hom.inequalities()) {
    RatVec a = n.head(dim);
    if (is_zero_vec(a)) continue;
    p.halfspaces_.push_back({a, -n(dim)});
  }
  p.hom_ = std::move(hom);
  return p;
}

Polyhedron Polyhedron::from_vertices_rays(int dim, const std::vector<RatVec>& vertices,
                                          const std::vector<RatVec>& rays) {
  check_dim(dim + 1);
  if (vertices.empty()) throw GeometryError("polyhedron needs at least one vertex");
  std::vector<RatVec> gens;
  for (const auto& v : vertices) {
    check_vec(dim, v);
    gens.push_back(append(v, 1));
  }
  for (const auto& r : rays) {
    check_vec(dim, r);
    gens.push_back(append(r, 0));
  }
  return from_homogenization(dim, Cone::from_generators(dim + 1, gens));
}

std::optional<Polyhedron> Polyhedron::from_halfspaces(int dim, const std::vector<Halfspace>& halfspaces) {
  check_dim(dim + 1);
  std::vector<RatVec> normals;
  for (const auto& h : halfspaces) {
    check_vec(dim, h.normal);
    normals.push_back(append(h.normal, -h.offset));
  }
  RatVec lift = RatVec::Zero(dim + 1);
  lift(dim) = 1;
  normals.push_back(lift);
  Cone hom = Cone::from_inequalities(dim + 1, normals);
  bool has_point = false;
  for (const auto& r : hom.rays())
    if (r(dim) > 0) has_point = true;
  if (!has_point) return std::nullopt;
  return from_homogenization(dim, std::move(hom));
}

Polyhedron Polyhedron::from_cone(const Cone& cone) {
  if (!cone.is_pointed()) throw GeometryError("cone is not strongly convex: " + cone.describe());
  return from_vertices_rays(cone.ambient_dim(), {RatVec::Zero(cone.ambient_dim())}, cone.rays());
}

Polyhedron Polyhedron::point(const RatVec& p) {
  return from_vertices_rays(static_cast<int>(p.size()), {p});
}

bool Polyhedron::contains(const RatVec& x) const {
  check_vec(dim_, x);
  for (const auto& h : halfspaces_)
    if (dot(h.normal, x) < h.offset) return false;
  return true;
}

bool Polyhedron::contains(const Polyhedron& other) const {
  if (other.dim_ != dim_) return false;
  return hom_.contains(other.hom_);
}

RatVec Polyhedron::relative_interior_point() const {
  RatVec p = RatVec::Zero(dim_);
  for (const auto& v : vertices_) p += v;
  p /= Rational(static_cast<long>(vertices_.size()));
  for (const auto& r : rays_) p += r;
  return p;
}

int Polyhedron::dim() const { return hom_.dim() - 1; }

bool operator==(const Polyhedron& a, const Polyhedron& b) {
  return a.dim_ == b.dim_ && vec_list_equal(a.vertices_, b.vertices_) && vec_list_equal(a.rays_, b.rays_);
}

bool operator<(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  const int da = a.dim(), db = b.dim();
  if (da != db) return da < db;
  if (!vec_list_equal(a.vertices_, b.vertices_)) return vec_list_less(a.vertices_, b.vertices_);
  return vec_list_less(a.rays_, b.rays_);
}

std::string Polyhedron::describe() const {
  std::string s = "conv{";
  for (size_t i = 0; i < vertices_.size(); ++i) s += (i ? ", " : "") + to_string(vertices_[i]);
  s += "}";
  if (!rays_.empty()) {
    s += " + cone{";
    for (size_t i = 0; i < rays_.size(); ++i) s += (i ? ", " : "") + to_string(rays_[i]);
    s += "}";
  }
  return s;
}

// ---------------------------------------------------------------- operations

Cone tail_cone(const Polyhedron& poly) { return Cone::from_generators(poly.ambient_dim(), poly.rays()); }

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw GeometryError("minkowski_sum: dimension mismatch");
  std::vector<RatVec> verts;
  for (const auto& v : a.vertices())
    for (const auto& w : b.vertices()) verts.push_back(v + w);
  std::vector<RatVec> rays = a.rays();
  rays.insert(rays.end(), b.rays().begin(), b.rays().end());
  return Polyhedron::from_vertices_rays(a.ambient_dim(), verts, rays);
}

ExtRational eval_u(const RatVec& u, const Polyhedron& poly) {
  check_vec(poly.ambient_dim(), u);
  for (const auto& r : poly.rays())
    if (dot(u, r) < 0) return ExtRational::minus_infinity();
  Rational best = dot(u, poly.vertices().front());
  for (const auto& v : poly.vertices()) best = std::min(best, dot(u, v));
  return best;
}

Cone dual_cone(const Cone& cone) { return Cone::from_generators(cone.ambient_dim(), cone.inequalities()); }

Cone cone_over(const Polyhedron& poly, int height) {
  if (height != 1 && height != -1) throw GeometryError("cone_over: height must be +1 or -1");
  std::vector<RatVec> gens;
  for (const auto& v : poly.vertices()) gens.push_back(append(v, height));
  for (const auto& r : poly.rays()) gens.push_back(append(r, 0));
  return Cone::from_generators(poly.ambient_dim() + 1, gens);
}

std::optional<Polyhedron> intersect(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw GeometryError("intersect: dimension mismatch");
  std::vector<Halfspace> hs = a.halfspaces();
  hs.insert(hs.end(), b.halfspaces().begin(), b.halfspaces().end());
  return Polyhedron::from_halfspaces(a.ambient_dim(), hs);
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw GeometryError("intersect: dimension mismatch");
  std::vector<RatVec> ns = a.inequalities();
  ns.insert(ns.end(), b.inequalities().begin(), b.inequalities().end());
  return Cone::from_inequalities(a.ambient_dim(), ns);
}

bool is_face(const Polyhedron& face, const Polyhedron& poly) {
  if (face.ambient_dim() != poly.ambient_dim() || !poly.contains(face)) return false;
  const RatVec x = face.relative_interior_point();
  std::vector<Halfspace> hs = poly.halfspaces();
  for (const auto& h : poly.halfspaces())
    if (dot(h.normal, x) == h.offset) hs.push_back({-h.normal, -h.offset});
  const auto minimal = Polyhedron::from_halfspaces(poly.ambient_dim(), hs);
  return minimal && *minimal == face;
}

bool is_face(const Cone& face, const Cone& cone) {
  if (face.ambient_dim() != cone.ambient_dim() || !cone.contains(face)) return false;
  const RatVec x = face.relative_interior_point();
  std::vector<RatVec> ns = cone.inequalities();
  for (const auto& n : cone.inequalities())
    if (dot(n, x) == 0) ns.push_back(-n);
  return Cone::from_inequalities(cone.ambient_dim(), ns) == face;
}

std::vector<Polyhedron> faces(const Polyhedron& poly) {
  std::vector<Polyhedron> out{poly};
  for (size_t i = 0; i < out.size(); ++i) {
    const Polyhedron f = out[i];
    const RatVec x = f.relative_interior_point();
    for (const auto& h : poly.halfspaces()) {
      if (dot(h.normal, x) == h.offset) continue;
      std::vector<Halfspace> hs = f.halfspaces();
      hs.push_back({-h.normal, -h.offset});
      hs.push_back(h);
      const auto g = Polyhedron::from_halfspaces(poly.ambient_dim(), hs);
      if (!g) continue;
      if (std::find(out.begin(), out.end(), *g) == out.end()) out.push_back(*g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cone> faces(const Cone& cone) {
  std::vector<Cone> out{cone};
  for (size_t i = 0; i < out.size(); ++i) {
    const Cone f = out[i];
    const RatVec x = f.relative_interior_point();
    for (const auto& n : cone.inequalities()) {
      if (dot(n, x) == 0) continue;
      std::vector<RatVec> ns = f.inequalities();
      ns.push_back(n);
      ns.push_back(-n);
      Cone g = Cone::from_inequalities(cone.ambient_dim(), ns);
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_smooth_cone(const Cone& cone) {
  if (!cone.is_pointed()) return false;
  const auto& rays = cone.rays();
  const int k = static_cast<int>(rays.size());
  const int n = cone.ambient_dim();
  if (k == 0) return true;
  if (k > n) return false;
  RatMat r = rows_of(n, rays);
  if (rank(r) < k) return false;
  Integer g = 0;
  for_each_subset(n, k, [&](const std::vector<int>& cols) {
    RatMat minor(k, k);
    for (int j = 0; j < k; ++j) minor.col(j) = r.col(cols[static_cast<size_t>(j)]);
    g = gcd(g, numer(determinant(minor)));
  });
  return g == 1;
}

std::optional<Polyhedron> slice_at_height(const Cone& cone, const Rational& height) {
  const int n = cone.ambient_dim() - 1;
  std::vector<Halfspace> hs;
  for (const auto& a : cone.inequalities()) {
    RatVec head = a.head(n);
    if (is_zero_vec(head)) {
      if (a(n) * height < 0) return std::nullopt;
      continue;
    }
    hs.push_back({head, -a(n) * height});
  }
  return Polyhedron::from_halfspaces(n, hs);
}

// ---------------------------------------------------------------- Fan

Fan Fan::from_maximal(int dim, const std::vector<Cone>& cones) {
  Fan f;
  f.dim = dim;
  std::set<Cone> seen;
  for (const auto& c : cones) {
    if (c.ambient_dim() != dim) throw GeometryError("fan: cone of wrong dimension");
    for (auto& face : faces(c)) seen.insert(std::move(face));
  }
  if (seen.empty()) seen.insert(Cone::zero(dim));
  f.cones.assign(seen.begin(), seen.end());
  return f;
}

std::vector<Cone> Fan::maximal_cones() const {
  std::vector<Cone> out;
  for (const auto& c : cones) {
    bool maximal = true;
    for (const auto& d : cones)
      if (!(d == c) && d.contains(c)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(c);
  }
  return out;
}

std::vector<RatVec> Fan::rays() const {
  std::vector<RatVec> out;
  for (const auto& c : cones) out.insert(out.end(), c.rays().begin(), c.rays().end());
  sort_unique(out);
  return out;
}

std::vector<std::string> Fan::validate() const {
  std::vector<std::string> errs;
  for (const auto& c : cones) {
    if (!c.is_pointed()) errs.push_back("cone " + c.describe() + " is not strongly convex");
    for (const auto& f : faces(c))
      if (!contains_cone(f)) errs.push_back("face " + f.describe() + " of " + c.describe() + " missing");
  }
  const auto maxi = maximal_cones();
  for (size_t i = 0; i < maxi.size(); ++i)
    for (size_t j = i + 1; j < maxi.size(); ++j) {
      const Cone x = intersect(maxi[i], maxi[j]);
      if (!is_face(x, maxi[i]) || !is_face(x, maxi[j]))
        errs.push_back("cones " + maxi[i].describe() + " and " + maxi[j].describe() +
                       " meet in a non-face " + x.describe());
    }
  return errs;
}

bool Fan::is_complete() const {
  const auto maxi = maximal_cones();
  if (maxi.empty()) return false;
  if (dim == 0) return true;
  std::map<std::vector<std::string>, int> facet_count;
  for (const auto& c : maxi) {
    if (!c.is_full_dimensional()) return false;
    for (const auto& f : faces(c)) {
      if (f.dim() != dim - 1) continue;
      std::vector<std::string> key;
      for (const auto& r : f.generators()) key.push_back(to_string(r));
      ++facet_count[key];
    }
  }
  for (const auto& [key, n] : facet_count)
    if (n != 2) return false;
  return true;
}

bool Fan::contains_cone(const Cone& c) const { return std::find(cones.begin(), cones.end(), c) != cones.end(); }

std::optional<Cone> Fan::locate(const RatVec& x) const {
  for (const auto& c : maximal_cones())
    if (c.contains(x)) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------- PolyhedralComplex

PolyhedralComplex PolyhedralComplex::from_cells(int dim, const std::vector<Polyhedron>& cells) {
  PolyhedralComplex pc;
  pc.dim = dim;
  std::set<Polyhedron> seen;
  for (const auto& c : cells) {
    if (c.ambient_dim() != dim) throw GeometryError("complex: cell of wrong dimension");
    for (auto& f : faces(c)) seen.insert(std::move(f));
  }
  pc.cells.assign(seen.begin(), seen.end());
  return pc;
}

std::vector<Polyhedron> PolyhedralComplex::maximal_cells() const {
  std::vector<Polyhedron> out;
  for (const auto& c : cells) {
    bool maximal = true;
    for (const auto& d : cells)
      if (!(d == c) && d.contains(c)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(c);
  }
  return out;
}

std::vector<RatVec> PolyhedralComplex::vertices() const {
  std::vector<RatVec> out;
  for (const auto& c : cells) out.insert(out.end(), c.vertices().begin(), c.vertices().end());
  sort_unique(out);
  return out;
}

std::vector<std::string> PolyhedralComplex::validate() const {
  std::vector<std::string> errs;
  for (const auto& c : cells)
    for (const auto& f : faces(c))
      if (!contains_cell(f)) errs.push_back("face " + f.describe() + " of " + c.describe() + " missing");
  const auto maxi = maximal_cells();
  for (size_t i = 0; i < maxi.size(); ++i)
    for (size_t j = i + 1; j < maxi.size(); ++j) {
      const auto x = intersect(maxi[i], maxi[j]);
      if (!x) continue;
      if (!is_face(*x, maxi[i]) || !is_face(*x, maxi[j]))
        errs.push_back("cells " + maxi[i].describe() + " and " + maxi[j].describe() + " meet in a non-face " +
                       x->describe());
    }
  for (const auto& e : tail_fan().validate()) errs.push_back("tail fan: " + e);
  return errs;
}

Fan PolyhedralComplex::tail_fan() const {
  std::vector<Cone> tails;
  for (const auto& c : cells) tails.push_back(tail_cone(c));
  return Fan::from_maximal(dim, tails);
}

bool PolyhedralComplex::contains_cell(const Polyhedron& p) const {
  return std::find(cells.begin(), cells.end(), p) != cells.end();
}

bool same_cells(const PolyhedralComplex& a, const PolyhedralComplex& b) {
  return a.dim == b.dim && a.cells == b.cells;
}

RatMat complete_to_basis(const std::vector<RatVec>& vectors, int n) {
  const int k = static_cast<int>(vectors.size());
  if (k > n) throw GeometryError("too many vectors for a basis");
  RatMat a(n, k);
  for (int j = 0; j < k; ++j) {
    if (vectors[static_cast<size_t>(j)].size() != n) throw GeometryError("complete_to_basis: dimension mismatch");
    for (int i = 0; i < n; ++i) {
      if (!is_integral(vectors[static_cast<size_t>(j)](i))) throw GeometryError("complete_to_basis: non-integral vector");
      a(i, j) = vectors[static_cast<size_t>(j)](i);
    }
  }
  RatMat v = RatMat::Identity(n, n);
  // unimodular row operations bringing a to upper triangular form
  for (int c = 0; c < k; ++c) {
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = numer(a(c, c)), r1 = numer(a(i, c));
      while (r1 != 0) {
        const Integer q = r0 / r1;
        Integer tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = x0 - q * x1;
        x0 = x1;
        x1 = tmp;
        tmp = y0 - q * y1;
        y0 = y1;
        y1 = tmp;
      }
      // r0 = x0 * a(c,c) + y0 * a(i,c); (x1, y1) is the cofactor pair killing row i
      const auto rc = a.row(c).eval(), ri = a.row(i).eval();
      const auto vc = v.row(c).eval(), vi = v.row(i).eval();
      a.row(c) = Rational(x0) * rc + Rational(y0) * ri;
      a.row(i) = Rational(x1) * rc + Rational(y1) * ri;
      v.row(c) = Rational(x0) * vc + Rational(y0) * vi;
      v.row(i) = Rational(x1) * vc + Rational(y1) * vi;
    }
    if (a(c, c) == 0) throw GeometryError("vectors are linearly dependent");
  }
  Rational det = 1;
  for (int c = 0; c < k; ++c) det *= a(c, c);
  if (det != 1 && det != -1) throw GeometryError("vectors do not extend to a lattice basis");
  RatMat h = RatMat::Identity(n, n);
  h.topLeftCorner(k, k) = a.topLeftCorner(k, k);
  return multiply(*inverse(v), h);
}

}  // namespace tvb
