#include "tvb/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tvb {

namespace {

constexpr double kUnit = 60.0;  // pixels per lattice unit
constexpr const char* kFill[] = {"#dbe9f6", "#fde2c8", "#d8f0d2", "#f3d6e8", "#e8e3f7", "#fbf3c4"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(x) < 0.005 ? 0.0 : x);
  return buf;
}

double dbl(const Rational& q) { return q.convert_to<double>(); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Box {
  Rational lo[2], hi[2];
};

class Canvas {
 public:
  Canvas(const Box& box, int dim) : box_(box), dim_(dim) {
    width_ = dbl(box.hi[0] - box.lo[0]) * kUnit;
    height_ = dim == 2 ? dbl(box.hi[1] - box.lo[1]) * kUnit : 2 * kUnit;
  }

  std::pair<double, double> at(const RatVec& x) const {
    const double px = dbl(x(0) - box_.lo[0]) * kUnit;
    const double py = dim_ == 2 ? dbl(box_.hi[1] - x(1)) * kUnit : height_ / 2;
    return {px, py};
  }

  double width() const { return width_; }
  double height() const { return height_; }

 private:
  Box box_;
  int dim_;
  double width_ = 0, height_ = 0;
};

// The cell cut down to the drawing box, as a bounded polyhedron.
std::optional<Polyhedron> clipped(const Polyhedron& cell, const Box& box, int n) {
  const Rational reach = (box.hi[0] - box.lo[0]) + (n == 2 ? box.hi[1] - box.lo[1] : Rational(0)) + 1;
  std::vector<RatVec> pts = cell.vertices();
  for (const auto& v : cell.vertices())
    for (const auto& r : cell.rays()) pts.push_back(v + reach * r / (r.cwiseAbs().maxCoeff()));
  const Polyhedron bounded = Polyhedron::from_vertices_rays(n, pts);
  std::vector<RatVec> corners;
  if (n == 1) {
    corners = {make_vec({box.lo[0]}), make_vec({box.hi[0]})};
  } else {
    corners = {make_vec({box.lo[0], box.lo[1]}), make_vec({box.hi[0], box.lo[1]}), make_vec({box.hi[0], box.hi[1]}),
               make_vec({box.lo[0], box.hi[1]})};
  }
  return intersect(bounded, Polyhedron::from_vertices_rays(n, corners));
}

// Vertices of a convex polygon in counterclockwise order, exactly.
std::vector<RatVec> polygon_order(std::vector<RatVec> pts) {
  RatVec c = RatVec::Zero(2);
  for (const auto& p : pts) c += p;
  c /= Rational(static_cast<long>(pts.size()));
  auto half = [&](const RatVec& p) {
    const RatVec d = p - c;
    return d(1) > 0 || (d(1) == 0 && d(0) > 0) ? 0 : 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const RatVec da = a - c, db = b - c;
    return da(0) * db(1) - da(1) * db(0) > 0;
  });
  return pts;
}

std::string label(const RatVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v(i));
  return s + ")";
}

}  // namespace

std::string render_slice_svg(const DivisorialFan& s, const PointP1& p) {
  const int n = s.lattice_rank;
  if (n < 1 || n > 2) throw GeometryError("render needs lattice rank 1 or 2, got " + std::to_string(n));
  const PolyhedralComplex complex = slice_at(s, p);
  const auto cells = complex.maximal_cells();

  Box box;
  for (int i = 0; i < 2; ++i) box.lo[i] = box.hi[i] = 0;
  for (const auto& c : complex.cells)
    for (const auto& v : c.vertices())
      for (int i = 0; i < n; ++i) {
        box.lo[i] = std::min(box.lo[i], v(i));
        box.hi[i] = std::max(box.hi[i], v(i));
      }
  for (int i = 0; i < n; ++i) {
    box.lo[i] = floor_q(box.lo[i]) - 2;
    box.hi[i] = ceil_q(box.hi[i]) + 2;
  }
  const Canvas canvas(box, n);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(canvas.width()) << "\" height=\""
      << num(canvas.height()) << "\" viewBox=\"0 0 " << num(canvas.width()) << " " << num(canvas.height()) << "\">\n"
      << "  <title>slice at P = " << escape(to_string(p)) << "</title>\n"
      << "  <defs>\n"
      << "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" "
         "orient=\"auto\">\n"
      << "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#333333\"/>\n"
      << "    </marker>\n"
      << "  </defs>\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << num(canvas.width()) << "\" height=\"" << num(canvas.height())
      << "\" fill=\"#ffffff\"/>\n";

  // integer grid
  svg << "  <g stroke=\"#eeeeee\" stroke-width=\"1\">\n";
  for (Rational x = box.lo[0]; x <= box.hi[0]; x += 1) {
    const auto [px, py] = canvas.at(n == 2 ? make_vec({x, box.lo[1]}) : make_vec({x}));
    (void)py;
    svg << "    <line x1=\"" << num(px) << "\" y1=\"0\" x2=\"" << num(px) << "\" y2=\"" << num(canvas.height()) << "\"/>\n";
  }
  if (n == 2)
    for (Rational y = box.lo[1]; y <= box.hi[1]; y += 1) {
      const auto [px, py] = canvas.at(make_vec({box.lo[0], y}));
      (void)px;
      svg << "    <line x1=\"0\" y1=\"" << num(py) << "\" x2=\"" << num(canvas.width()) << "\" y2=\"" << num(py) << "\"/>\n";
    }
  svg << "  </g>\n";

  // cells
  svg << "  <g stroke=\"#1f4e79\" stroke-width=\"2\">\n";
  for (size_t i = 0; i < cells.size(); ++i) {
    const auto clip = clipped(cells[i], box, n);
    if (!clip) continue;
    auto pts = clip->vertices();
    if (n == 2 && clip->dim() == 2) {
      pts = polygon_order(pts);
      svg << "    <polygon fill=\"" << kFill[i % 6] << "\" points=\"";
      for (size_t k = 0; k < pts.size(); ++k) {
        const auto [x, y] = canvas.at(pts[k]);
        svg << (k ? " " : "") << num(x) << "," << num(y);
      }
      svg << "\"/>\n";
    } else if (pts.size() == 2) {
      const auto [x1, y1] = canvas.at(pts[0]);
      const auto [x2, y2] = canvas.at(pts[1]);
      svg << "    <line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\" stroke-width=\"" << (n == 1 ? 6 : 2) << "\" stroke=\"" << (n == 1 ? "#5b8fc7" : "#1f4e79") << "\"/>\n";
    }
  }
  svg << "  </g>\n";

  // tail rays at every vertex of an unbounded cell
  std::vector<std::pair<RatVec, RatVec>> arrows;
  for (const auto& c : cells)
    for (const auto& v : c.vertices())
      for (const auto& r : c.rays()) {
        const RatVec dir = r / r.cwiseAbs().maxCoeff();
        const bool seen = std::any_of(arrows.begin(), arrows.end(), [&](const auto& a) {
          return equal(a.first, v) && equal(a.second, dir);
        });
        if (!seen) arrows.emplace_back(v, dir);
      }
  svg << "  <g stroke=\"#333333\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\">\n";
  for (const auto& [v, dir] : arrows) {
    const auto [x1, y1] = canvas.at(v);
    const auto [x2, y2] = canvas.at(v + dir);
    svg << "    <line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
        << "\"/>\n";
  }
  svg << "  </g>\n";

  // vertices
  svg << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n";
  for (const auto& v : complex.vertices()) {
    const auto [x, y] = canvas.at(v);
    svg << "    <circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3.5\"/>\n";
    svg << "    <text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6) << "\">" << escape(label(v)) << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tvb
