#include "tvb/io.hpp"
#include "tvb/linalg.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tvb {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormat = "tvb/1";

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& obj, const char* key, const std::string& where) {
  const Json& a = field(obj, key, where);
  if (!a.is_array()) bad(where + "." + key, "expected an array");
  return a;
}

int int_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) bad(where + "." + key, "expected a string");
  return v.get<std::string>();
}

Rational rational(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) bad(where, "expected a rational string such as \"3/2\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

RatVec rat_vec(const Json& v, int n, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array");
  if (n >= 0 && static_cast<int>(v.size()) != n) bad(where, "expected " + std::to_string(n) + " entries");
  RatVec out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = rational(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<RatVec> rat_vecs(const Json& v, int n, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array");
  std::vector<RatVec> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(rat_vec(v[i], n, where + "[" + std::to_string(i) + "]"));
  return out;
}

PointP1 point(const Json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a point such as \"0\", \"-1/2\" or \"inf\"");
  try {
    return parse_point(v.get<std::string>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

RationalFunction function(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return RationalFunction(Rational(v.get<long long>()));
  if (!v.is_string()) bad(where, "expected a rational function string");
  try {
    return parse_rational_function(v.get<std::string>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

// Square invertible matrix given as rows.
template <typename S, typename Parse>
Mat<S> square(const Json& v, int r, const std::string& where, Parse parse) {
  if (!v.is_array() || static_cast<int>(v.size()) != r) bad(where, "expected " + std::to_string(r) + " rows");
  Mat<S> m(r, r);
  for (int i = 0; i < r; ++i) {
    const Json& row = v[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != r)
      bad(where, "row " + std::to_string(i) + " must have " + std::to_string(r) + " entries");
    for (int j = 0; j < r; ++j)
      m(i, j) = parse(row[static_cast<size_t>(j)], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  if (!inverse(m)) bad(where, "frame is singular");
  return m;
}

Piece piece(const Json& v, int n, int r, const std::string& where) {
  Piece p;
  p.frame = square<RationalFunction>(field(v, "frame", where), r, where + ".frame", function);
  p.characters = rat_vecs(field(v, "characters", where), n, where + ".characters");
  if (static_cast<int>(p.characters.size()) != r) bad(where + ".characters", "expected " + std::to_string(r) + " characters");
  if (v.contains("offsets")) {
    const RatVec o = rat_vec(v["offsets"], r, where + ".offsets");
    for (int i = 0; i < r; ++i) p.offsets.push_back(o(i));
  } else {
    p.offsets.assign(static_cast<size_t>(r), Rational(0));
  }
  return p;
}

PPDivisor divisor(const Json& v, int n, const std::string& where) {
  PPDivisor d;
  d.name = string_field(v, "name", where);
  const std::string here = where + "(" + d.name + ")";
  try {
    const auto gens = rat_vecs(field(v, "tail", here), n, here + ".tail");
    d.tail = gens.empty() ? Cone::zero(n) : Cone::from_generators(n, gens);
    if (v.contains("coefficients")) {
      const Json& cs = v["coefficients"];
      if (!cs.is_array()) bad(here + ".coefficients", "expected an array");
      for (size_t i = 0; i < cs.size(); ++i) {
        const std::string w = here + ".coefficients[" + std::to_string(i) + "]";
        const PointP1 p = point(field(cs[i], "point", w), w + ".point");
        if (d.coefficients.count(p)) bad(w, "point " + to_string(p) + " given twice");
        if (cs[i].value("empty", false)) {
          d.coefficients[p] = std::nullopt;
          continue;
        }
        const auto verts = rat_vecs(field(cs[i], "vertices", w), n, w + ".vertices");
        const auto rays = cs[i].contains("rays") ? rat_vecs(cs[i]["rays"], n, w + ".rays") : std::vector<RatVec>{};
        if (verts.empty()) bad(w, "a nonempty coefficient needs a vertex (use \"empty\": true)");
        d.coefficients[p] = Polyhedron::from_vertices_rays(n, verts, rays);
      }
    }
  } catch (const GeometryError& e) {
    bad(here, e.what());
  }
  return d;
}

KlyachkoInput klyachko(const Json& v, const std::string& where) {
  KlyachkoInput k;
  const int n = int_field(v, "dimension", where);
  k.rank = int_field(v, "rank", where);
  if (n < 1 || k.rank < 1) bad(where, "dimension and rank must be positive");
  k.projection = rat_vec(field(v, "projection", where), n, where + ".projection");
  const Json& cones = array_field(v, "cones", where);
  std::vector<Cone> maximal;
  try {
    for (size_t i = 0; i < cones.size(); ++i) {
      const std::string w = where + ".cones[" + std::to_string(i) + "]";
      KlyachkoCone c;
      c.cone = Cone::from_generators(n, rat_vecs(field(cones[i], "rays", w), n, w + ".rays"));
      c.frame = square<Rational>(field(cones[i], "frame", w), k.rank, w + ".frame", rational);
      c.characters = rat_vecs(field(cones[i], "characters", w), n, w + ".characters");
      if (static_cast<int>(c.characters.size()) != k.rank) bad(w + ".characters", "expected one character per frame vector");
      maximal.push_back(c.cone);
      k.cones.push_back(std::move(c));
    }
  } catch (const GeometryError& e) {
    bad(where, e.what());
  }
  k.fan = Fan::from_maximal(n, maximal);
  return k;
}

// ------------------------------------------------------------ serialization

Json text(const Rational& q) { return to_string(q); }

Json vec_json(const RatVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(text(v(i)));
  return a;
}

Json vecs_json(const std::vector<RatVec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

template <typename S, typename F>
Json matrix_json(const Mat<S>& m, F to_text) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_text(m(i, j)));
    a.push_back(row);
  }
  return a;
}

Json kmat_json(const KMat& m) {
  return matrix_json(m, [](const RationalFunction& f) { return f.to_string(); });
}

Json piece_json(const Piece& p) {
  Json j;
  j["frame"] = kmat_json(p.frame);
  j["characters"] = vecs_json(p.characters);
  Json o = Json::array();
  for (const auto& c : p.offsets) o.push_back(text(c));
  j["offsets"] = o;
  return j;
}

Json divisor_json(const PPDivisor& d) {
  Json j;
  j["name"] = d.name;
  j["tail"] = vecs_json(d.tail.generators());
  Json cs = Json::array();
  for (const auto& [p, poly] : d.coefficients) {
    Json c;
    c["point"] = to_string(p);
    if (!poly) {
      c["empty"] = true;
    } else {
      c["vertices"] = vecs_json(poly->vertices());
      c["rays"] = vecs_json(poly->rays());
    }
    cs.push_back(c);
  }
  j["coefficients"] = cs;
  return j;
}

bool same_piece(const Piece& a, const Piece& b) {
  if (a.frame.rows() != b.frame.rows() || a.frame.cols() != b.frame.cols() || !(a.frame == b.frame)) return false;
  if (a.characters.size() != b.characters.size() || a.offsets != b.offsets) return false;
  for (size_t i = 0; i < a.characters.size(); ++i)
    if (!equal(a.characters[i], b.characters[i])) return false;
  return true;
}

bool same_fan(const DivisorialFan& a, const DivisorialFan& b) {
  if (a.lattice_rank != b.lattice_rank || a.divisors.size() != b.divisors.size()) return false;
  for (size_t i = 0; i < a.divisors.size(); ++i) {
    const PPDivisor& x = a.divisors[i];
    const PPDivisor& y = b.divisors[i];
    if (x.name != y.name || !(x.tail == y.tail) || x.coefficients != y.coefficients) return false;
  }
  return true;
}

}  // namespace

std::vector<PointP1> referenced_points(const ProjectFile& file) {
  std::vector<PointP1> pts;
  auto add = [&](const PointP1& p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  };
  if (file.fan)
    for (const auto& p : file.fan->explicit_points()) add(p);
  if (file.support)
    for (const auto& dp : file.support->pieces) {
      for (const auto& [p, piece] : dp.local) add(p);
      for (const auto& p : dp.exceptional) add(p);
    }
  std::sort(pts.begin(), pts.end());
  return pts;
}

ProjectFile parse_project(const std::string& input) {
  Json doc;
  try {
    doc = Json::parse(input);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("file", "top level must be an object");
  if (string_field(doc, "format", "file") != kFormat) bad("file.format", std::string("expected \"") + kFormat + "\"");

  ProjectFile f;
  if (doc.contains("points")) {
    const Json& pts = doc["points"];
    if (!pts.is_array()) bad("points", "expected an array");
    for (size_t i = 0; i < pts.size(); ++i) f.points.push_back(point(pts[i], "points[" + std::to_string(i) + "]"));
  }
  if (doc.contains("klyachko")) f.klyachko = klyachko(doc["klyachko"], "klyachko");
  if (doc.contains("fan") || doc.contains("support")) {
    f.lattice_rank = int_field(doc, "lattice_rank", "file");
    if (f.lattice_rank < 0) bad("lattice_rank", "must be nonnegative");
    DivisorialFan fan;
    fan.lattice_rank = f.lattice_rank;
    const Json& ds = array_field(field(doc, "fan", "file"), "divisors", "fan");
    for (size_t i = 0; i < ds.size(); ++i) {
      PPDivisor d = divisor(ds[i], f.lattice_rank, "fan.divisors[" + std::to_string(i) + "]");
      if (fan.find(d.name)) bad("fan.divisors[" + std::to_string(i) + "]", "duplicate divisor name " + d.name);
      fan.divisors.push_back(std::move(d));
    }
    f.fan = fan;
  } else if (doc.contains("lattice_rank")) {
    f.lattice_rank = int_field(doc, "lattice_rank", "file");
  }
  if (doc.contains("support")) {
    const Json& s = doc["support"];
    SupportMap h;
    h.fan = *f.fan;
    h.rank = int_field(s, "rank", "support");
    if (h.rank < 1) bad("support.rank", "must be positive");
    const Json& ps = array_field(s, "pieces", "support");
    for (size_t i = 0; i < ps.size(); ++i) {
      const std::string w = "support.pieces[" + std::to_string(i) + "]";
      DivisorPieces dp;
      dp.divisor = string_field(ps[i], "divisor", w);
      if (!h.fan.find(dp.divisor)) bad(w, "unknown divisor " + dp.divisor);
      for (const auto& other : h.pieces)
        if (other.divisor == dp.divisor) bad(w, "divisor " + dp.divisor + " has two entries");
      dp.generic = piece(ps[i], f.lattice_rank, h.rank, w);
      if (ps[i].contains("local")) {
        const Json& ls = ps[i]["local"];
        if (!ls.is_array()) bad(w + ".local", "expected an array");
        for (size_t j = 0; j < ls.size(); ++j) {
          const std::string lw = w + ".local[" + std::to_string(j) + "]";
          const PointP1 p = point(field(ls[j], "point", lw), lw + ".point");
          if (dp.local.count(p)) bad(lw, "two local pieces at " + to_string(p));
          dp.local.emplace(p, piece(ls[j], f.lattice_rank, h.rank, lw));
        }
      }
      if (ps[i].contains("exceptional")) {
        const Json& es = ps[i]["exceptional"];
        if (!es.is_array()) bad(w + ".exceptional", "expected an array");
        for (size_t j = 0; j < es.size(); ++j)
          dp.exceptional.push_back(point(es[j], w + ".exceptional[" + std::to_string(j) + "]"));
      }
      h.pieces.push_back(std::move(dp));
    }
    try {
      normalize(h);
    } catch (const SupportError& e) {
      bad("support", e.what());
    }
    f.support = std::move(h);
  }
  for (const auto& p : referenced_points(f))
    if (std::find(f.points.begin(), f.points.end(), p) == f.points.end())
      bad("points", "point " + to_string(p) + " is used but not declared");
  std::sort(f.points.begin(), f.points.end());
  f.points.erase(std::unique(f.points.begin(), f.points.end()), f.points.end());
  return f;
}

ProjectFile load_project(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_project(ss.str());
}

std::string serialize_project(const ProjectFile& f) {
  Json doc;
  doc["format"] = kFormat;
  if (f.fan) doc["lattice_rank"] = f.lattice_rank;
  Json pts = Json::array();
  for (const auto& p : f.points) pts.push_back(to_string(p));
  doc["points"] = pts;
  if (f.fan) {
    Json ds = Json::array();
    for (const auto& d : f.fan->divisors) ds.push_back(divisor_json(d));
    doc["fan"]["divisors"] = ds;
  }
  if (f.support) {
    Json s;
    s["rank"] = f.support->rank;
    Json ps = Json::array();
    for (const auto& dp : f.support->pieces) {
      Json p;
      p["divisor"] = dp.divisor;
      const Json g = piece_json(dp.generic);
      for (auto& [k, v] : g.items()) p[k] = v;
      Json ls = Json::array();
      for (const auto& [pt, piece] : dp.local) {
        Json l;
        l["point"] = to_string(pt);
        const Json pj = piece_json(piece);
        for (auto& [k, v] : pj.items()) l[k] = v;
        ls.push_back(l);
      }
      p["local"] = ls;
      Json es = Json::array();
      for (const auto& e : dp.exceptional) es.push_back(to_string(e));
      p["exceptional"] = es;
      ps.push_back(p);
    }
    s["pieces"] = ps;
    doc["support"] = s;
  }
  if (f.klyachko) {
    const KlyachkoInput& k = *f.klyachko;
    Json j;
    j["dimension"] = k.fan.dim;
    j["rank"] = k.rank;
    j["projection"] = vec_json(k.projection);
    Json cs = Json::array();
    for (const auto& c : k.cones) {
      Json cj;
      cj["rays"] = vecs_json(c.cone.rays());
      cj["frame"] = matrix_json(c.frame, [](const Rational& q) { return to_string(q); });
      cj["characters"] = vecs_json(c.characters);
      cs.push_back(cj);
    }
    j["cones"] = cs;
    doc["klyachko"] = j;
  }
  return doc.dump(2) + "\n";
}

bool same_project(const ProjectFile& a, const ProjectFile& b) {
  if (a.lattice_rank != b.lattice_rank || a.points != b.points) return false;
  if (a.fan.has_value() != b.fan.has_value() || a.support.has_value() != b.support.has_value() ||
      a.klyachko.has_value() != b.klyachko.has_value())
    return false;
  if (a.fan && !same_fan(*a.fan, *b.fan)) return false;
  if (a.support) {
    const SupportMap& x = *a.support;
    const SupportMap& y = *b.support;
    if (x.rank != y.rank || x.pieces.size() != y.pieces.size() || !same_fan(x.fan, y.fan)) return false;
    for (size_t i = 0; i < x.pieces.size(); ++i) {
      const auto& p = x.pieces[i];
      const auto& q = y.pieces[i];
      if (p.divisor != q.divisor || !same_piece(p.generic, q.generic) || p.exceptional != q.exceptional ||
          p.local.size() != q.local.size())
        return false;
      for (const auto& [pt, piece] : p.local) {
        auto it = q.local.find(pt);
        if (it == q.local.end() || !same_piece(piece, it->second)) return false;
      }
    }
  }
  if (a.klyachko) {
    const KlyachkoInput& x = *a.klyachko;
    const KlyachkoInput& y = *b.klyachko;
    if (x.rank != y.rank || !equal(x.projection, y.projection) || !(x.fan.cones == y.fan.cones) ||
        x.cones.size() != y.cones.size())
      return false;
    for (size_t i = 0; i < x.cones.size(); ++i) {
      const auto& c = x.cones[i];
      const auto& d = y.cones[i];
      if (!(c.cone == d.cone) || !(c.frame == d.frame) || c.characters.size() != d.characters.size()) return false;
      for (size_t j = 0; j < c.characters.size(); ++j)
        if (!equal(c.characters[j], d.characters[j])) return false;
    }
  }
  return true;
}

RatVec parse_weight(const std::string& text) {
  std::vector<Rational> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      parts.push_back(parse_rational(item));
    } catch (const std::exception& e) {
      throw ParseError("bad weight \"" + text + "\": " + e.what());
    }
  }
  if (parts.empty()) throw ParseError("empty weight");
  return make_vec(parts);
}

}  // namespace tvb
