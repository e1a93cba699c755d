#include "tvb/cli.hpp"
#include "tvb/render.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <set>

namespace tvb {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string file;
  std::string format = "text";
  std::string weight;
  bool all = false;
  std::string out;
  std::string point;
};

// Failure of the bundle itself (exit 1), as opposed to a malformed file.
class Invalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json vec_json(const RatVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
  return a;
}

Json kvec_json(const KVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i).to_string());
  return a;
}

Json kmat_json(const KMat& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(kvec_json(m.row(i).transpose()));
  return a;
}

std::string matrix_text(const KMat& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).to_string();
  }
  return s + "]";
}

Json report_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j;
    j["name"] = c.name;
    j["ok"] = c.ok;
    j["witnesses"] = c.witnesses;
    checks.push_back(j);
  }
  return checks;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Invalid("cannot write " + path);
  f << content;
}

const SupportMap& need_support(const ProjectFile& f) {
  if (!f.support) throw Invalid("the file has no support map");
  return *f.support;
}

void require_valid(const ProjectFile& f) {
  const Report r = validate_project(f);
  for (const auto& c : r.checks)
    if (!c.ok) throw Invalid("invalid input (" + c.name + "): " + (c.witnesses.empty() ? "" : c.witnesses.front()));
}

PointP1 pick_point(const std::string& text, const DivisorialFan& fan) {
  if (text.empty() || text == "generic") {
    std::vector<PointP1> avoid = fan.explicit_points();
    return fresh_point(avoid);
  }
  try {
    return parse_point(text);
  } catch (const std::exception& e) {
    throw ParseError("bad --point \"" + text + "\": " + e.what());
  }
}

std::string section_text(const SectionSpace& s) {
  std::string line = "weight " + to_string(s.weight) + ": dimension " + std::to_string(s.dimension());
  for (const auto& e : s.basis) line += "\n  " + to_string(e);
  return line;
}

Json section_json(const SectionSpace& s) {
  Json j;
  j["weight"] = vec_json(s.weight);
  j["dimension"] = s.dimension();
  Json b = Json::array();
  for (const auto& e : s.basis) b.push_back(kvec_json(e));
  j["basis"] = b;
  return j;
}

Json piece_json(const std::string& divisor, const Piece& p) {
  Json j;
  j["divisor"] = divisor;
  j["frame"] = kmat_json(p.frame);
  Json c = Json::array();
  for (const auto& u : p.characters) c.push_back(vec_json(u));
  j["characters"] = c;
  Json o = Json::array();
  for (const auto& x : p.offsets) o.push_back(to_string(x));
  j["offsets"] = o;
  return j;
}

// Each command fills `j` and `text`; returns the exit code.
int cmd_validate(const ProjectFile& f, Json& j, std::string& text) {
  const Report r = validate_project(f);
  j["ok"] = r.ok();
  j["checks"] = report_json(r);
  for (const auto& c : r.checks) {
    text += (c.ok ? "ok    " : "FAIL  ") + c.name + "\n";
    for (const auto& w : c.witnesses) text += "      " + w + "\n";
  }
  text += r.ok() ? "valid\n" : "invalid\n";
  return r.ok() ? kExitOk : kExitInvalid;
}

int cmd_sections(const ProjectFile& f, const Options& o, Json& j, std::string& text) {
  require_valid(f);
  const SupportMap& h = need_support(f);
  if (o.all == !o.weight.empty()) throw ParseError("sections needs exactly one of --weight or --all");
  std::vector<RatVec> weights;
  if (o.all) {
    weights = weight_box(h);
  } else {
    const RatVec u = parse_weight(o.weight);
    if (u.size() != h.fan.lattice_rank)
      throw ParseError("weight needs " + std::to_string(h.fan.lattice_rank) + " entries");
    weights.push_back(u);
  }
  Json list = Json::array();
  int total = 0;
  for (const auto& u : weights) {
    const SectionSpace s = global_sections(h, u);
    total += s.dimension();
    if (o.all && s.dimension() == 0) continue;
    list.push_back(section_json(s));
    text += section_text(s) + "\n";
  }
  j["ok"] = true;
  if (o.all) j["weights_examined"] = weights.size();
  j["weights"] = list;
  j["total"] = total;
  text += "total " + std::to_string(total) + "\n";
  return kExitOk;
}

int cmd_split(const ProjectFile& f, Json& j, std::string& text) {
  require_valid(f);
  const SplitResult r = split_check(need_support(f));
  j["ok"] = true;
  j["status"] = to_string(r.status);
  j["witness"] = r.witness ? kmat_json(*r.witness) : Json(nullptr);
  j["candidates"] = r.candidates;
  j["reason"] = r.reason;
  text += to_string(r.status) + "\n";
  if (r.witness) text += "witness frame " + matrix_text(*r.witness) + "\n";
  text += "candidates tried: " + std::to_string(r.candidates) + "\n";
  if (!r.reason.empty()) text += r.reason + "\n";
  return kExitOk;
}

void emit_project(const ProjectFile& g, const Options& o, Json& j, std::string& text, std::ostream& out) {
  const std::string body = serialize_project(g);
  if (o.out.empty()) {
    out << body;
    text.clear();
    j = Json();
    return;
  }
  write_file(o.out, body);
  j["out"] = o.out;
  text += "wrote " + o.out + "\n";
}

int cmd_downgrade(const ProjectFile& f, const Options& o, Json& j, std::string& text, std::ostream& out) {
  if (!f.klyachko) throw Invalid("the file has no toric input");
  const Downgrade dg = toric_downgrade(*f.klyachko);
  ProjectFile g;
  g.lattice_rank = dg.support.fan.lattice_rank;
  g.fan = dg.support.fan;
  g.support = dg.support;
  g.klyachko = f.klyachko;
  g.points = referenced_points(g);
  j["ok"] = true;
  Json names = Json::array();
  for (const auto& d : g.fan->divisors) names.push_back(d.name);
  j["divisors"] = names;
  text += "divisors:";
  for (const auto& d : g.fan->divisors) text += " " + d.name;
  text += "\n";
  emit_project(g, o, j, text, out);
  return kExitOk;
}

int cmd_cotangent(const ProjectFile& f, const Options& o, Json& j, std::string& text, std::ostream& out) {
  if (!f.fan) throw Invalid("the file has no divisorial fan");
  const Report r = validate_fan(*f.fan);
  if (!r.ok()) throw Invalid("invalid divisorial fan");
  j["ok"] = true;
  if (!o.point.empty()) {
    const PointP1 p = pick_point(o.point, *f.fan);
    j["point"] = to_string(p);
    Json pieces = Json::array();
    for (const auto& [name, piece] : cotangent_slice_map(*f.fan, p)) {
      pieces.push_back(piece_json(name, piece));
      text += name + ": frame " + matrix_text(piece.frame) + ", characters";
      for (const auto& c : piece.characters) text += " " + to_string(c);
      text += "\n";
    }
    j["pieces"] = pieces;
    if (o.out.empty()) return kExitOk;
  }
  ProjectFile g;
  g.lattice_rank = f.lattice_rank;
  g.fan = f.fan;
  g.support = cotangent_support_map(*f.fan);
  g.points = referenced_points(g);
  emit_project(g, o, j, text, out);
  return kExitOk;
}

int cmd_render(const ProjectFile& f, const Options& o, Json& j, std::string& text, std::ostream& out) {
  if (!f.fan) throw Invalid("the file has no divisorial fan");
  const PointP1 p = pick_point(o.point, *f.fan);
  const std::string svg = render_slice_svg(*f.fan, p);
  if (o.out.empty()) {
    out << svg;
    j = Json();
    text.clear();
    return kExitOk;
  }
  write_file(o.out, svg);
  j["ok"] = true;
  j["point"] = to_string(p);
  j["out"] = o.out;
  text += "wrote " + o.out + "\n";
  return kExitOk;
}

}  // namespace

Report validate_project(const ProjectFile& f) {
  Report r;
  if (f.fan) r.merge(validate_fan(*f.fan), "fan: ");
  if (f.support) {
    const Report s = validate_support(*f.support);
    r.merge(s, "support: ");
    if (s.ok()) {
      const SupportMap& h = *f.support;
      auto& check = r.check("support: transitions");
      const auto maximal = h.maximal_divisors();
      const auto weights = weight_box(h);
      const auto points = h.check_points();
      for (size_t a = 0; a < maximal.size() && check.ok; ++a)
        for (size_t b = a + 1; b < maximal.size() && check.ok; ++b)
          for (const auto& p : points) {
            const auto ca = maximal[a]->at(p), cb = maximal[b]->at(p);
            if (!ca || !cb || !intersect(*ca, *cb)) continue;  // disjoint slices carry no transition
            std::string why;
            for (const auto& u : weights)
              if (!check_transition(h, maximal[a]->name, maximal[b]->name, u, p, &why)) {
                r.fail("support: transitions", why);
                break;
              }
            if (!check.ok) break;
          }
    }
  }
  if (f.klyachko) r.merge(validate_klyachko(*f.klyachko), "toric: ");
  if (!f.fan && !f.klyachko) r.fail("content", "the file has neither a divisorial fan nor toric input");
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant vector bundles on complexity-one T-varieties"};
  app.name("tvb");
  app.require_subcommand(1, 1);
  Options o;
  const char* names[] = {"validate", "sections", "split", "downgrade", "cotangent", "render"};
  const char* help[] = {"check the divisorial fan, the support map and any toric input",
                        "global sections by weight",
                        "decide whether the bundle splits into line bundles",
                        "write the bundle as a T'-bundle over P^1",
                        "cotangent support map of X(S), or its pieces at --point",
                        "SVG drawing of the slice at --point"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("file", o.file, "project file")->required();
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    if (std::string(names[i]) == "sections") {
      sub->add_option("--weight", o.weight, "weight as \"a,b\"");
      sub->add_flag("--all", o.all, "every weight in the character box");
    }
    if (std::string(names[i]) == "downgrade" || std::string(names[i]) == "cotangent" ||
        std::string(names[i]) == "render")
      sub->add_option("--out", o.out, "output path (default: stdout)");
    if (std::string(names[i]) == "cotangent" || std::string(names[i]) == "render")
      sub->add_option("--point", o.point, "point of P^1: a rational, \"inf\" or \"generic\"");
  }

  std::vector<std::string> argv_store = {"tvb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }
  for (const auto* sub : app.get_subcommands()) o.command = sub->get_name();

  Json j;
  j["command"] = o.command;
  j["file"] = o.file;
  std::string text;
  int code = kExitOk;
  std::string kind, message;
  try {
    const ProjectFile f = load_project(o.file);
    if (o.command == "validate") code = cmd_validate(f, j, text);
    else if (o.command == "sections") code = cmd_sections(f, o, j, text);
    else if (o.command == "split") code = cmd_split(f, j, text);
    else if (o.command == "downgrade") code = cmd_downgrade(f, o, j, text, out);
    else if (o.command == "cotangent") code = cmd_cotangent(f, o, j, text, out);
    else code = cmd_render(f, o, j, text, out);
  } catch (const ParseError& e) {
    code = kExitParse;
    kind = "parse";
    message = e.what();
  } catch (const Invalid& e) {
    code = kExitInvalid;
    kind = "invalid";
    message = e.what();
  } catch (const std::exception& e) {
    code = kExitInvalid;
    kind = "computation";
    message = e.what();
  }
  if (!kind.empty()) {
    j["ok"] = false;
    j["error"] = {{"kind", kind}, {"message", message}};
    text = "error (" + kind + "): " + message + "\n";
  }
  if (j.is_null()) return code;  // the command wrote its product to stdout
  if (o.format == "json") {
    out << j.dump(2) << "\n";
  } else if (!kind.empty()) {
    err << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace tvb
