// Project files: JSON with exact rational strings, format tag "tvb/1".
#pragma once

#include "tvb/applications.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvb {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProjectFile {
  int lattice_rank = 0;
  std::vector<PointP1> points;
  std::optional<DivisorialFan> fan;
  /// When present, support->fan equals *fan.
  std::optional<SupportMap> support;
  std::optional<KlyachkoInput> klyachko;
};

/// Throws ParseError on malformed JSON, schema violations, undeclared points,
/// non-square or singular frames.
ProjectFile parse_project(const std::string& text);
ProjectFile load_project(const std::string& path);

/// Deterministic: fixed key order, two-space indent, trailing newline.
std::string serialize_project(const ProjectFile& file);

/// Field-by-field equality after normalization.
bool same_project(const ProjectFile& a, const ProjectFile& b);

/// Every point mentioned by the fan, the support map or the pieces, sorted.
std::vector<PointP1> referenced_points(const ProjectFile& file);

/// "a,b" -> (a, b).
RatVec parse_weight(const std::string& text);

}  // namespace tvb
