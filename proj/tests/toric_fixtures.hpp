// Smooth complete toric surfaces and bundles on them.
#pragma once

#include "tvb/applications.hpp"
#include "tvb/linalg.hpp"

#include <algorithm>

namespace tvb::testing {

inline RatVec v2(int a, int b) { return make_vec({a, b}); }

/// Complete fan whose maximal cones are spanned by consecutive rays (counterclockwise).
inline Fan surface_fan(const std::vector<RatVec>& rays) {
  std::vector<Cone> cones;
  for (size_t i = 0; i < rays.size(); ++i) cones.push_back(Cone::from_generators(2, {rays[i], rays[(i + 1) % rays.size()]}));
  return Fan::from_maximal(2, cones);
}

inline Fan p1xp1() { return surface_fan({v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)}); }
inline Fan p2() { return surface_fan({v2(1, 0), v2(0, 1), v2(-1, -1)}); }
/// Hirzebruch surface F_k.
inline Fan hirzebruch(int k) { return surface_fan({v2(1, 0), v2(0, 1), v2(-1, k), v2(0, -1)}); }
/// P^1 x P^1 blown up in a fixed point.
inline Fan blown_up_quadric() { return surface_fan({v2(1, 0), v2(1, 1), v2(0, 1), v2(-1, 0), v2(0, -1)}); }

/// O(a, b) on P^1 x P^1: character (a or 0, b or 0) by the signs of the quadrant.
inline KlyachkoInput o_ab(int a, int b) {
  const Fan fan = p1xp1();
  std::vector<RatVec> chars;
  for (const auto& c : fan.maximal_cones()) {
    const RatVec x = c.relative_interior_point();
    chars.push_back(v2(x(0) > 0 ? a : 0, x(1) > 0 ? b : 0));
  }
  return klyachko_line_bundle(fan, chars, v2(0, 1));
}

/// Line bundle of the divisor sum_rho a_rho D_rho: on a smooth cone with rays v_i
/// the character m satisfies <m, v_i> = -a_i.
inline KlyachkoInput divisor_bundle(const Fan& fan, const std::vector<RatVec>& rays, const std::vector<int>& a,
                                    const RatVec& projection) {
  std::vector<RatVec> chars;
  for (const auto& c : fan.maximal_cones()) {
    RatMat m(2, 2);
    RatVec rhs(2);
    for (int row = 0; row < 2; ++row) {
      const RatVec& g = c.rays()[static_cast<size_t>(row)];
      const size_t i = static_cast<size_t>(std::find(rays.begin(), rays.end(), g) - rays.begin());
      m.row(row) = g.transpose();
      rhs(row) = -a.at(i);
    }
    chars.push_back(*solve(m, rhs));
  }
  return klyachko_line_bundle(fan, chars, projection);
}

/// Tangent bundle: frame v_i, characters m_i (dual of the cotangent data).
inline KlyachkoInput tangent(const Fan& fan, const RatVec& projection) {
  KlyachkoInput k = klyachko_cotangent(fan, projection);
  for (auto& c : k.cones) {
    const RatMat dual = c.frame.transpose();
    c.frame = *inverse(dual);
    for (int i = 0; i < 2; ++i) c.characters[static_cast<size_t>(i)] = dual.row(i).transpose();
  }
  return k;
}

}  // namespace tvb::testing
