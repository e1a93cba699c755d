// Random norms, frames and vectors shared by the building tests and the
// acceptance runner.
#pragma once

#include "tvb/building.hpp"
#include "tvb/linalg.hpp"

#include <random>

namespace tvb::testing {

inline PointP1 random_place(std::mt19937& rng) {
  static const PointP1 places[] = {PointP1::at(0), PointP1::at(1), PointP1::at(-2), PointP1::infinity()};
  return places[std::uniform_int_distribution<int>(0, 3)(rng)];
}

/// A unit of O_P times pi^k, k in [kmin, kmax].
inline RationalFunction random_scalar(std::mt19937& rng, const PointP1& p, int kmin, int kmax) {
  std::uniform_int_distribution<int> small(-2, 2), kd(kmin, kmax);
  int a = small(rng);
  if (a == 0) a = 1;
  const RationalFunction pi = uniformizer(p);
  RationalFunction unit = RationalFunction(a) + RationalFunction(small(rng)) * pi;
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    // (t - 5)/(t + 7) is a unit at every place used here
    unit = unit * RationalFunction(Polynomial::linear(5), Polynomial::linear(-7));
  }
  return unit * uniformizer_power(p, kd(rng));
}

inline KMat random_frame(std::mt19937& rng, const PointP1& p, int r) {
  std::uniform_int_distribution<int> zero(0, 2);
  while (true) {
    KMat f(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) f(i, j) = zero(rng) == 0 ? RationalFunction(0) : random_scalar(rng, p, -2, 2);
    if (inverse(f)) return f;
  }
}

inline KVec random_vector(std::mt19937& rng, const PointP1& p, int r) {
  std::uniform_int_distribution<int> zero(0, 3);
  KVec v(r);
  for (int i = 0; i < r; ++i) v(i) = zero(rng) == 0 ? RationalFunction(0) : random_scalar(rng, p, -3, 3);
  return v;
}

inline AdaptedNorm random_norm(std::mt19937& rng, int r, const PointP1& p, const Rational& level, bool integral) {
  std::uniform_int_distribution<int> val(-3, 3), den(1, 3);
  std::vector<Rational> values;
  for (int i = 0; i < r; ++i) values.push_back(integral ? Rational(val(rng)) : Rational(val(rng), den(rng)));
  return AdaptedNorm(level, p, random_frame(rng, p, r), values);
}

/// Frame related to `frame` by a random matrix over O_P, possibly non-invertible over O_P.
inline KMat perturbed_frame(std::mt19937& rng, const KMat& frame, const PointP1& p) {
  const int r = static_cast<int>(frame.cols());
  while (true) {
    KMat u(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        u(i, j) = i == j ? random_scalar(rng, p, 0, 1)
                         : (std::uniform_int_distribution<int>(0, 1)(rng) ? random_scalar(rng, p, -1, 2)
                                                                           : RationalFunction(0));
    KMat out = multiply(frame, u);
    if (inverse(out)) return out;
  }
}

}  // namespace tvb::testing
