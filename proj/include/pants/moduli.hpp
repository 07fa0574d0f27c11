#pragma once

// From boundary lengths (A, B, C) of a hyperbolic pair of pants to a pair of
// generator matrices.
//
// The group is normalized so that a is the reflection in the imaginary axis
// followed by the reflection in the line with endpoints alpha and 1, and b is
// the reflection in the line with endpoints beta and gamma followed by the
// reflection in the imaginary axis, with 0 < alpha < 1 < beta < gamma.
// In this normalization trace(a*b) is negative; lengths only ever use |trace|.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "pants/errors.hpp"
#include "pants/matrix.hpp"

namespace pants {

struct BoundaryLengths {
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;

  friend bool operator==(const BoundaryLengths&, const BoundaryLengths&) = default;
};

// x = cosh(A/2), y = cosh(B/2), z = cosh(C/2).
struct HalfTraces {
  double x, y, z;
};

// Endpoints of the reflection lines.
struct FenchelParams {
  double alpha, beta, gamma;

  bool ordered() const noexcept { return 0.0 < alpha && alpha < 1.0 && 1.0 < beta && beta < gamma; }
};

struct GeneratorRep {
  Mat2 mat_a, mat_b, mat_a_inv, mat_b_inv;
  // What the matrices were built from; geometry rebuilds them in extended
  // precision from these for badly conditioned words.
  std::optional<FenchelParams> params;
  std::optional<HalfTraces> traces;
};

namespace detail {

// The closed forms, generic over the scalar so geometry can evaluate them in
// extended precision.
template <class T>
std::array<T, 3> fenchel_from_half_traces(const T& x, const T& y, const T& z) {
  using std::sqrt;
  const T root = sqrt(x * x + y * y + z * z + 2 * x * y * z - 1);
  const T numerator = (x * y + z) + root;
  return {(x - 1) / (x + 1), numerator / ((x + 1) * (y + 1)), numerator / ((x + 1) * (y - 1))};
}

// Entries of a and b, row-major: a11 a12 a21 a22 b11 b12 b21 b22.
template <class T>
std::array<T, 8> generator_entries(const T& al, const T& be, const T& ga) {
  const T sa = 1 / (1 - al);
  const T sb = 1 / (ga - be);
  return {sa * (1 + al), sa * (2 * al), sa * 2,  sa * (1 + al),
          sb * (be + ga), sb * (-2 * be * ga), sb * (-2), sb * (be + ga)};
}

}  // namespace detail

inline HalfTraces half_traces(const BoundaryLengths& bl) {
  // Negated comparisons so NaN is rejected too.
  if (!(bl.A > 0.0) || !(bl.B > 0.0) || !(bl.C > 0.0))
    throw NonPositiveLength("boundary lengths must be positive, got (" + std::to_string(bl.A) +
                            ", " + std::to_string(bl.B) + ", " + std::to_string(bl.C) + ")");
  if (!std::isfinite(bl.A) || !std::isfinite(bl.B) || !std::isfinite(bl.C))
    throw DegenerateMetric("boundary lengths must be finite");
  return {std::cosh(bl.A / 2), std::cosh(bl.B / 2), std::cosh(bl.C / 2)};
}

inline FenchelParams fenchel_params(const HalfTraces& ht) {
  const double x = ht.x, y = ht.y, z = ht.z;
  if (!(x > 1.0) || !(y > 1.0) || !(z > 1.0))
    throw DegenerateMetric("half-traces must exceed 1");
  const auto [alpha, beta, gamma] = detail::fenchel_from_half_traces(x, y, z);
  const FenchelParams fp{alpha, beta, gamma};
  if (!fp.ordered())
    throw DegenerateMetric("reflection endpoints violate 0 < alpha < 1 < beta < gamma");
  return fp;
}

inline GeneratorRep generator_matrices(const FenchelParams& fp) {
  const double al = fp.alpha, be = fp.beta, ga = fp.gamma;
  if (al == 1.0 || ga == be) throw DegenerateParams("alpha = 1 or beta = gamma");
  if (!fp.ordered())
    throw DegenerateParams("reflection endpoints violate 0 < alpha < 1 < beta < gamma");
  const auto e = detail::generator_entries(al, be, ga);
  GeneratorRep rep;
  rep.mat_a = {e[0], e[1], e[2], e[3]};
  rep.mat_b = {e[4], e[5], e[6], e[7]};
  rep.mat_a_inv = rep.mat_a.adjugate();
  rep.mat_b_inv = rep.mat_b.adjugate();
  rep.params = fp;
  return rep;
}

inline GeneratorRep generator_matrices(const BoundaryLengths& bl) {
  const HalfTraces ht = half_traces(bl);
  GeneratorRep rep = generator_matrices(fenchel_params(ht));
  rep.traces = ht;
  return rep;
}

}  // namespace pants
