#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace pants {

// Row-major 2x2 real matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static constexpr Mat2 identity() noexcept { return {}; }

  constexpr double trace() const noexcept { return a + d; }
  constexpr double det() const noexcept { return a * d - b * c; }
  double max_abs() const noexcept {
    return std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)});
  }
  bool finite() const noexcept {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
  }

  // Inverse of a determinant-1 matrix: swap the diagonal, negate the rest.
  constexpr Mat2 adjugate() const noexcept { return {d, -b, -c, a}; }

  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& m) noexcept {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

}  // namespace pants
