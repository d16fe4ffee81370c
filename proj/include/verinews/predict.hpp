#pragma once

#include <algorithm>
#include <cmath>

#include "verinews/errors.hpp"
#include "verinews/label.hpp"
#include "verinews/types.hpp"

namespace verinews {

/// Scores closer than this, relative to max(1, |best|), count as tied.
/// Log-space sums of mathematically equal products differ by a few ulps.
inline constexpr double kScoreTieTolerance = 1e-12;

/// Argmax over the four scores; ties go to the lowest label code. NaN and
/// -inf never win. Throws Error when no score is finite.
template <typename Derived>
Label predict(const Eigen::MatrixBase<Derived>& scores) {
  static_assert(Derived::SizeAtCompileTime == static_cast<int>(kNumLabels));
  using Scalar = typename Derived::Scalar;
  int best = -1;
  for (int c = 0; c < static_cast<int>(kNumLabels); ++c) {
    if (!std::isfinite(scores(c))) continue;
    if (best < 0 || scores(c) > scores(best)) best = c;
  }
  if (best < 0) throw Error("no finite decision score to predict from");
  const Scalar top = scores(best);
  const Scalar tol = static_cast<Scalar>(kScoreTieTolerance) * std::max(Scalar(1), std::abs(top));
  for (int c = 0; c < best; ++c)
    if (std::isfinite(scores(c)) && scores(c) >= top - tol) return static_cast<Label>(c);
  return static_cast<Label>(best);
}

}  // namespace verinews
