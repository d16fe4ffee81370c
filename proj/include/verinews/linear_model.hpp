#pragma once

#include <cstdint>
#include <string>

#include "verinews/errors.hpp"
#include "verinews/types.hpp"

namespace verinews {

enum class LinearKind : std::uint8_t { kLogistic = 0, kHinge = 1 };

/// One-vs-rest linear classifier: score[c] = weights.row(c) . x + bias[c].
template <typename Scalar = double>
struct LinearModel {
  ClassMatrix<Scalar> weights;
  Scores<Scalar> bias = Scores<Scalar>::Zero();
  LinearKind kind = LinearKind::kLogistic;
  // False when some subproblem hit its iteration cap before the tolerance.
  bool converged = true;

  Index dim() const noexcept { return weights.cols(); }
};

using LinearModeld = LinearModel<double>;

template <typename Scalar>
Scores<Scalar> linear_decision(const LinearModel<Scalar>& model, const SparseVec<Scalar>& x) {
  if (x.size() != model.dim())
    throw DimensionError("linear model: input dimension " + std::to_string(x.size()) +
                         " does not match weight dimension " + std::to_string(model.dim()));
  Scores<Scalar> scores = model.bias;
  for (typename SparseVec<Scalar>::InnerIterator it(x); it; ++it)
    scores += it.value() * model.weights.col(it.index());
  return scores;
}

}  // namespace verinews
