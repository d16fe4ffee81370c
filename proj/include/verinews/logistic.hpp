#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "verinews/errors.hpp"
#include "verinews/features.hpp"
#include "verinews/label.hpp"
#include "verinews/linear_model.hpp"
#include "verinews/parallel.hpp"
#include "verinews/train_config.hpp"
#include "verinews/types.hpp"

namespace verinews {

/// Binary L2-regularized logistic loss over parameters theta = [w; b]:
///
///   F(w, b) = 0.5 * |w|^2 + C * sum_i log(1 + exp(-y_i (w . x_i + b)))
///
/// with y_i in {-1, +1}. The bias is not regularized.
template <typename Scalar>
class LogisticObjective {
 public:
  struct Evaluation {
    Scalar value = 0;
    VecX<Scalar> gradient;   // size dim + 1, bias last
    VecX<Scalar> curvature;  // sigma(z_i) * sigma(-z_i), per example
  };

  LogisticObjective(const FeatureMatrix<Scalar>& X, VecX<Scalar> y, Scalar C)
      : X_(X), y_(std::move(y)), C_(C) {
    if (y_.size() != X_.rows()) throw DimensionError("logistic objective: label count mismatch");
  }

  Index dim() const noexcept { return X_.cols(); }
  Index num_params() const noexcept { return X_.cols() + 1; }

  Scalar value(const VecX<Scalar>& theta) const {
    const VecX<Scalar> z = margins(theta);
    Scalar loss = 0;
    for (Index i = 0; i < z.size(); ++i) loss += log1pexp_neg(z(i));
    return Scalar(0.5) * theta.head(dim()).squaredNorm() + C_ * loss;
  }

  Evaluation evaluate(const VecX<Scalar>& theta) const {
    const VecX<Scalar> z = margins(theta);
    Evaluation ev;
    VecX<Scalar> d(z.size());
    ev.curvature.resize(z.size());
    Scalar loss = 0;
    for (Index i = 0; i < z.size(); ++i) {
      loss += log1pexp_neg(z(i));
      const Scalar s_neg = sigmoid(-z(i));
      d(i) = -C_ * y_(i) * s_neg;
      ev.curvature(i) = s_neg * (Scalar(1) - s_neg);
    }
    ev.value = Scalar(0.5) * theta.head(dim()).squaredNorm() + C_ * loss;
    ev.gradient.resize(num_params());
    ev.gradient.head(dim()) = theta.head(dim()) + X_.transpose() * d;
    ev.gradient(dim()) = d.sum();
    return ev;
  }

  /// Hessian at the evaluation point applied to v.
  VecX<Scalar> hessian_times(const Evaluation& ev, const VecX<Scalar>& v) const {
    VecX<Scalar> Xv = X_ * v.head(dim());
    Xv.array() += v(dim());
    const VecX<Scalar> dXv = (C_ * ev.curvature.array() * Xv.array()).matrix();
    VecX<Scalar> out(num_params());
    out.head(dim()) = v.head(dim()) + X_.transpose() * dXv;
    out(dim()) = dXv.sum();
    return out;
  }

 private:
  VecX<Scalar> margins(const VecX<Scalar>& theta) const {
    VecX<Scalar> z = X_ * theta.head(dim());
    z.array() += theta(dim());
    return (z.array() * y_.array()).matrix();
  }

  static Scalar log1pexp_neg(Scalar z) {
    return z >= 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
  }
  static Scalar sigmoid(Scalar z) {
    if (z >= 0) return Scalar(1) / (Scalar(1) + std::exp(-z));
    const Scalar e = std::exp(z);
    return e / (Scalar(1) + e);
  }

  const FeatureMatrix<Scalar>& X_;
  VecX<Scalar> y_;
  Scalar C_;
};

template <typename Scalar>
struct BinaryFit {
  VecX<Scalar> theta;  // [w; b]
  bool converged = false;
  int iterations = 0;
  Scalar gradient_max_norm = 0;
  std::vector<Scalar> objective_trace;  // value before the first and after every step
};

/// Truncated Newton: conjugate-gradient inner solve, Armijo backtracking on
/// the outer step. Stops once max|grad| <= tol or after max_iter steps.
template <typename Scalar>
BinaryFit<Scalar> fit_logistic_binary(const LogisticObjective<Scalar>& objective, Scalar tol,
                                      int max_iter) {
  constexpr int kMaxCgIter = 250;
  constexpr int kMaxHalvings = 50;
  constexpr Scalar kArmijo = Scalar(1e-4);

  BinaryFit<Scalar> fit;
  fit.theta = VecX<Scalar>::Zero(objective.num_params());
  auto ev = objective.evaluate(fit.theta);
  fit.objective_trace.push_back(ev.value);

  for (;;) {
    fit.gradient_max_norm = ev.gradient.cwiseAbs().maxCoeff();
    if (fit.gradient_max_norm <= tol) {
      fit.converged = true;
      break;
    }
    if (fit.iterations >= max_iter) break;

    const Scalar gnorm = ev.gradient.norm();
    const Scalar cg_tol = std::min(Scalar(0.5), std::sqrt(gnorm)) * gnorm;
    VecX<Scalar> step = VecX<Scalar>::Zero(objective.num_params());
    VecX<Scalar> r = -ev.gradient;
    VecX<Scalar> p = r;
    Scalar rr = r.squaredNorm();
    for (int k = 0; k < kMaxCgIter && std::sqrt(rr) > cg_tol; ++k) {
      const VecX<Scalar> Hp = objective.hessian_times(ev, p);
      const Scalar pHp = p.dot(Hp);
      if (!(pHp > 0)) break;
      const Scalar a = rr / pHp;
      step += a * p;
      r -= a * Hp;
      const Scalar rr_next = r.squaredNorm();
      p = r + (rr_next / rr) * p;
      rr = rr_next;
    }
    Scalar slope = ev.gradient.dot(step);
    if (!(slope < 0)) {
      step = -ev.gradient;
      slope = -ev.gradient.squaredNorm();
    }

    Scalar t = 1;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h, t *= Scalar(0.5)) {
      const VecX<Scalar> candidate = fit.theta + t * step;
      auto cand = objective.evaluate(candidate);
      if (cand.value <= ev.value + kArmijo * t * slope) {
        fit.theta = candidate;
        ev = std::move(cand);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no representable decrease left
    ++fit.iterations;
    fit.objective_trace.push_back(ev.value);
  }
  return fit;
}

namespace detail {

template <typename Scalar>
VecX<Scalar> one_vs_rest_targets(std::span<const Label> y, Label positive) {
  VecX<Scalar> t(static_cast<Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i)
    t(static_cast<Index>(i)) = y[i] == positive ? Scalar(1) : Scalar(-1);
  return t;
}

template <typename Scalar>
void check_linear_training_set(std::span<const SparseVec<Scalar>> X, std::span<const Label> y,
                               const char* who) {
  if (X.empty()) throw TrainingError(std::string(who) + ": empty training set");
  if (X.size() != y.size())
    throw TrainingError(std::string(who) + ": " + std::to_string(X.size()) + " feature rows but " +
                        std::to_string(y.size()) + " labels");
  const std::set<Label> distinct(y.begin(), y.end());
  if (distinct.size() < 2)
    throw TrainingError(std::string(who) + ": training labels contain a single class");
}

}  // namespace detail

/// One-vs-rest logistic regression; one binary problem per label code.
template <typename Scalar>
LinearModel<Scalar> lr_fit(std::span<const SparseVec<Scalar>> X, std::span<const Label> y,
                           const TrainConfig& cfg) {
  cfg.validate();
  detail::check_linear_training_set(X, y, "logistic regression");
  const Index dim = X.front().size();
  const FeatureMatrix<Scalar> design = stack_rows(X, dim);

  LinearModel<Scalar> model;
  model.kind = LinearKind::kLogistic;
  model.weights.resize(kNumLabels, dim);
  std::vector<BinaryFit<Scalar>> fits(kNumLabels);
  parallel_for(kNumLabels, cfg.threads, [&](std::size_t c) {
    const LogisticObjective<Scalar> objective(
        design, detail::one_vs_rest_targets<Scalar>(y, kAllLabels[c]), static_cast<Scalar>(cfg.lr_C));
    fits[c] = fit_logistic_binary(objective, static_cast<Scalar>(cfg.lr_tol), cfg.lr_max_iter);
  });
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const auto row = static_cast<Index>(c);
    model.weights.row(row) = fits[c].theta.head(dim).transpose();
    model.bias(row) = fits[c].theta(dim);
    model.converged = model.converged && fits[c].converged;
  }
  return model;
}

}  // namespace verinews
