#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "verinews/features.hpp"
#include "verinews/label.hpp"
#include "verinews/linear_model.hpp"
#include "verinews/logistic.hpp"
#include "verinews/parallel.hpp"
#include "verinews/shuffler.hpp"
#include "verinews/train_config.hpp"
#include "verinews/types.hpp"

namespace verinews {

/// Learning-rate offset for eta_t = 1 / (alpha * (t0 + t - 1)), t = 1, 2, ...
///
/// t0 = 1 / (alpha * eta0) where eta0 = alpha^(-1/4) is the typical weight
/// magnitude divided by the hinge derivative at minus that weight (which is 1).
/// For alpha = 1e-4 this gives eta0 = 10 and t0 = 1000.
template <typename Scalar>
Scalar sgd_optimal_t0(Scalar alpha) {
  const Scalar eta0 = std::sqrt(Scalar(1) / std::sqrt(alpha));
  return Scalar(1) / (alpha * eta0);
}

template <typename Scalar>
struct SgdBinaryFit {
  VecX<Scalar> weights;
  Scalar bias = 0;
  int epochs = 0;
  bool converged = false;
  std::vector<Scalar> epoch_loss;  // mean hinge loss seen during each epoch
};

/// Per-example SGD on hinge(y s) + alpha/2 |w|^2 with targets in {-1, +1}.
/// Examples are visited in an order reshuffled every epoch by `shuffler`.
/// Training stops once the mean epoch loss has failed to beat the best one by
/// at least tol for n_iter_no_change consecutive epochs.
template <typename Scalar>
SgdBinaryFit<Scalar> fit_hinge_sgd_binary(const FeatureMatrix<Scalar>& X, const VecX<Scalar>& y,
                                          const TrainConfig& cfg, Shuffler& shuffler) {
  const auto alpha = static_cast<Scalar>(cfg.sgd_alpha);
  const auto tol = static_cast<Scalar>(cfg.sgd_tol);
  const Scalar t0 = sgd_optimal_t0(alpha);
  const auto n = static_cast<std::size_t>(X.rows());

  // w = scale * v keeps the per-step shrinkage O(1).
  VecX<Scalar> v = VecX<Scalar>::Zero(X.cols());
  Scalar scale = 1;
  Scalar bias = 0;
  Scalar t = 1;

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});

  SgdBinaryFit<Scalar> fit;
  Scalar best_loss = std::numeric_limits<Scalar>::infinity();
  int no_improvement = 0;
  for (int epoch = 0; epoch < cfg.sgd_max_epochs; ++epoch) {
    shuffler.shuffle(std::span<Index>(order));
    Scalar loss_sum = 0;
    for (const Index i : order) {
      const Scalar target = y(i);
      Scalar dot = 0;
      for (typename FeatureMatrix<Scalar>::InnerIterator it(X, i); it; ++it) dot += it.value() * v(it.index());
      const Scalar margin = target * (scale * dot + bias);
      const Scalar eta = Scalar(1) / (alpha * (t0 + t - Scalar(1)));
      if (margin < Scalar(1)) loss_sum += Scalar(1) - margin;

      scale *= std::max(Scalar(0), Scalar(1) - eta * alpha);
      if (scale < Scalar(1e-9)) {
        v *= scale;
        scale = 1;
      }
      if (margin < Scalar(1)) {
        const Scalar step = eta * target;
        for (typename FeatureMatrix<Scalar>::InnerIterator it(X, i); it; ++it)
          v(it.index()) += (step / scale) * it.value();
        bias += step;
      }
      t += Scalar(1);
    }
    const Scalar mean_loss = loss_sum / static_cast<Scalar>(n);
    fit.epoch_loss.push_back(mean_loss);
    fit.epochs = epoch + 1;
    if (mean_loss > best_loss - tol)
      ++no_improvement;
    else
      no_improvement = 0;
    best_loss = std::min(best_loss, mean_loss);
    if (no_improvement >= cfg.sgd_n_iter_no_change) {
      fit.converged = true;
      break;
    }
  }
  fit.weights = scale * v;
  fit.bias = bias;
  return fit;
}

/// One-vs-rest hinge-loss linear classifier trained by seeded SGD. Class c
/// draws its shuffles from stream c of cfg.seed, so the result does not
/// depend on how the subproblems are scheduled.
template <typename Scalar>
LinearModel<Scalar> sgd_fit(std::span<const SparseVec<Scalar>> X, std::span<const Label> y,
                            const TrainConfig& cfg) {
  cfg.validate();
  detail::check_linear_training_set(X, y, "sgd");
  const Index dim = X.front().size();
  const FeatureMatrix<Scalar> design = stack_rows(X, dim);

  LinearModel<Scalar> model;
  model.kind = LinearKind::kHinge;
  model.weights.resize(kNumLabels, dim);
  std::vector<SgdBinaryFit<Scalar>> fits(kNumLabels);
  parallel_for(kNumLabels, cfg.threads, [&](std::size_t c) {
    Shuffler shuffler(cfg.seed, c);
    fits[c] = fit_hinge_sgd_binary(design, detail::one_vs_rest_targets<Scalar>(y, kAllLabels[c]), cfg,
                                   shuffler);
  });
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const auto row = static_cast<Index>(c);
    model.weights.row(row) = fits[c].weights.transpose();
    model.bias(row) = fits[c].bias;
    model.converged = model.converged && fits[c].converged;
  }
  return model;
}

}  // namespace verinews
