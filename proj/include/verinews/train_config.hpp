#pragma once

#include <cstddef>
#include <cstdint>

namespace verinews {

struct TrainConfig {
  // Naive Bayes additive smoothing.
  double nb_alpha = 1.0;

  // Logistic regression: inverse regularization strength, gradient max-norm
  // tolerance and Newton iteration cap.
  double lr_C = 100.0;
  double lr_tol = 1e-4;
  int lr_max_iter = 100;

  // SGD hinge classifier.
  double sgd_alpha = 1e-4;
  int sgd_max_epochs = 1000;
  double sgd_tol = 1e-3;
  int sgd_n_iter_no_change = 5;

  std::uint64_t seed = 42;

  // Workers for the one-vs-rest subproblems.
  std::size_t threads = 1;

  /// Throws TrainingError naming the first non-positive field.
  void validate() const;
};

}  // namespace verinews
