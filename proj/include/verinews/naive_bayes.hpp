#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "verinews/errors.hpp"
#include "verinews/label.hpp"
#include "verinews/types.hpp"

namespace verinews {

/// Multinomial Naive Bayes over term counts.
///
/// A class with no training documents keeps a log prior of -inf and is never
/// predicted; its term distribution is the uniform smoothed one.
template <typename Scalar = double>
struct NbModel {
  Scores<Scalar> class_log_prior = Scores<Scalar>::Zero();
  ClassMatrix<Scalar> feature_log_prob;  // log P(term | class)
  Scalar alpha = Scalar(1);

  Index vocab_size() const noexcept { return feature_log_prob.cols(); }
};

using NbModeld = NbModel<double>;

template <typename Scalar>
NbModel<Scalar> nb_fit(std::span<const SparseVec<Scalar>> X, std::span<const Label> y,
                       Scalar alpha = Scalar(1)) {
  if (X.empty()) throw TrainingError("naive bayes: empty training set");
  if (X.size() != y.size())
    throw TrainingError("naive bayes: " + std::to_string(X.size()) + " feature rows but " +
                        std::to_string(y.size()) + " labels");
  if (!(alpha > Scalar(0)) || !std::isfinite(alpha))
    throw TrainingError("naive bayes: smoothing alpha must be positive");

  const Index vocab = X.front().size();
  ClassMatrix<Scalar> term_totals = ClassMatrix<Scalar>::Zero(kNumLabels, vocab);
  Scores<Scalar> doc_counts = Scores<Scalar>::Zero();
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].size() != vocab) throw DimensionError("naive bayes: feature rows differ in dimension");
    const auto c = static_cast<Index>(index_of(y[i]));
    doc_counts(c) += Scalar(1);
    for (typename SparseVec<Scalar>::InnerIterator it(X[i]); it; ++it) {
      if (it.value() < Scalar(0)) throw TrainingError("naive bayes: negative term count");
      term_totals(c, it.index()) += it.value();
    }
  }

  NbModel<Scalar> model;
  model.alpha = alpha;
  model.class_log_prior =
      (doc_counts / static_cast<Scalar>(X.size())).array().log().matrix();
  model.feature_log_prob.resize(kNumLabels, vocab);
  if (vocab > 0) {
    const auto smoothed = (term_totals.array() + alpha).eval();
    const auto row_totals = (smoothed.rowwise().sum()).eval();
    model.feature_log_prob =
        (smoothed.log().colwise() - row_totals.log()).matrix();
  }
  return model;
}

/// Unnormalized log posterior: log prior plus count-weighted log likelihoods.
template <typename Scalar>
Scores<Scalar> nb_log_posterior(const NbModel<Scalar>& model, const SparseVec<Scalar>& x) {
  if (x.size() != model.vocab_size())
    throw DimensionError("naive bayes: input dimension " + std::to_string(x.size()) +
                         " does not match vocabulary size " + std::to_string(model.vocab_size()));
  Scores<Scalar> scores = model.class_log_prior;
  for (typename SparseVec<Scalar>::InnerIterator it(x); it; ++it)
    scores += it.value() * model.feature_log_prob.col(it.index());
  return scores;
}

}  // namespace verinews
