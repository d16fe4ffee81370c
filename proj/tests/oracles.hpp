#pragma once

// Reference computations used by the unit and acceptance tests. They share no
// code with the library beyond its public types.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "verinews/label.hpp"
#include "verinews/logistic.hpp"
#include "verinews/types.hpp"

namespace verinews::testkit {

using Rational = boost::multiprecision::cpp_rational;
using CountRow = std::vector<int>;  // dense term counts

// Bayes rule in probability space with exact rationals:
//   P(c) * prod_t theta_{c,t}^{x_t},  theta_{c,t} = (T_{c,t} + alpha) / (sum_t T_{c,t} + alpha V).
// Returns the lowest label code attaining the maximum among present classes.
inline Label nb_oracle_predict(std::span<const CountRow> train_x, std::span<const Label> train_y,
                               const CountRow& x, const Rational& alpha) {
  const std::size_t V = x.size();
  std::vector<std::vector<Rational>> totals(kNumLabels, std::vector<Rational>(V, Rational(0)));
  std::vector<long> docs(kNumLabels, 0);
  for (std::size_t i = 0; i < train_x.size(); ++i) {
    const std::size_t c = index_of(train_y[i]);
    ++docs[c];
    for (std::size_t t = 0; t < V; ++t) totals[c][t] += train_x[i][t];
  }
  std::optional<Rational> best;
  Label best_label = Label::kFalse;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    if (docs[c] == 0) continue;
    Rational row_total = alpha * static_cast<long>(V);
    for (const auto& v : totals[c]) row_total += v;
    Rational p(docs[c], static_cast<long>(train_x.size()));
    for (std::size_t t = 0; t < V; ++t) {
      const Rational theta = (totals[c][t] + alpha) / row_total;
      for (int k = 0; k < x[t]; ++k) p *= theta;
    }
    if (!best || p > *best) {
      best = p;
      best_label = kAllLabels[c];
    }
  }
  return best_label;
}

inline SparseVecd to_sparse(const CountRow& row) {
  SparseVecd v(static_cast<Index>(row.size()));
  for (std::size_t t = 0; t < row.size(); ++t)
    if (row[t] != 0) v.insertBack(static_cast<Index>(t)) = row[t];
  return v;
}

// Random dense binary logistic problem with labels in {-1, +1}.
struct LogisticProblem {
  FeatureMatrixd X;
  VecXd y;
};

inline LogisticProblem random_logistic_problem(std::mt19937_64& rng, Index n, Index dim, double density) {
  std::uniform_real_distribution<double> value(-1.0, 1.0), coin(0.0, 1.0);
  std::vector<Eigen::Triplet<double>> trips;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < dim; ++j)
      if (coin(rng) < density) trips.emplace_back(i, j, value(rng));
  LogisticProblem p;
  p.X.resize(n, dim);
  p.X.setFromTriplets(trips.begin(), trips.end());
  p.y.resize(n);
  for (Index i = 0; i < n; ++i) p.y(i) = coin(rng) < 0.5 ? -1.0 : 1.0;
  return p;
}

// ||g_analytic - g_fd|| / max(||g_analytic||, ||g_fd||), central differences.
inline double gradient_relative_error(const LogisticObjective<double>& obj, const VecXd& theta, double h) {
  const VecXd analytic = obj.evaluate(theta).gradient;
  VecXd numeric(theta.size());
  for (Index k = 0; k < theta.size(); ++k) {
    VecXd plus = theta, minus = theta;
    plus(k) += h;
    minus(k) -= h;
    numeric(k) = (obj.value(plus) - obj.value(minus)) / (2 * h);
  }
  const double scale = std::max({analytic.norm(), numeric.norm(), 1e-300});
  return (analytic - numeric).norm() / scale;
}

}  // namespace verinews::testkit
