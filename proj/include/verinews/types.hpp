#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "verinews/label.hpp"

namespace verinews {

using Index = Eigen::Index;

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Per-class decision scores, indexed by label code.
template <typename Scalar>
using Scores = Eigen::Matrix<Scalar, static_cast<int>(kNumLabels), 1>;

/// One row per class, one column per vocabulary term.
template <typename Scalar>
using ClassMatrix = Eigen::Matrix<Scalar, static_cast<int>(kNumLabels), Eigen::Dynamic>;

/// Document feature vector: entries kept in strictly increasing index order.
template <typename Scalar>
using SparseVec = Eigen::SparseVector<Scalar>;

/// Row-major document-term matrix used by the batch solvers.
template <typename Scalar>
using FeatureMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

using VecXd = VecX<double>;
using Scoresd = Scores<double>;
using ClassMatrixd = ClassMatrix<double>;
using SparseVecd = SparseVec<double>;
using FeatureMatrixd = FeatureMatrix<double>;

}  // namespace verinews
