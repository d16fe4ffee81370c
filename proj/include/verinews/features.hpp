#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "verinews/errors.hpp"
#include "verinews/textprep.hpp"
#include "verinews/types.hpp"

namespace verinews {

/// Term to column map. Columns follow byte-wise lexicographic term order.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Throws ConfigError unless `terms` is strictly increasing.
  static Vocabulary from_sorted_terms(std::vector<std::string> terms);

  std::optional<Index> index_of(std::string_view term) const;
  Index size() const noexcept { return static_cast<Index>(terms_.size()); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }

  bool operator==(const Vocabulary&) const = default;

 private:
  explicit Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {}
  std::vector<std::string> terms_;
};

/// Every distinct token of the corpus; independent of document order.
Vocabulary build_vocabulary(std::span<const CleanDoc> corpus);

/// Smoothed inverse document frequencies, idf(t) = ln((1 + N) / (1 + df(t))) + 1.
template <typename Scalar = double>
struct IdfWeights {
  VecX<Scalar> idf;
  std::size_t n_docs = 0;
};

namespace detail {

// (column, occurrences) for the in-vocabulary tokens of a document, sorted.
std::vector<std::pair<Index, std::size_t>> term_counts(const CleanDoc& doc,
                                                       const Vocabulary& vocab);

}  // namespace detail

/// Raw term counts. Out-of-vocabulary tokens are dropped.
template <typename Scalar = double>
SparseVec<Scalar> count_transform(const CleanDoc& doc, const Vocabulary& vocab) {
  SparseVec<Scalar> out(vocab.size());
  const auto counts = detail::term_counts(doc, vocab);
  out.reserve(static_cast<Index>(counts.size()));
  for (const auto& [col, n] : counts) out.insertBack(col) = static_cast<Scalar>(n);
  return out;
}

template <typename Scalar = double>
IdfWeights<Scalar> fit_idf(std::span<const CleanDoc> corpus, const Vocabulary& vocab) {
  std::vector<std::size_t> df(static_cast<std::size_t>(vocab.size()), 0);
  for (const auto& doc : corpus)
    for (const auto& [col, n] : detail::term_counts(doc, vocab)) ++df[static_cast<std::size_t>(col)];

  IdfWeights<Scalar> w;
  w.n_docs = corpus.size();
  w.idf.resize(vocab.size());
  const Scalar numer = Scalar(1) + static_cast<Scalar>(corpus.size());
  for (Index t = 0; t < vocab.size(); ++t) {
    const Scalar denom = Scalar(1) + static_cast<Scalar>(df[static_cast<std::size_t>(t)]);
    w.idf[t] = std::log(numer / denom) + Scalar(1);
  }
  return w;
}

/// Counts scaled by idf, then L2-normalized. An empty vector stays empty.
template <typename Scalar = double>
SparseVec<Scalar> tfidf_transform(const CleanDoc& doc, const Vocabulary& vocab,
                                  const IdfWeights<Scalar>& idf) {
  if (idf.idf.size() != vocab.size())
    throw DimensionError("idf length " + std::to_string(idf.idf.size()) +
                         " does not match vocabulary size " + std::to_string(vocab.size()));
  SparseVec<Scalar> out = count_transform<Scalar>(doc, vocab);
  for (typename SparseVec<Scalar>::InnerIterator it(out); it; ++it) it.valueRef() *= idf.idf[it.index()];
  const Scalar norm = out.norm();
  if (norm > Scalar(0)) out /= norm;
  return out;
}

/// Stacks document vectors as rows. All must have dimension `dim`.
template <typename Scalar>
FeatureMatrix<Scalar> stack_rows(std::span<const SparseVec<Scalar>> rows, Index dim) {
  FeatureMatrix<Scalar> m(static_cast<Index>(rows.size()), dim);
  std::vector<Eigen::Triplet<Scalar>> triplets;
  std::size_t nnz = 0;
  for (const auto& r : rows) nnz += static_cast<std::size_t>(r.nonZeros());
  triplets.reserve(nnz);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim)
      throw DimensionError("feature row " + std::to_string(i) + " has dimension " +
                           std::to_string(rows[i].size()) + ", expected " + std::to_string(dim));
    for (typename SparseVec<Scalar>::InnerIterator it(rows[i]); it; ++it)
      triplets.emplace_back(static_cast<Index>(i), it.index(), it.value());
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace verinews
