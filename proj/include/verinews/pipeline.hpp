#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "verinews/corpus.hpp"
#include "verinews/metrics.hpp"
#include "verinews/persistence.hpp"
#include "verinews/train_config.hpp"
#include "verinews/types.hpp"

namespace verinews {

struct TrainOptions {
  ModelKind model = ModelKind::kNaiveBayes;
  FeatureKind features = FeatureKind::kCount;
  TrainConfig train;
  PipelineConfig pipeline;
  std::int64_t created_unix = 0;
  std::size_t threads = 1;
};

struct TrainSummary {
  ClassCounts class_counts;
  Index vocab_size = 0;
  bool converged = true;
};

/// Cleans, fits the vocabulary (and idf) on `docs`, then fits the model.
ModelBundle train_bundle(std::span<const Document> docs, const TrainOptions& options,
                         TrainSummary* summary = nullptr);

/// Feature vector in the bundle's frozen feature space.
SparseVecd featurize(const ModelBundle& bundle, const CleanDoc& doc);

Scoresd decision_scores(const ModelBundle& bundle, const SparseVecd& x);

struct Prediction {
  std::string id;
  Label label = Label::kFalse;
  Scoresd scores = Scoresd::Zero();
};

std::vector<Prediction> predict_documents(const ModelBundle& bundle,
                                          std::span<const Document> docs,
                                          std::size_t threads = 1);

/// Throws CorpusError when a document is unlabeled.
EvalReport evaluate(const ModelBundle& bundle, std::span<const Document> docs,
                    std::size_t threads = 1);

}  // namespace verinews
