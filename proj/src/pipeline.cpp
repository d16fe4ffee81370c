#include "verinews/pipeline.hpp"

#include "verinews/errors.hpp"
#include "verinews/models.hpp"
#include "verinews/parallel.hpp"

namespace verinews {

namespace {

std::vector<Label> labels_of(std::span<const CleanDoc> docs) {
  std::vector<Label> y;
  y.reserve(docs.size());
  for (const auto& d : docs) {
    if (!d.label) throw CorpusError("document '" + d.id + "' is unlabeled");
    y.push_back(*d.label);
  }
  return y;
}

}  // namespace

ModelBundle train_bundle(std::span<const Document> docs, const TrainOptions& options, TrainSummary* summary) {
  options.train.validate();
  if (docs.empty()) throw TrainingError("training corpus is empty");
  const ClassCounts counts = dataset_stats(docs);

  const auto clean = preprocess_corpus(docs, options.pipeline, options.threads);
  const auto y = labels_of(clean);

  ModelBundle bundle;
  bundle.pipeline = options.pipeline;
  bundle.vocab = build_vocabulary(clean);
  bundle.features = options.features;
  bundle.metadata.training_docs = docs.size();
  bundle.metadata.created_unix = options.created_unix;
  if (options.features == FeatureKind::kTfidf) bundle.idf = fit_idf<double>(clean, bundle.vocab);

  std::vector<SparseVecd> X(clean.size());
  parallel_for(clean.size(), options.threads, [&](std::size_t i) { X[i] = featurize(bundle, clean[i]); });

  TrainConfig cfg = options.train;
  cfg.threads = options.threads;
  bool converged = true;
  switch (options.model) {
    case ModelKind::kNaiveBayes:
      bundle.model = nb_fit<double>(X, y, cfg.nb_alpha);
      break;
    case ModelKind::kLogistic: {
      auto model = lr_fit<double>(X, y, cfg);
      converged = model.converged;
      bundle.model = std::move(model);
      break;
    }
    case ModelKind::kSgd: {
      auto model = sgd_fit<double>(X, y, cfg);
      converged = model.converged;
      bundle.model = std::move(model);
      break;
    }
  }

  if (summary) {
    summary->class_counts = counts;
    summary->vocab_size = bundle.vocab.size();
    summary->converged = converged;
  }
  return bundle;
}

SparseVecd featurize(const ModelBundle& bundle, const CleanDoc& doc) {
  if (bundle.features == FeatureKind::kTfidf) {
    if (!bundle.idf) throw BundleValidationError("idf", "tf-idf bundle without idf weights");
    return tfidf_transform<double>(doc, bundle.vocab, *bundle.idf);
  }
  return count_transform<double>(doc, bundle.vocab);
}

Scoresd decision_scores(const ModelBundle& bundle, const SparseVecd& x) {
  if (const auto* nb = std::get_if<NbModeld>(&bundle.model)) return nb_log_posterior(*nb, x);
  return linear_decision(std::get<LinearModeld>(bundle.model), x);
}

std::vector<Prediction> predict_documents(const ModelBundle& bundle, std::span<const Document> docs,
                                          std::size_t threads) {
  std::vector<Prediction> out(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    const CleanDoc clean = preprocess_document(docs[i], bundle.pipeline);
    Prediction& p = out[i];
    p.id = docs[i].id;
    p.scores = decision_scores(bundle, featurize(bundle, clean));
    p.label = predict(p.scores);
  });
  return out;
}

EvalReport evaluate(const ModelBundle& bundle, std::span<const Document> docs, std::size_t threads) {
  std::vector<Label> truth;
  truth.reserve(docs.size());
  for (const auto& d : docs) {
    if (!d.label) throw CorpusError("document '" + d.id + "' is unlabeled");
    truth.push_back(*d.label);
  }
  const auto predictions = predict_documents(bundle, docs, threads);
  std::vector<Label> predicted;
  predicted.reserve(predictions.size());
  for (const auto& p : predictions) predicted.push_back(p.label);
  return classification_report(confusion_matrix(truth, predicted));
}

}  // namespace verinews
