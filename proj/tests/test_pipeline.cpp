#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>

#include "test_support.hpp"
#include "verinews/errors.hpp"
#include "verinews/pipeline.hpp"

using namespace verinews;

namespace {

TrainOptions options(ModelKind model) {
  TrainOptions opt;
  opt.model = model;
  opt.features = model == ModelKind::kNaiveBayes ? FeatureKind::kCount : FeatureKind::kTfidf;
  return opt;
}

}  // namespace

TEST(TrainBundle, SummaryAndShape) {
  const auto docs = testkit::synthetic_corpus(1, 120);
  TrainSummary summary;
  const auto b = train_bundle(docs, options(ModelKind::kLogistic), &summary);
  EXPECT_EQ(summary.class_counts.total, 120u);
  EXPECT_EQ(summary.vocab_size, b.vocab.size());
  EXPECT_TRUE(b.idf.has_value());
  EXPECT_EQ(b.idf->n_docs, 120u);
  EXPECT_EQ(b.metadata.training_docs, 120u);
  EXPECT_EQ(b.model_kind(), ModelKind::kLogistic);
}

TEST(TrainBundle, BeatsMajorityBaselineOnTrainingSet) {
  const auto docs = testkit::synthetic_corpus(2, 200);
  const auto counts = dataset_stats(docs);
  const double majority =
      static_cast<double>(*std::max_element(counts.counts.begin(), counts.counts.end())) / 200.0;
  for (ModelKind m : {ModelKind::kNaiveBayes, ModelKind::kLogistic, ModelKind::kSgd}) {
    const auto report = evaluate(train_bundle(docs, options(m)), docs);
    EXPECT_GE(report.accuracy, majority) << to_string(m);
    EXPECT_EQ(report.confusion.total(), 200);
  }
}

TEST(TrainBundle, ThreadCountDoesNotChangeTheBundle) {
  const auto docs = testkit::synthetic_corpus(3, 150);
  for (ModelKind m : {ModelKind::kNaiveBayes, ModelKind::kLogistic, ModelKind::kSgd}) {
    auto opt = options(m);
    const auto serial = encode_bundle(train_bundle(docs, opt));
    opt.threads = 6;
    opt.train.threads = 6;
    EXPECT_EQ(encode_bundle(train_bundle(docs, opt)), serial) << to_string(m);
  }
}

TEST(TrainBundle, RejectsUnlabeled) {
  auto docs = testkit::synthetic_corpus(4, 10);
  docs[3].label.reset();
  EXPECT_THROW(train_bundle(docs, options(ModelKind::kNaiveBayes)), Error);
}

TEST(Predict, EmptyDocumentGetsMajorityClassUnderNaiveBayes) {
  const auto docs = testkit::synthetic_corpus(5, 100);
  const auto b = train_bundle(docs, options(ModelKind::kNaiveBayes));
  const std::vector<Document> empty = {{"e", "", "", std::nullopt}, {"f", "zzzz qqqq", "", std::nullopt}};
  const auto preds = predict_documents(b, empty);
  ASSERT_EQ(preds.size(), 2u);
  EXPECT_EQ(preds[0].label, Label::kFalse);
  EXPECT_EQ(preds[1].label, Label::kFalse);
}

TEST(Predict, OrderPreservedAndRepeatable) {
  const auto docs = testkit::synthetic_corpus(6, 90);
  const auto b = train_bundle(docs, options(ModelKind::kSgd));
  const auto a = predict_documents(b, docs, 1);
  const auto c = predict_documents(b, docs, 5);
  ASSERT_EQ(a.size(), docs.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, docs[i].id);
    EXPECT_EQ(std::memcmp(a[i].scores.data(), c[i].scores.data(), sizeof(double) * 4), 0);
  }
}

TEST(Predict, FrozenVocabularyDropsUnseenTerms) {
  const auto docs = testkit::synthetic_corpus(7, 60);
  const auto b = train_bundle(docs, options(ModelKind::kLogistic));
  const auto before = encode_bundle(b);
  const std::vector<Document> novel = {{"n", "brandnewword hoax", "anotherunseen", std::nullopt}};
  const auto x = featurize(b, preprocess_document(novel[0], b.pipeline));
  EXPECT_EQ(x.size(), b.vocab.size());
  EXPECT_EQ(x.nonZeros(), 1);
  predict_documents(b, novel);
  EXPECT_EQ(encode_bundle(b), before);
}

TEST(Evaluate, RequiresLabels) {
  const auto docs = testkit::synthetic_corpus(8, 40);
  const auto b = train_bundle(docs, options(ModelKind::kNaiveBayes));
  const std::vector<Document> unlabeled = {{"u", "hoax", "", std::nullopt}};
  EXPECT_THROW(evaluate(b, unlabeled), CorpusError);
}
