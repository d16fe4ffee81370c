#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "test_support.hpp"
#include "verinews/errors.hpp"
#include "verinews/pipeline.hpp"

using namespace verinews;

namespace {

ModelBundle trained(ModelKind model, std::uint64_t seed = 1, std::size_t docs = 80) {
  TrainOptions opt;
  opt.model = model;
  opt.features = model == ModelKind::kNaiveBayes ? FeatureKind::kCount : FeatureKind::kTfidf;
  opt.created_unix = 1700000000;
  return train_bundle(testkit::synthetic_corpus(seed, docs), opt);
}

void set_u32(std::string& bytes, std::size_t at, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) bytes[at + static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFF);
}

bool bit_equal(const Scoresd& a, const Scoresd& b) { return std::memcmp(a.data(), b.data(), sizeof(double) * 4) == 0; }

class BundleKinds : public ::testing::TestWithParam<ModelKind> {};

}  // namespace

TEST_P(BundleKinds, EncodingIsDeterministic) {
  const auto b = trained(GetParam());
  EXPECT_EQ(encode_bundle(b), encode_bundle(b));
  EXPECT_EQ(encode_bundle(trained(GetParam())), encode_bundle(b));
}

TEST_P(BundleKinds, SaveLoadSaveIsIdentical) {
  const auto b = trained(GetParam());
  std::stringstream stream;
  save_bundle(b, stream);
  const std::string first = stream.str();
  const auto loaded = load_bundle(stream);
  EXPECT_EQ(encode_bundle(loaded), first);
  EXPECT_EQ(loaded.model_kind(), GetParam());
  EXPECT_EQ(loaded.metadata.created_unix, 1700000000);
  EXPECT_EQ(loaded.metadata.training_docs, 80u);
  EXPECT_EQ(loaded.pipeline, b.pipeline);
  EXPECT_EQ(loaded.vocab, b.vocab);
}

TEST_P(BundleKinds, ScoresSurviveRoundTripBitForBit) {
  const auto b = trained(GetParam());
  const auto loaded = decode_bundle(encode_bundle(b));
  const auto docs = testkit::synthetic_corpus(99, 100);
  const auto before = predict_documents(b, docs);
  const auto after = predict_documents(loaded, docs);
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_TRUE(bit_equal(before[i].scores, after[i].scores)) << i;
    EXPECT_EQ(before[i].label, after[i].label);
  }
}

TEST_P(BundleKinds, EverySingleByteCorruptionIsDetected) {
  const std::string bytes = encode_bundle(trained(GetParam(), 3, 20));
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::string bad = bytes;
    bad[i] = static_cast<char>(bad[i] ^ 0x5A);
    EXPECT_THROW(decode_bundle(bad), Error) << "byte " << i;
  }
}

TEST_P(BundleKinds, TruncationIsAnIntegrityError) {
  const std::string bytes = encode_bundle(trained(GetParam(), 4, 20));
  for (std::size_t n = 0; n < bytes.size(); n += 1 + n / 8)
    EXPECT_THROW(decode_bundle(std::string_view(bytes).substr(0, n)), BundleIntegrityError) << n;
  EXPECT_THROW(decode_bundle(bytes + "x"), BundleIntegrityError);
}

INSTANTIATE_TEST_SUITE_P(AllModels, BundleKinds,
                         ::testing::Values(ModelKind::kNaiveBayes, ModelKind::kLogistic, ModelKind::kSgd),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Bundle, NewerVersionIsRefused) {
  std::string bytes = encode_bundle(trained(ModelKind::kNaiveBayes, 5, 10));
  set_u32(bytes, 8, kBundleFormatVersion + 1);
  EXPECT_THROW(decode_bundle(bytes), BundleVersionError);
  set_u32(bytes, 8, 0);
  EXPECT_THROW(decode_bundle(bytes), BundleVersionError);
}

TEST(Bundle, BadMagic) {
  std::string bytes = encode_bundle(trained(ModelKind::kNaiveBayes, 5, 10));
  bytes[0] = 'X';
  EXPECT_THROW(decode_bundle(bytes), BundleIntegrityError);
}

TEST(Bundle, EmptyVocabularyNaiveBayes) {
  TrainOptions opt;
  std::vector<Document> docs = {{"a", "of the", "", Label::kFalse}, {"b", "", "", Label::kTrue}};
  const auto b = train_bundle(docs, opt);
  EXPECT_EQ(b.vocab.size(), 0);
  const auto loaded = decode_bundle(encode_bundle(b));
  EXPECT_EQ(encode_bundle(loaded), encode_bundle(b));
  EXPECT_EQ(predict_documents(loaded, docs)[0].label, Label::kFalse);
}

TEST(Bundle, ValidationNamesTheField) {
  auto b = trained(ModelKind::kLogistic, 6, 20);
  b.idf.reset();
  try {
    encode_bundle(b);
    FAIL() << "expected BundleValidationError";
  } catch (const BundleValidationError& e) {
    EXPECT_EQ(e.field(), "idf");
  }
  auto nb = trained(ModelKind::kNaiveBayes, 6, 20);
  std::get<NbModeld>(nb.model).feature_log_prob(0, 0) += 1.0;
  try {
    validate_bundle(nb);
    FAIL() << "expected BundleValidationError";
  } catch (const BundleValidationError& e) {
    EXPECT_EQ(e.field(), "model.feature_log_prob");
  }
}

TEST(Bundle, FileRoundTrip) {
  const auto b = trained(ModelKind::kSgd, 7, 30);
  const auto path = std::filesystem::temp_directory_path() / "verinews_test_bundle.bin";
  save_bundle_file(b, path);
  EXPECT_EQ(encode_bundle(load_bundle_file(path)), encode_bundle(b));
  std::filesystem::remove(path);
  EXPECT_THROW(load_bundle_file(path), Error);
}
