#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "verinews/features.hpp"
#include "verinews/linear_model.hpp"
#include "verinews/naive_bayes.hpp"
#include "verinews/textprep.hpp"

namespace verinews {

enum class FeatureKind : std::uint8_t { kCount = 0, kTfidf = 1 };
enum class ModelKind : std::uint8_t { kNaiveBayes = 0, kLogistic = 1, kSgd = 2 };

std::string_view to_string(FeatureKind kind) noexcept;
std::string_view to_string(ModelKind kind) noexcept;

struct BundleMetadata {
  std::uint64_t training_docs = 0;
  std::int64_t created_unix = 0;
};

/// Everything inference needs: cleaning rules, feature space and classifier.
struct ModelBundle {
  PipelineConfig pipeline;
  Vocabulary vocab;
  FeatureKind features = FeatureKind::kCount;
  std::optional<IdfWeights<double>> idf;  // present iff features == kTfidf
  std::variant<NbModeld, LinearModeld> model;
  BundleMetadata metadata;

  ModelKind model_kind() const noexcept;
};

inline constexpr std::uint32_t kBundleFormatVersion = 1;
inline constexpr std::array<char, 8> kBundleMagic = {'V', 'N', 'B', 'U', 'N', 'D', 'L', 'E'};

/// Checks the cross-field invariants. Throws BundleValidationError.
void validate_bundle(const ModelBundle& bundle);

/// Deterministic binary encoding; layout in docs/bundle_format.md.
std::string encode_bundle(const ModelBundle& bundle);

/// Throws BundleIntegrityError (truncation, bad magic, checksum),
/// BundleVersionError or BundleValidationError.
ModelBundle decode_bundle(std::string_view bytes);

void save_bundle(const ModelBundle& bundle, std::ostream& out);
ModelBundle load_bundle(std::istream& in);

void save_bundle_file(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_bundle_file(const std::filesystem::path& path);

}  // namespace verinews
