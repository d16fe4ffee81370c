#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "verinews/corpus.hpp"
#include "verinews/label.hpp"

namespace verinews {

/// Token stream of one document after cleaning. Every token is [a-z]+, at
/// least min_token_len long and not a stop word.
struct CleanDoc {
  std::string id;
  std::vector<std::string> tokens;
  std::optional<Label> label;
};

using StopwordSet = std::set<std::string, std::less<>>;
using LemmaTable = std::map<std::string, std::string, std::less<>>;

/// Immutable rule set for the cleaning pipeline. The constructor rejects
/// configurations that would let an output token break the CleanDoc shape.
class PipelineConfig {
 public:
  static constexpr std::string_view kDefaultPlaceholder = "somenuber";
  static constexpr std::size_t kDefaultMinTokenLen = 3;

  /// Bundled English stop words and lemma exceptions.
  PipelineConfig();
  PipelineConfig(StopwordSet stopwords, LemmaTable lemma_exceptions,
                 std::string numeric_placeholder = std::string(kDefaultPlaceholder),
                 std::size_t min_token_len = kDefaultMinTokenLen);

  const StopwordSet& stopwords() const noexcept { return stopwords_; }
  const LemmaTable& lemma_exceptions() const noexcept { return lemmas_; }
  const std::string& numeric_placeholder() const noexcept { return placeholder_; }
  std::size_t min_token_len() const noexcept { return min_token_len_; }

  bool is_stopword(std::string_view token) const;

  /// CRC-32 over the canonical serialization of all four fields.
  std::uint32_t digest() const;

  bool operator==(const PipelineConfig&) const = default;

 private:
  StopwordSet stopwords_;
  LemmaTable lemmas_;
  std::string placeholder_;
  std::size_t min_token_len_;
};

/// One token per line, '#' starts a comment, entries are lowercased.
StopwordSet parse_stopword_list(std::string_view text);
/// `surface<TAB>lemma` per line, '#' comments. Throws ConfigError on a
/// malformed line.
LemmaTable parse_lemma_table(std::string_view text);

StopwordSet load_stopword_file(const std::filesystem::path& path);
LemmaTable load_lemma_file(const std::filesystem::path& path);

/// Removes URLs, e-mail addresses, markup tags and non-ASCII bytes,
/// lowercases, replaces digit runs with the numeric placeholder, then turns
/// every other non-alphanumeric character into a space.
std::string normalize_text(std::string_view raw, const PipelineConfig& cfg);

/// Whitespace split, then length and stop-word filters. Order preserved.
std::vector<std::string> tokenize_and_filter(std::string_view normalized,
                                             const PipelineConfig& cfg);

/// Exceptions table first, then the first applicable suffix rule.
std::string lemmatize_token(std::string_view token, const PipelineConfig& cfg);

/// title + " " + body through the whole pipeline, label copied through.
CleanDoc preprocess_document(const Document& doc, const PipelineConfig& cfg);

/// Order-stable parallel map of preprocess_document.
std::vector<CleanDoc> preprocess_corpus(std::span<const Document> docs,
                                        const PipelineConfig& cfg,
                                        std::size_t threads = 1);

}  // namespace verinews
