#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "verinews/features.hpp"
#include "verinews/label.hpp"
#include "verinews/textprep.hpp"

namespace verinews::testkit {

inline std::string random_word(std::mt19937_64& rng, std::size_t max_len = 8) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<int> ch('a', 'z');
  std::string w(len(rng), 'a');
  for (auto& c : w) c = static_cast<char>(ch(rng));
  return w;
}

// Tokens drawn from a small pool so documents share terms.
inline CleanDoc random_clean_doc(std::mt19937_64& rng, const std::vector<std::string>& pool,
                                 std::size_t max_tokens) {
  std::uniform_int_distribution<std::size_t> n(0, max_tokens);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  CleanDoc d;
  const std::size_t k = n(rng);
  for (std::size_t i = 0; i < k; ++i) d.tokens.push_back(pool[pick(rng)]);
  return d;
}

inline std::vector<std::string> term_pool(std::size_t n) {
  std::vector<std::string> pool;
  for (std::size_t i = 0; i < n; ++i) pool.push_back("term" + std::string(1, static_cast<char>('a' + i % 26)) +
                                                     std::string(i / 26 + 1, 'x'));
  return pool;
}

inline Label random_label(std::mt19937_64& rng, std::size_t num_classes = kNumLabels) {
  std::uniform_int_distribution<std::size_t> d(0, num_classes - 1);
  return kAllLabels[d(rng)];
}

}  // namespace verinews::testkit

#include "verinews/corpus.hpp"

namespace verinews::testkit {

// Labeled news-like corpus: each class favors its own words, shares some
// common ones, and sprinkles numbers and punctuation into the text.
inline std::vector<Document> synthetic_corpus(std::uint64_t seed, std::size_t n) {
  static const std::vector<std::vector<std::string>> vocab = {
      {"hoax", "fake", "viral", "claims", "shocking", "banned"},
      {"official", "confirmed", "report", "study", "agency", "announced"},
      {"misleading", "partly", "context", "exaggerated", "missing", "selective"},
      {"satire", "opinion", "blog", "humor", "parody", "column"}};
  static const std::vector<std::string> shared = {"people", "government", "health", "election", "video", "news"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> word(0, 5), len(3, 12);
  std::discrete_distribution<std::size_t> cls({50, 30, 12, 8});
  std::bernoulli_distribution own(0.6), number(0.1);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = cls(rng);
    Document d{"doc" + std::to_string(i), "", "", kAllLabels[c]};
    for (std::size_t k = len(rng); k > 0; --k) {
      d.body += own(rng) ? vocab[c][word(rng)] : shared[word(rng)];
      d.body += number(rng) ? " 2,021! " : " ";
    }
    d.title = "Title " + vocab[c][word(rng)];
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace verinews::testkit
