#include "verinews/features.hpp"

#include <algorithm>

namespace verinews {

Vocabulary Vocabulary::from_sorted_terms(std::vector<std::string> terms) {
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (!(terms[i - 1] < terms[i]))
      throw ConfigError("vocabulary terms are not strictly increasing at position " + std::to_string(i));
  return Vocabulary(std::move(terms));
}

std::optional<Index> Vocabulary::index_of(std::string_view term) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), term,
                                   [](const std::string& a, std::string_view b) { return a < b; });
  if (it == terms_.end() || *it != term) return std::nullopt;
  return static_cast<Index>(it - terms_.begin());
}

Vocabulary build_vocabulary(std::span<const CleanDoc> corpus) {
  std::vector<std::string> terms;
  for (const auto& doc : corpus) terms.insert(terms.end(), doc.tokens.begin(), doc.tokens.end());
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return Vocabulary::from_sorted_terms(std::move(terms));
}

namespace detail {

std::vector<std::pair<Index, std::size_t>> term_counts(const CleanDoc& doc, const Vocabulary& vocab) {
  std::vector<Index> cols;
  cols.reserve(doc.tokens.size());
  for (const auto& token : doc.tokens)
    if (const auto col = vocab.index_of(token)) cols.push_back(*col);
  std::sort(cols.begin(), cols.end());

  std::vector<std::pair<Index, std::size_t>> counts;
  for (const Index col : cols) {
    if (!counts.empty() && counts.back().first == col)
      ++counts.back().second;
    else
      counts.emplace_back(col, 1);
  }
  return counts;
}

}  // namespace detail

}  // namespace verinews
