#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "verinews/label.hpp"

namespace verinews {

/// One data row of a news CSV, as text.
struct RawRecord {
  std::string public_id;
  std::string title;
  std::string text;
  // Absent when the file has no rating column (test splits).
  std::optional<std::string> rating;

  bool operator==(const RawRecord&) const = default;
};

struct Document {
  std::string id;
  std::string title;
  std::string body;
  std::optional<Label> label;
};

struct ClassCounts {
  std::array<std::size_t, kNumLabels> counts{};
  std::size_t total = 0;

  std::size_t operator[](Label label) const { return counts[index_of(label)]; }
};

/// Parses comma-separated, double-quoted UTF-8 CSV with a header row. The
/// header must name public_id, title and text; the rating column is optional
/// and may be spelled "our rating" or "our_rating". Unknown columns are
/// ignored and short rows are padded with empty cells.
///
/// Throws CsvParseError for an unterminated quote or an empty public_id, and
/// SchemaError when a required column is missing.
std::vector<RawRecord> parse_csv(std::string_view input);
std::vector<RawRecord> parse_csv(std::istream& input);

/// Raw CSV rows (header included), blank lines skipped. Same dialect and
/// errors as parse_csv, without any schema.
std::vector<std::vector<std::string>> parse_csv_rows(std::string_view input);

/// Writes records back as CSV (header public_id,title,text[,our rating]).
/// The rating column is emitted when any record carries one.
void write_csv(std::ostream& out, std::span<const RawRecord> records);

/// Quotes a field when it contains a delimiter, quote or line break.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> cells);

/// With labeled=true every record needs a parseable rating, otherwise
/// CorpusError names the record. With labeled=false ratings are ignored.
std::vector<Document> to_documents(std::span<const RawRecord> records, bool labeled);

/// Per-label counts. Throws CorpusError on any unlabeled document.
ClassCounts dataset_stats(std::span<const Document> docs);

/// Appends corpora that are all labeled or all unlabeled; mixing throws.
std::vector<Document> concat_corpora(std::span<const std::vector<Document>> parts);

/// true when every document is labeled, false when none is. Mixed throws.
bool is_labeled(std::span<const Document> docs);

std::vector<Document> load_corpus(const std::filesystem::path& path, bool labeled);

}  // namespace verinews
