#include "verinews/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "verinews/errors.hpp"

namespace verinews {

namespace {

struct CsvRow {
  std::vector<std::string> cells;
  std::size_t line = 0;

  bool blank() const { return cells.size() == 1 && cells.front().empty(); }
};

std::vector<CsvRow> split_rows(std::string_view in) {
  constexpr std::string_view kBom = "\xEF\xBB\xBF";
  if (in.starts_with(kBom)) in.remove_prefix(kBom.size());

  std::vector<CsvRow> rows;
  const std::size_t n = in.size();
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < n) {
    CsvRow row;
    row.line = line;
    for (;;) {
      std::string cell;
      if (i < n && in[i] == '"') {
        const std::size_t opened_at = line;
        ++i;
        for (;;) {
          if (i >= n) throw CsvParseError(opened_at, "unterminated quoted field");
          const char c = in[i++];
          if (c == '"') {
            if (i < n && in[i] == '"') {
              cell.push_back('"');
              ++i;
              continue;
            }
            break;
          }
          if (c == '\n') ++line;
          cell.push_back(c);
        }
      }
      while (i < n && in[i] != ',' && in[i] != '\n' && in[i] != '\r') cell.push_back(in[i++]);
      row.cells.push_back(std::move(cell));
      if (i < n && in[i] == ',') {
        ++i;
        continue;
      }
      if (i < n) {
        if (in[i] == '\r' && i + 1 < n && in[i + 1] == '\n') ++i;
        ++i;
        ++line;
      }
      break;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string normalize_header(std::string_view name) {
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
  std::string out(name);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

std::size_t find_column(const std::vector<std::string>& header,
                        std::initializer_list<std::string_view> names) {
  for (std::size_t i = 0; i < header.size(); ++i)
    for (const auto name : names)
      if (header[i] == name) return i;
  return kNoColumn;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

std::vector<RawRecord> parse_csv(std::string_view input) {
  const auto rows = split_rows(input);
  auto first = std::find_if(rows.begin(), rows.end(), [](const CsvRow& r) { return !r.blank(); });
  if (first == rows.end()) throw SchemaError("public_id");

  std::vector<std::string> header;
  for (const auto& cell : first->cells) header.push_back(normalize_header(cell));
  const std::size_t id_col = find_column(header, {"public_id"});
  const std::size_t title_col = find_column(header, {"title"});
  const std::size_t text_col = find_column(header, {"text"});
  const std::size_t rating_col = find_column(header, {"our rating", "our_rating"});
  if (id_col == kNoColumn) throw SchemaError("public_id");
  if (title_col == kNoColumn) throw SchemaError("title");
  if (text_col == kNoColumn) throw SchemaError("text");

  auto cell = [](const CsvRow& row, std::size_t col) -> std::string {
    return col < row.cells.size() ? row.cells[col] : std::string();
  };

  std::vector<RawRecord> records;
  for (auto it = std::next(first); it != rows.end(); ++it) {
    if (it->blank()) continue;
    RawRecord rec;
    rec.public_id = cell(*it, id_col);
    if (is_blank(rec.public_id)) throw CsvParseError(it->line, "empty public_id");
    rec.title = cell(*it, title_col);
    rec.text = cell(*it, text_col);
    if (rating_col != kNoColumn) rec.rating = cell(*it, rating_col);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<std::vector<std::string>> parse_csv_rows(std::string_view input) {
  std::vector<std::vector<std::string>> out;
  for (auto& row : split_rows(input))
    if (!row.blank()) out.push_back(std::move(row.cells));
  return out;
}

std::vector<RawRecord> parse_csv(std::istream& input) {
  const std::string text{std::istreambuf_iterator<char>(input), std::istreambuf_iterator<char>()};
  return parse_csv(std::string_view(text));
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(cells[i]);
  }
  out << '\n';
}

void write_csv(std::ostream& out, std::span<const RawRecord> records) {
  const bool with_rating =
      std::any_of(records.begin(), records.end(), [](const RawRecord& r) { return r.rating.has_value(); });
  std::vector<std::string> header = {"public_id", "title", "text"};
  if (with_rating) header.emplace_back("our rating");
  write_csv_row(out, header);
  for (const auto& r : records) {
    std::vector<std::string> row = {r.public_id, r.title, r.text};
    if (with_rating) row.push_back(r.rating.value_or(""));
    write_csv_row(out, row);
  }
}

std::vector<Document> to_documents(std::span<const RawRecord> records, bool labeled) {
  std::vector<Document> docs;
  docs.reserve(records.size());
  for (const auto& rec : records) {
    Document doc{rec.public_id, rec.title, rec.text, std::nullopt};
    if (labeled) {
      if (!rec.rating) throw SchemaError("our rating");
      if (is_blank(*rec.rating))
        throw CorpusError("record '" + rec.public_id + "' has no rating");
      try {
        doc.label = parse_label(*rec.rating);
      } catch (const LabelError& e) {
        throw CorpusError("record '" + rec.public_id + "': " + e.what());
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

bool is_labeled(std::span<const Document> docs) {
  const auto labeled = std::count_if(docs.begin(), docs.end(), [](const Document& d) { return d.label.has_value(); });
  if (labeled != 0 && static_cast<std::size_t>(labeled) != docs.size())
    throw CorpusError("corpus mixes labeled and unlabeled documents");
  return docs.empty() || labeled != 0;
}

ClassCounts dataset_stats(std::span<const Document> docs) {
  ClassCounts stats;
  for (const auto& d : docs) {
    if (!d.label) throw CorpusError("document '" + d.id + "' is unlabeled");
    ++stats.counts[index_of(*d.label)];
  }
  stats.total = docs.size();
  return stats;
}

std::vector<Document> concat_corpora(std::span<const std::vector<Document>> parts) {
  std::vector<Document> all;
  std::optional<bool> labeled;
  for (const auto& part : parts) {
    if (part.empty()) continue;
    const bool this_labeled = is_labeled(part);
    if (labeled && *labeled != this_labeled)
      throw CorpusError("cannot concatenate labeled and unlabeled corpora");
    labeled = this_labeled;
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

std::vector<Document> load_corpus(const std::filesystem::path& path, bool labeled) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return to_documents(parse_csv(in), labeled);
}

}  // namespace verinews
