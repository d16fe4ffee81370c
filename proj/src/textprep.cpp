#include "verinews/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <zlib.h>

#include "verinews/default_resources.hpp"
#include "verinews/errors.hpp"
#include "verinews/parallel.hpp"

namespace verinews {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_scheme_char(char c) { return is_alnum(c) || c == '+' || c == '.' || c == '-'; }
char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_lower_word(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Calls fn(begin, end) for every maximal non-whitespace run of s; fn returns
// where the run should be cut from (end to keep it whole).
template <typename Fn>
std::string rewrite_runs(const std::string& s, Fn&& cut_point) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_space(s[i])) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t end = i;
    while (end < s.size() && !is_space(s[end])) ++end;
    const std::size_t cut = cut_point(std::string_view(s).substr(i, end - i));
    out.append(s, i, cut);
    i = end;
  }
  return out;
}

// Offset of the first URL inside a whitespace-free run, or run.size().
std::size_t url_start(std::string_view run) {
  std::size_t best = run.size();
  for (std::size_t p = run.find("://"); p != std::string_view::npos; p = run.find("://", p + 1)) {
    std::size_t s = p;
    while (s > 0 && is_scheme_char(run[s - 1])) --s;
    while (s < p && !is_alpha(run[s])) ++s;
    if (s < p) {
      best = std::min(best, s);
      break;
    }
  }
  for (std::size_t q = 0; q + 4 <= run.size() && q < best; ++q) {
    if (to_lower(run[q]) == 'w' && to_lower(run[q + 1]) == 'w' && to_lower(run[q + 2]) == 'w' &&
        run[q + 3] == '.' && (q == 0 || !is_alnum(run[q - 1]))) {
      best = q;
      break;
    }
  }
  return best;
}

bool looks_like_email(std::string_view run) {
  const std::size_t at = run.find('@');
  if (at == std::string_view::npos || at == 0) return false;
  const std::size_t dot = run.find('.', at + 1);
  return dot != std::string_view::npos && dot > at + 1;
}

std::string strip_tags(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '<') {
      out.push_back(s[i++]);
      continue;
    }
    const std::size_t close = s.find_first_of("<>", i + 1);
    if (close != std::string::npos && s[close] == '>') {
      i = close + 1;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

// Porter's consonant test: y counts as a vowel after a consonant.
bool is_consonant(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return false;
    case 'y': return i == 0 || !is_consonant(w, i - 1);
    default: return true;
  }
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

// Number of vowel-consonant sequences, the m of [C](VC)^m[V].
int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool vowel = !is_consonant(w, i);
    if (prev_vowel && !vowel) ++m;
    prev_vowel = vowel;
  }
  return m;
}

bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  const char last = w[n - 1];
  return is_consonant(w, n - 3) && !is_consonant(w, n - 2) && is_consonant(w, n - 1) &&
         last != 'w' && last != 'x' && last != 'y';
}

// After dropping -ing / -ed: undo consonant doubling, or put back a silent e.
std::string repair_stem(std::string_view stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant(stem, n - 1) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z')
    return std::string(stem.substr(0, n - 1));
  if (stem.ends_with("bl") || stem.ends_with("iz") || stem.ends_with('v') ||
      (measure(stem) == 1 && ends_cvc(stem)))
    return std::string(stem) + 'e';
  return std::string(stem);
}

constexpr int kMaxLemmaRounds = 16;

std::string lemmatize_fully(const std::string& token, const PipelineConfig& cfg) {
  std::string lemma = token;
  for (int round = 0; round < kMaxLemmaRounds; ++round) {
    std::string next = lemmatize_token(lemma, cfg);
    if (next == lemma) break;
    lemma = std::move(next);
  }
  return lemma;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

PipelineConfig::PipelineConfig()
    : PipelineConfig(parse_stopword_list(resources::kStopwordsEn),
                     parse_lemma_table(resources::kLemmaExceptions)) {}

PipelineConfig::PipelineConfig(StopwordSet stopwords, LemmaTable lemma_exceptions,
                               std::string numeric_placeholder, std::size_t min_token_len)
    : stopwords_(std::move(stopwords)),
      lemmas_(std::move(lemma_exceptions)),
      placeholder_(std::move(numeric_placeholder)),
      min_token_len_(min_token_len) {
  if (min_token_len_ == 0) throw ConfigError("min_token_len must be at least 1");
  if (!is_lower_word(placeholder_))
    throw ConfigError("numeric placeholder '" + placeholder_ + "' must be lowercase ASCII letters");
  if (placeholder_.size() < min_token_len_)
    throw ConfigError("numeric placeholder '" + placeholder_ + "' is shorter than min_token_len");
  if (is_stopword(placeholder_))
    throw ConfigError("numeric placeholder '" + placeholder_ + "' is a stop word");
  for (const auto& [surface, lemma] : lemmas_) {
    if (!is_lower_word(surface) || !is_lower_word(lemma))
      throw ConfigError("lemma exception '" + surface + "' -> '" + lemma +
                        "' must use lowercase ASCII letters");
    const auto chained = lemmas_.find(lemma);
    if (chained != lemmas_.end() && chained->second != lemma)
      throw ConfigError("lemma exception '" + surface + "' -> '" + lemma + "' chains to '" +
                        chained->second + "'");
  }
}

bool PipelineConfig::is_stopword(std::string_view token) const {
  return stopwords_.find(token) != stopwords_.end();
}

std::uint32_t PipelineConfig::digest() const {
  std::ostringstream canon;
  canon << "placeholder=" << placeholder_ << '\n' << "min_token_len=" << min_token_len_ << '\n';
  canon << "stopwords=" << stopwords_.size() << '\n';
  for (const auto& w : stopwords_) canon << w << '\n';
  canon << "lemmas=" << lemmas_.size() << '\n';
  for (const auto& [surface, lemma] : lemmas_) canon << surface << '\t' << lemma << '\n';
  const std::string bytes = canon.str();
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

StopwordSet parse_stopword_list(std::string_view text) {
  StopwordSet out;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    std::string_view entry = line;
    if (const auto hash = entry.find('#'); hash != std::string_view::npos) entry = entry.substr(0, hash);
    entry = trim(entry);
    if (entry.empty()) continue;
    std::string word(entry);
    std::transform(word.begin(), word.end(), word.begin(), to_lower);
    out.insert(std::move(word));
  }
  return out;
}

LemmaTable parse_lemma_table(std::string_view text) {
  LemmaTable out;
  std::istringstream lines{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    std::string_view entry = line;
    if (const auto hash = entry.find('#'); hash != std::string_view::npos) entry = entry.substr(0, hash);
    if (trim(entry).empty()) continue;
    const auto tab = entry.find('\t');
    if (tab == std::string_view::npos)
      throw ConfigError("lemma table line " + std::to_string(line_no) + ": expected surface<TAB>lemma");
    const auto surface = trim(entry.substr(0, tab));
    const auto lemma = trim(entry.substr(tab + 1));
    if (surface.empty() || lemma.empty())
      throw ConfigError("lemma table line " + std::to_string(line_no) + ": empty field");
    out.insert_or_assign(std::string(surface), std::string(lemma));
  }
  return out;
}

StopwordSet load_stopword_file(const std::filesystem::path& path) {
  return parse_stopword_list(read_file(path));
}

LemmaTable load_lemma_file(const std::filesystem::path& path) {
  return parse_lemma_table(read_file(path));
}

std::string normalize_text(std::string_view raw, const PipelineConfig& cfg) {
  std::string s(raw);
  s = rewrite_runs(s, url_start);
  s = rewrite_runs(s, [](std::string_view run) { return looks_like_email(run) ? 0 : run.size(); });
  s = strip_tags(s);
  std::erase_if(s, [](char c) { return static_cast<unsigned char>(c) >= 0x80; });
  std::transform(s.begin(), s.end(), s.begin(), to_lower);

  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (!is_digit(s[i])) {
      out.push_back(is_alnum(s[i]) ? s[i] : ' ');
      ++i;
      continue;
    }
    while (i < s.size() && is_digit(s[i])) {
      ++i;
      if (i + 1 < s.size() && (s[i] == ',' || s[i] == '.') && is_digit(s[i + 1])) ++i;
    }
    if (!out.empty() && is_alnum(out.back())) out.push_back(' ');
    out += cfg.numeric_placeholder();
    if (i < s.size() && is_alnum(s[i])) out.push_back(' ');
  }
  return out;
}

std::vector<std::string> tokenize_and_filter(std::string_view normalized, const PipelineConfig& cfg) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && is_space(normalized[i])) ++i;
    std::size_t end = i;
    while (end < normalized.size() && !is_space(normalized[end])) ++end;
    const auto token = normalized.substr(i, end - i);
    if (!token.empty() && token.size() >= cfg.min_token_len() && !cfg.is_stopword(token))
      tokens.emplace_back(token);
    i = end;
  }
  return tokens;
}

std::string lemmatize_token(std::string_view token, const PipelineConfig& cfg) {
  if (const auto it = cfg.lemma_exceptions().find(token); it != cfg.lemma_exceptions().end())
    return it->second;

  const std::size_t n = token.size();
  if (token.ends_with("ies") && n > 3) return std::string(token.substr(0, n - 3)) + 'y';
  if (token.ends_with("sses")) return std::string(token.substr(0, n - 2));
  if (token.ends_with("es") && n >= 5) {
    const auto stem = token.substr(0, n - 2);
    if (stem.ends_with('x') || stem.ends_with('z') || stem.ends_with("ch") || stem.ends_with("sh"))
      return std::string(stem);
  }
  if (token.ends_with('s') && n >= 4 && !token.ends_with("ss") && !token.ends_with("us") &&
      !token.ends_with("is"))
    return std::string(token.substr(0, n - 1));
  if (token.ends_with("ing") && n >= 6 && has_vowel(token.substr(0, n - 3)))
    return repair_stem(token.substr(0, n - 3));
  if (token.ends_with("ed") && n >= 5 && has_vowel(token.substr(0, n - 2)))
    return repair_stem(token.substr(0, n - 2));
  return std::string(token);
}

CleanDoc preprocess_document(const Document& doc, const PipelineConfig& cfg) {
  CleanDoc out{doc.id, {}, doc.label};
  const std::string normalized = normalize_text(doc.title + " " + doc.body, cfg);
  for (auto& token : tokenize_and_filter(normalized, cfg)) {
    std::string lemma = token == cfg.numeric_placeholder() ? std::move(token) : lemmatize_fully(token, cfg);
    if (lemma.size() < cfg.min_token_len() || cfg.is_stopword(lemma)) continue;
    out.tokens.push_back(std::move(lemma));
  }
  return out;
}

std::vector<CleanDoc> preprocess_corpus(std::span<const Document> docs, const PipelineConfig& cfg,
                                        std::size_t threads) {
  std::vector<CleanDoc> out(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) { out[i] = preprocess_document(docs[i], cfg); });
  return out;
}

}  // namespace verinews
