#include "verinews/persistence.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <zlib.h>

#include "verinews/errors.hpp"

namespace verinews {

namespace {

static_assert(std::numeric_limits<double>::is_iec559, "bundles store IEEE-754 binary64");

constexpr std::size_t kHeaderSize = 24;
constexpr double kSumTolerance = 1e-9;

// Section tags in file order.
constexpr std::string_view kMetaTag = "META";
constexpr std::string_view kPipelineTag = "PIPE";
constexpr std::string_view kVocabTag = "VOCB";
constexpr std::string_view kIdfTag = "IDFW";
constexpr std::string_view kModelTag = "MODL";

std::uint32_t checksum(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { little_endian(v, 4); }
  void u64(std::uint64_t v) { little_endian(v, 8); }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void raw(std::string_view s) { out_.append(s); }
  void section(std::string_view tag, const Writer& body) {
    raw(tag);
    u64(body.out_.size());
    raw(body.out_);
  }
  const std::string& bytes() const noexcept { return out_; }

 private:
  void little_endian(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : in_(bytes) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(4)); }
  std::uint64_t u64() { return little_endian(8); }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const auto n = u32();
    return std::string(take(n));
  }
  std::string_view take(std::size_t n) {
    if (n > in_.size() - pos_) throw BundleIntegrityError("bundle payload is truncated");
    const auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  // Element count that must fit in the remaining bytes at `width` bytes each.
  std::size_t count(std::size_t width) {
    const auto n = u64();
    if (width > 0 && n > (in_.size() - pos_) / width) throw BundleIntegrityError("bundle payload is truncated");
    return static_cast<std::size_t>(n);
  }
  bool done() const noexcept { return pos_ == in_.size(); }
  std::string_view peek_tag() const { return pos_ + 4 <= in_.size() ? in_.substr(pos_, 4) : std::string_view(); }

  Reader section(std::string_view tag) {
    if (take(4) != tag) throw BundleValidationError(std::string(tag), "section missing or out of order");
    const auto n = count(1);
    return Reader(take(n));
  }

 private:
  std::uint64_t little_endian(int width) {
    const auto s = take(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i])) << (8 * i);
    return v;
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

void finish(const Reader& r, std::string_view tag) {
  if (!r.done()) throw BundleValidationError(std::string(tag), "trailing bytes in section");
}

void write_matrix(Writer& w, const ClassMatrixd& m) {
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) w.f64(m(r, c));
}

ClassMatrixd read_matrix(Reader& r, Index cols) {
  ClassMatrixd m(kNumLabels, cols);
  for (Index row = 0; row < m.rows(); ++row)
    for (Index c = 0; c < cols; ++c) m(row, c) = r.f64();
  return m;
}

void write_scores(Writer& w, const Scoresd& s) {
  for (Index i = 0; i < s.size(); ++i) w.f64(s(i));
}

Scoresd read_scores(Reader& r) {
  Scoresd s;
  for (Index i = 0; i < s.size(); ++i) s(i) = r.f64();
  return s;
}

std::string encode_payload(const ModelBundle& b) {
  Writer meta;
  meta.u8(static_cast<std::uint8_t>(b.features));
  meta.u8(static_cast<std::uint8_t>(b.model_kind()));
  meta.u64(b.metadata.training_docs);
  meta.i64(b.metadata.created_unix);

  Writer pipe;
  pipe.u32(b.pipeline.digest());
  pipe.str(b.pipeline.numeric_placeholder());
  pipe.u64(b.pipeline.min_token_len());
  pipe.u64(b.pipeline.stopwords().size());
  for (const auto& w : b.pipeline.stopwords()) pipe.str(w);
  pipe.u64(b.pipeline.lemma_exceptions().size());
  for (const auto& [surface, lemma] : b.pipeline.lemma_exceptions()) {
    pipe.str(surface);
    pipe.str(lemma);
  }

  Writer vocab;
  vocab.u64(b.vocab.terms().size());
  for (const auto& t : b.vocab.terms()) vocab.str(t);

  Writer model;
  if (const auto* nb = std::get_if<NbModeld>(&b.model)) {
    model.f64(nb->alpha);
    model.u64(static_cast<std::uint64_t>(nb->vocab_size()));
    write_scores(model, nb->class_log_prior);
    write_matrix(model, nb->feature_log_prob);
  } else {
    const auto& lin = std::get<LinearModeld>(b.model);
    model.u8(static_cast<std::uint8_t>(lin.kind));
    model.u8(lin.converged ? 1 : 0);
    model.u64(static_cast<std::uint64_t>(lin.dim()));
    write_scores(model, lin.bias);
    write_matrix(model, lin.weights);
  }

  Writer payload;
  payload.section(kMetaTag, meta);
  payload.section(kPipelineTag, pipe);
  payload.section(kVocabTag, vocab);
  if (b.idf) {
    Writer idf;
    idf.u64(b.idf->n_docs);
    idf.u64(static_cast<std::uint64_t>(b.idf->idf.size()));
    for (Index i = 0; i < b.idf->idf.size(); ++i) idf.f64(b.idf->idf(i));
    payload.section(kIdfTag, idf);
  }
  payload.section(kModelTag, model);
  return payload.bytes();
}

}  // namespace

std::string_view to_string(FeatureKind kind) noexcept {
  return kind == FeatureKind::kCount ? "count" : "tfidf";
}

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::kNaiveBayes: return "nb";
    case ModelKind::kLogistic: return "lr";
    case ModelKind::kSgd: return "sgd";
  }
  return "unknown";
}

ModelKind ModelBundle::model_kind() const noexcept {
  if (std::holds_alternative<NbModeld>(model)) return ModelKind::kNaiveBayes;
  return std::get<LinearModeld>(model).kind == LinearKind::kLogistic ? ModelKind::kLogistic : ModelKind::kSgd;
}

void validate_bundle(const ModelBundle& b) {
  const Index V = b.vocab.size();
  if (b.features != FeatureKind::kCount && b.features != FeatureKind::kTfidf)
    throw BundleValidationError("features", "unknown feature kind");
  if ((b.features == FeatureKind::kTfidf) != b.idf.has_value())
    throw BundleValidationError("idf", "idf weights must be present exactly for tf-idf features");
  if (b.idf) {
    if (b.idf->idf.size() != V) throw BundleValidationError("idf", "length differs from vocabulary size");
    for (Index i = 0; i < V; ++i)
      if (!(b.idf->idf(i) >= 1.0) || !std::isfinite(b.idf->idf(i)))
        throw BundleValidationError("idf", "weight below 1 or non-finite at column " + std::to_string(i));
  }
  if (const auto* nb = std::get_if<NbModeld>(&b.model)) {
    if (nb->feature_log_prob.cols() != V)
      throw BundleValidationError("model.feature_log_prob", "width differs from vocabulary size");
    if (!(nb->alpha > 0) || !std::isfinite(nb->alpha)) throw BundleValidationError("model.alpha", "must be positive");
    double prior_mass = 0;
    for (Index c = 0; c < nb->class_log_prior.size(); ++c) {
      const double lp = nb->class_log_prior(c);
      if (std::isnan(lp) || lp > 0) throw BundleValidationError("model.class_log_prior", "not a log probability");
      prior_mass += std::exp(lp);
    }
    if (std::abs(prior_mass - 1.0) > kSumTolerance)
      throw BundleValidationError("model.class_log_prior", "priors do not sum to 1");
    if (V > 0) {
      for (Index c = 0; c < nb->feature_log_prob.rows(); ++c) {
        if (!nb->feature_log_prob.row(c).allFinite())
          throw BundleValidationError("model.feature_log_prob", "non-finite entry");
        const double mass = nb->feature_log_prob.row(c).array().exp().sum();
        if (std::abs(mass - 1.0) > kSumTolerance)
          throw BundleValidationError("model.feature_log_prob", "row " + std::to_string(c) + " does not sum to 1");
      }
    }
  } else {
    const auto& lin = std::get<LinearModeld>(b.model);
    if (lin.weights.cols() != V) throw BundleValidationError("model.weights", "width differs from vocabulary size");
    if (!lin.weights.allFinite()) throw BundleValidationError("model.weights", "non-finite entry");
    if (!lin.bias.allFinite()) throw BundleValidationError("model.bias", "non-finite entry");
    if (lin.kind != LinearKind::kLogistic && lin.kind != LinearKind::kHinge)
      throw BundleValidationError("model.kind", "unknown linear model kind");
  }
}

std::string encode_bundle(const ModelBundle& bundle) {
  validate_bundle(bundle);
  const std::string payload = encode_payload(bundle);
  Writer header;
  header.raw(std::string_view(kBundleMagic.data(), kBundleMagic.size()));
  header.u32(kBundleFormatVersion);
  header.u32(checksum(payload));
  header.u64(payload.size());
  return header.bytes() + payload;
}

ModelBundle decode_bundle(std::string_view bytes) {
  if (bytes.size() < kHeaderSize) throw BundleIntegrityError("bundle is truncated (incomplete header)");
  Reader header(bytes.substr(0, kHeaderSize));
  if (header.take(kBundleMagic.size()) != std::string_view(kBundleMagic.data(), kBundleMagic.size()))
    throw BundleIntegrityError("not a model bundle (bad magic)");
  const auto version = header.u32();
  if (version > kBundleFormatVersion)
    throw BundleVersionError("bundle format version " + std::to_string(version) +
                             " is newer than supported version " + std::to_string(kBundleFormatVersion));
  if (version == 0) throw BundleVersionError("bundle format version 0 is not valid");
  const auto expected_crc = header.u32();
  const auto length = header.u64();
  const auto payload = bytes.substr(kHeaderSize);
  if (payload.size() != length)
    throw BundleIntegrityError("bundle payload length " + std::to_string(payload.size()) + " does not match header " +
                               std::to_string(length));
  if (checksum(payload) != expected_crc) throw BundleIntegrityError("bundle checksum mismatch");

  Reader in(payload);
  ModelBundle b;

  Reader meta = in.section(kMetaTag);
  const auto feature_code = meta.u8();
  const auto model_code = meta.u8();
  if (feature_code > 1) throw BundleValidationError("features", "unknown feature kind");
  if (model_code > 2) throw BundleValidationError("model_kind", "unknown model kind");
  b.features = static_cast<FeatureKind>(feature_code);
  b.metadata.training_docs = meta.u64();
  b.metadata.created_unix = meta.i64();
  finish(meta, kMetaTag);

  Reader pipe = in.section(kPipelineTag);
  const auto digest = pipe.u32();
  std::string placeholder = pipe.str();
  const auto min_len = pipe.u64();
  StopwordSet stopwords;
  for (std::size_t i = 0, n = pipe.count(4); i < n; ++i) stopwords.insert(pipe.str());
  LemmaTable lemmas;
  for (std::size_t i = 0, n = pipe.count(8); i < n; ++i) {
    std::string surface = pipe.str();
    lemmas.insert_or_assign(std::move(surface), pipe.str());
  }
  finish(pipe, kPipelineTag);
  try {
    b.pipeline = PipelineConfig(std::move(stopwords), std::move(lemmas), std::move(placeholder),
                                static_cast<std::size_t>(min_len));
  } catch (const ConfigError& e) {
    throw BundleValidationError("pipeline", e.what());
  }
  if (b.pipeline.digest() != digest) throw BundleValidationError("pipeline.digest", "does not match embedded tables");

  Reader vocab = in.section(kVocabTag);
  std::vector<std::string> terms(vocab.count(4));
  for (auto& t : terms) t = vocab.str();
  finish(vocab, kVocabTag);
  try {
    b.vocab = Vocabulary::from_sorted_terms(std::move(terms));
  } catch (const ConfigError& e) {
    throw BundleValidationError("vocab", e.what());
  }
  const Index V = b.vocab.size();

  if (in.peek_tag() == kIdfTag) {
    Reader idf = in.section(kIdfTag);
    IdfWeights<double> w;
    w.n_docs = static_cast<std::size_t>(idf.u64());
    w.idf.resize(static_cast<Index>(idf.count(8)));
    for (Index i = 0; i < w.idf.size(); ++i) w.idf(i) = idf.f64();
    finish(idf, kIdfTag);
    b.idf = std::move(w);
  }

  Reader model = in.section(kModelTag);
  if (static_cast<ModelKind>(model_code) == ModelKind::kNaiveBayes) {
    NbModeld nb;
    nb.alpha = model.f64();
    if (model.u64() != static_cast<std::uint64_t>(V))
      throw BundleValidationError("model.vocab_size", "differs from vocabulary size");
    nb.class_log_prior = read_scores(model);
    nb.feature_log_prob = read_matrix(model, V);
    b.model = std::move(nb);
  } else {
    LinearModeld lin;
    const auto kind = model.u8();
    if (kind > 1) throw BundleValidationError("model.kind", "unknown linear model kind");
    lin.kind = static_cast<LinearKind>(kind);
    if ((lin.kind == LinearKind::kLogistic) != (static_cast<ModelKind>(model_code) == ModelKind::kLogistic))
      throw BundleValidationError("model.kind", "disagrees with metadata model kind");
    lin.converged = model.u8() != 0;
    if (model.u64() != static_cast<std::uint64_t>(V))
      throw BundleValidationError("model.dim", "differs from vocabulary size");
    lin.bias = read_scores(model);
    lin.weights = read_matrix(model, V);
    b.model = std::move(lin);
  }
  finish(model, kModelTag);
  if (!in.done()) throw BundleValidationError("payload", "unexpected trailing section");

  validate_bundle(b);
  return b;
}

void save_bundle(const ModelBundle& bundle, std::ostream& out) {
  const std::string bytes = encode_bundle(bundle);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed to write model bundle");
}

ModelBundle load_bundle(std::istream& in) {
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error("failed to read model bundle");
  return decode_bundle(bytes);
}

void save_bundle_file(const ModelBundle& bundle, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  save_bundle(bundle, out);
  out.close();
  if (!out) throw Error("failed to write '" + path.string() + "'");
}

ModelBundle load_bundle_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return load_bundle(in);
}

}  // namespace verinews
