#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "verinews/corpus.hpp"
#include "verinews/errors.hpp"
#include "verinews/metrics.hpp"
#include "verinews/parallel.hpp"
#include "verinews/persistence.hpp"
#include "verinews/pipeline.hpp"
#include "verinews/textprep.hpp"

namespace verinews::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string config;
  std::size_t threads = 0;  // 0: VERINEWS_THREADS or hardware threads
  std::string stopwords;
  std::string lemmas;
  std::string placeholder{PipelineConfig::kDefaultPlaceholder};
  std::size_t min_token_len = PipelineConfig::kDefaultMinTokenLen;

  std::vector<std::string> inputs;
  std::string out;
  std::string bundle;
  std::string html;
  std::string title;
  std::string format = "text";
  bool unlabeled = false;

  std::string model = "nb";
  std::string features;
  bool force = false;
  TrainConfig train;
  std::int64_t created = -1;

  std::string report_json;
  std::string predictions;
  std::string truth;
};

// Flat key=value settings file. '#' starts a comment; keys may use '-' or '_'.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    values[key] = strip(line.substr(eq + 1));
  }
  return values;
}

// Options that may also come from the config file, per subcommand.
struct ConfigBinding {
  std::string key;
  CLI::Option* option;
};

class Registry {
 public:
  template <typename T>
  CLI::Option* add(CLI::App* sub, const std::string& flag, const std::string& key, T& target,
                   const std::string& help) {
    CLI::Option* opt = sub->add_option(flag, target, help);
    bindings_[sub].push_back({key, opt});
    known_keys_.insert(key);
    return opt;
  }

  // Fills options not given on the command line from the config file.
  void apply(CLI::App* sub, const std::map<std::string, std::string>& values) const {
    for (const auto& [key, value] : values)
      if (!known_keys_.count(key)) throw UsageError("unknown config key '" + key + "'");
    const auto it = bindings_.find(sub);
    if (it == bindings_.end()) return;
    for (const auto& binding : it->second) {
      if (binding.option->count() > 0) continue;
      const auto v = values.find(binding.key);
      if (v == values.end()) continue;
      try {
        binding.option->add_result(v->second);
        binding.option->run_callback();
      } catch (const CLI::Error& e) {
        throw UsageError("config key '" + binding.key + "': " + e.what());
      }
    }
  }

 private:
  std::map<CLI::App*, std::vector<ConfigBinding>> bindings_;
  std::set<std::string> known_keys_;
};

void add_pipeline_options(Registry& reg, CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "Settings file with key=value lines (flags take precedence)");
  reg.add(sub, "--threads", "threads", o.threads, "Worker threads (default: VERINEWS_THREADS or all cores)");
  reg.add(sub, "--stopwords", "stopwords", o.stopwords, "Stop-word list file, one token per line");
  reg.add(sub, "--lemmas", "lemmas", o.lemmas, "Lemma exceptions file, surface<TAB>lemma per line");
  reg.add(sub, "--placeholder", "placeholder", o.placeholder, "Token substituted for numbers");
  reg.add(sub, "--min-token-len", "min_token_len", o.min_token_len, "Shortest token kept");
}

std::size_t thread_count(const Options& o) { return o.threads > 0 ? o.threads : default_thread_count(); }

PipelineConfig pipeline_from(const Options& o) {
  const PipelineConfig defaults;
  StopwordSet stopwords = o.stopwords.empty() ? defaults.stopwords() : load_stopword_file(o.stopwords);
  LemmaTable lemmas = o.lemmas.empty() ? defaults.lemma_exceptions() : load_lemma_file(o.lemmas);
  return PipelineConfig(std::move(stopwords), std::move(lemmas), o.placeholder, o.min_token_len);
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "nb") return ModelKind::kNaiveBayes;
  if (s == "lr") return ModelKind::kLogistic;
  if (s == "sgd") return ModelKind::kSgd;
  throw UsageError("unknown model kind '" + s + "' (expected nb, lr or sgd)");
}

FeatureKind parse_feature_kind(const std::string& s) {
  if (s == "count") return FeatureKind::kCount;
  if (s == "tfidf") return FeatureKind::kTfidf;
  throw UsageError("unknown feature kind '" + s + "' (expected count or tfidf)");
}

FeatureKind paired_features(ModelKind m) {
  return m == ModelKind::kNaiveBayes ? FeatureKind::kCount : FeatureKind::kTfidf;
}

std::string display_model(ModelKind m) {
  switch (m) {
    case ModelKind::kNaiveBayes: return "Naive Bayes";
    case ModelKind::kLogistic: return "LR";
    case ModelKind::kSgd: return "SGD";
  }
  return "model";
}

std::string display_features(FeatureKind f) { return f == FeatureKind::kCount ? "count" : "tf-idf"; }

std::int64_t creation_time(const Options& o) {
  if (o.created >= 0) return o.created;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw UsageError("SOURCE_DATE_EPOCH is not an integer");
    }
  }
  return 0;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("failed to write '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string format_score(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_report(const Options& o, const EvalReport& report, const std::string& title) {
  if (o.format == "json") {
    const std::string json = report_to_json(report);
    if (o.out.empty())
      std::cout << json;
    else
      write_text_file(o.out, json);
  } else {
    const std::string text = render_report(report) + "\n" + render_confusion(report.confusion, title);
    std::cout << text;
    if (!o.out.empty()) write_text_file(o.out, text);
  }
  if (!o.html.empty()) write_text_file(o.html, render_confusion_html(report.confusion, title));
}

int cmd_prep(const Options& o) {
  const auto docs = load_corpus(o.inputs.front(), !o.unlabeled);
  const auto clean = preprocess_corpus(docs, pipeline_from(o), thread_count(o));
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"public_id", "label", "tokens"});
  for (const auto& d : clean) {
    std::string joined;
    for (std::size_t i = 0; i < d.tokens.size(); ++i) joined += (i ? "," : "") + d.tokens[i];
    write_csv_row(out, std::vector<std::string>{d.id, d.label ? std::to_string(index_of(*d.label)) : "", joined});
  }
  if (o.out.empty())
    std::cout << out.str();
  else
    write_text_file(o.out, out.str());
  return kExitOk;
}

int cmd_train(const Options& o) {
  TrainOptions t;
  t.model = parse_model_kind(o.model);
  t.features = o.features.empty() ? paired_features(t.model) : parse_feature_kind(o.features);
  if (t.features != paired_features(t.model) && !o.force)
    throw UsageError("model '" + o.model + "' is paired with " + std::string(to_string(paired_features(t.model))) +
                     " features; pass --force to train it on " + std::string(to_string(t.features)));
  t.train = o.train;
  t.pipeline = pipeline_from(o);
  t.created_unix = creation_time(o);
  t.threads = thread_count(o);

  std::vector<std::vector<Document>> parts;
  for (const auto& path : o.inputs) parts.push_back(load_corpus(path, true));
  const auto docs = concat_corpora(parts);

  TrainSummary summary;
  const ModelBundle bundle = train_bundle(docs, t, &summary);
  save_bundle_file(bundle, o.out);

  std::cout << "trained " << to_string(t.model) << " on " << summary.class_counts.total << " documents ("
            << to_string(t.features) << " features)\n";
  std::cout << "class counts:";
  for (const Label c : kAllLabels) std::cout << ' ' << display_name(c) << '=' << summary.class_counts[c];
  std::cout << "\nvocabulary size: " << summary.vocab_size << '\n';
  std::cout << "convergence: " << (summary.converged ? "converged" : "iteration cap reached before tolerance")
            << '\n';
  std::cout << "bundle written to " << o.out << '\n';
  return kExitOk;
}

int cmd_eval(const Options& o) {
  const ModelBundle bundle = load_bundle_file(o.bundle);
  const auto docs = load_corpus(o.inputs.front(), true);
  const EvalReport report = evaluate(bundle, docs, thread_count(o));
  const std::string title = o.title.empty() ? "Confusion Matrix: " + display_model(bundle.model_kind()) + " on " +
                                                  display_features(bundle.features)
                                            : o.title;
  emit_report(o, report, title);
  return kExitOk;
}

int cmd_predict(const Options& o) {
  const ModelBundle bundle = load_bundle_file(o.bundle);
  const auto docs = load_corpus(o.inputs.front(), false);
  const auto predictions = predict_documents(bundle, docs, thread_count(o));
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"public_id", "predicted_label", "score_false", "score_true",
                                              "score_partially_false", "score_other"});
  for (const auto& p : predictions) {
    std::vector<std::string> row = {p.id, std::string(display_name(p.label))};
    for (Index c = 0; c < p.scores.size(); ++c) row.push_back(format_score(p.scores(c)));
    write_csv_row(out, row);
  }
  if (o.out.empty())
    std::cout << out.str();
  else
    write_text_file(o.out, out.str());
  return kExitOk;
}

// Builds a report from a saved JSON report, or from a predictions CSV joined
// with a labeled CSV on public_id.
int cmd_report(const Options& o) {
  EvalReport report;
  if (!o.report_json.empty()) {
    report = report_from_json(read_text_file(o.report_json));
  } else if (!o.predictions.empty() && !o.truth.empty()) {
    const auto truth_docs = load_corpus(o.truth, true);
    std::map<std::string, Label> truth;
    for (const auto& d : truth_docs) truth[d.id] = *d.label;

    const auto rows = parse_csv_rows(read_text_file(o.predictions));
    if (rows.empty()) throw UsageError("predictions file is empty");
    const auto& header = rows.front();
    const auto id_col = std::find(header.begin(), header.end(), "public_id") - header.begin();
    const auto label_col = std::find(header.begin(), header.end(), "predicted_label") - header.begin();
    if (id_col == static_cast<std::ptrdiff_t>(header.size())) throw SchemaError("public_id");
    if (label_col == static_cast<std::ptrdiff_t>(header.size())) throw SchemaError("predicted_label");

    std::vector<Label> y_true, y_pred;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const auto cell = [&](std::ptrdiff_t c) { return c < static_cast<std::ptrdiff_t>(row.size()) ? row[c] : ""; };
      const auto it = truth.find(cell(id_col));
      if (it == truth.end()) throw CorpusError("prediction for unknown public_id '" + cell(id_col) + "'");
      y_true.push_back(it->second);
      y_pred.push_back(parse_label(cell(label_col)));
    }
    report = classification_report(confusion_matrix(y_true, y_pred));
  } else {
    throw UsageError("report needs --json, or both --predictions and --truth");
  }
  emit_report(o, report, o.title.empty() ? "Confusion Matrix" : o.title);
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"verinews: news veracity classification (Naive Bayes, logistic regression, SGD)"};
  app.require_subcommand(1);
  Options o;
  Registry reg;
  const auto format_check = CLI::IsMember({"text", "json"});

  auto* prep = app.add_subcommand("prep", "Clean a CSV corpus and dump the token lists");
  prep->add_option("--in", o.inputs, "Input CSV")->required()->expected(1);
  prep->add_option("--out", o.out, "Output CSV (default: stdout)");
  prep->add_flag("--unlabeled", o.unlabeled, "Input has no rating column");
  add_pipeline_options(reg, prep, o);

  auto* train = app.add_subcommand("train", "Fit a model and write a bundle");
  train->add_option("--in", o.inputs, "Labeled training CSV (repeat to concatenate)")->required();
  train->add_option("--out", o.out, "Bundle path")->required();
  reg.add(train, "--model", "model", o.model, "nb, lr or sgd")->check(CLI::IsMember({"nb", "lr", "sgd"}));
  reg.add(train, "--features", "features", o.features, "count or tfidf (default: paired with the model)")
      ->check(CLI::IsMember({"count", "tfidf"}));
  train->add_flag("--force", o.force, "Allow a model/feature pairing other than nb+count, lr/sgd+tfidf");
  reg.add(train, "--nb-alpha", "nb_alpha", o.train.nb_alpha, "Naive Bayes smoothing");
  reg.add(train, "--lr-C", "lr_C", o.train.lr_C, "Logistic regression inverse regularization");
  reg.add(train, "--lr-tol", "lr_tol", o.train.lr_tol, "Logistic regression gradient tolerance");
  reg.add(train, "--lr-max-iter", "lr_max_iter", o.train.lr_max_iter, "Logistic regression iteration cap");
  reg.add(train, "--sgd-alpha", "sgd_alpha", o.train.sgd_alpha, "SGD L2 strength");
  reg.add(train, "--sgd-max-epochs", "sgd_max_epochs", o.train.sgd_max_epochs, "SGD epoch cap");
  reg.add(train, "--sgd-tol", "sgd_tol", o.train.sgd_tol, "SGD early-stopping tolerance");
  reg.add(train, "--sgd-n-iter-no-change", "sgd_n_iter_no_change", o.train.sgd_n_iter_no_change,
          "SGD epochs without improvement before stopping");
  reg.add(train, "--seed", "seed", o.train.seed, "SGD shuffling seed");
  reg.add(train, "--created", "created", o.created,
          "Creation time stored in the bundle, unix seconds (default: SOURCE_DATE_EPOCH or 0)");
  add_pipeline_options(reg, train, o);

  auto* eval = app.add_subcommand("eval", "Evaluate a bundle on a labeled CSV");
  eval->add_option("--in", o.inputs, "Labeled CSV")->required()->expected(1);
  eval->add_option("--bundle", o.bundle, "Model bundle")->required();
  eval->add_option("--format", o.format, "text or json")->check(format_check);
  eval->add_option("--out", o.out, "Write the report here as well");
  eval->add_option("--html", o.html, "Also write the confusion grid as an HTML table");
  eval->add_option("--title", o.title, "Confusion grid title");
  reg.add(eval, "--threads", "threads", o.threads, "Worker threads");

  auto* pred = app.add_subcommand("predict", "Predict labels for an unlabeled CSV");
  pred->add_option("--in", o.inputs, "Input CSV")->required()->expected(1);
  pred->add_option("--bundle", o.bundle, "Model bundle")->required();
  pred->add_option("--out", o.out, "Predictions CSV (default: stdout)");
  reg.add(pred, "--threads", "threads", o.threads, "Worker threads");

  auto* report = app.add_subcommand("report", "Render a report from saved results");
  report->add_option("--json", o.report_json, "JSON report written by eval --format json");
  report->add_option("--predictions", o.predictions, "Predictions CSV written by predict");
  report->add_option("--truth", o.truth, "Labeled CSV with the true ratings");
  report->add_option("--format", o.format, "text or json")->check(format_check);
  report->add_option("--out", o.out, "Write the report here as well");
  report->add_option("--html", o.html, "Also write the confusion grid as an HTML table");
  report->add_option("--title", o.title, "Confusion grid title");

  for (auto* sub : {eval, pred, report}) sub->add_option("--config", o.config, "Settings file with key=value lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!o.config.empty()) reg.apply(active, read_config_file(o.config));
    if (active == prep) return cmd_prep(o);
    if (active == train) return cmd_train(o);
    if (active == eval) return cmd_eval(o);
    if (active == pred) return cmd_predict(o);
    return cmd_report(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace verinews::cli
