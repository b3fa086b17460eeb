#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stance/classifier.hpp"
#include "stance/config.hpp"
#include "stance/corpus.hpp"
#include "stance/distant.hpp"
#include "stance/embeddings.hpp"
#include "stance/error.hpp"
#include "stance/eval.hpp"
#include "stance/features.hpp"
#include "stance/pipeline.hpp"
#include "stance/strings.hpp"
#include "stance/viz.hpp"

namespace fs = std::filesystem;
using namespace stance;

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> task, features, benchmark, out, target, C_grid;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> train, test, dataset, predictions, models, lexicons, targets, pos;
  std::optional<std::string> domain_corpus, si_hashtags, vectors, augment;
  // subcommand specifics
  double fraction = 0.7;
  bool fraction_set = false;
  std::string kind = "word-stance";
  bool per_target = false;
  std::optional<std::size_t> min_freq;
  std::optional<double> threshold;
};

RunConfig resolve(const Flags& f) {
  RunConfig rc = f.config.empty() ? RunConfig{} : load_run_config(f.config);
  auto set = [](std::string& dst, const std::optional<std::string>& v) {
    if (v) dst = *v;
  };
  set(rc.train_path, f.train);
  set(rc.test_path, f.test);
  set(rc.dataset_path, f.dataset);
  set(rc.lexicon_manifest, f.lexicons);
  set(rc.targets_path, f.targets);
  set(rc.pos_path, f.pos);
  set(rc.domain_corpus, f.domain_corpus);
  set(rc.si_hashtags, f.si_hashtags);
  set(rc.embeddings_path, f.vectors);
  set(rc.out_dir, f.out);
  set(rc.benchmark, f.benchmark);
  if (f.task) rc.task = parse_task(*f.task);
  if (f.features) {
    auto fc = FeatureConfig::parse(*f.features);
    (rc.task == Task::Stance ? rc.stance_features : rc.sentiment_features) = fc;
  }
  if (f.target) rc.target = *f.target;
  if (f.seed) rc.seed = *f.seed;
  if (f.fraction_set) rc.train_fraction = f.fraction;
  if (f.C_grid) {
    rc.train.C_grid.clear();
    for (const auto& p : strings::split(*f.C_grid, ',')) {
      auto v = strings::parse_double(strings::trim(p));
      if (!v) throw ConfigError("bad --C-grid value '" + p + "'");
      rc.train.C_grid.push_back(*v);
    }
  }
  if (f.min_freq) rc.auto_min_freq = *f.min_freq;
  if (f.threshold) rc.auto_threshold = *f.threshold;
  rc.propagate_seed();
  rc.train.validate();
  return rc;
}

const std::string& need(const std::string& value, const char* what) {
  if (value.empty()) throw ConfigError(std::string("missing ") + what);
  return value;
}

fs::path out_file(const RunConfig& rc, const std::string& name) {
  fs::create_directories(rc.out_dir);
  return fs::path(rc.out_dir) / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw ConfigError("cannot write '" + p.string() + "'");
  return out;
}

Dataset restrict(Dataset d, const RunConfig& rc) {
  if (!rc.target) return d;
  auto only = d.only_target(*rc.target);
  if (only.empty()) throw DataError("no instances for target '" + *rc.target + "'");
  return only;
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void print_distribution(std::ostream& out, const Dataset& d, LabelKind kind, const char* title) {
  bool any = false;
  for (const auto& inst : d.instances) any = any || label_of(inst, kind).has_value();
  if (!any) return;
  out << title << '\n';
  auto row = [&](const std::string& name, std::optional<std::string_view> t) {
    try {
      auto dist = class_distribution(d, kind, t);
      out << "  " << name << '\t' << dist.total;
      for (const auto& [l, p] : dist.percentages) out << '\t' << l << ' ' << pct(p);
      out << '\n';
    } catch (const DataError& e) {
      out << "  " << name << "\t(" << e.what() << ")\n";
    }
  };
  for (const auto& t : d.target_names()) row(t, t);
  row("Total", std::nullopt);
}

void print_matrix(std::ostream& out, const CrossMatrix& m, const char* title) {
  out << title << '\n';
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    out << "  " << m.rows[r];
    char buf[32];
    for (std::size_t c = 0; c < m.cols.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.2f", m.percentages[r][c]);
      out << '\t' << m.cols[c] << ' ' << buf;
    }
    out << '\n';
  }
}

void write_predictions(const fs::path& p, const Dataset& d, const std::vector<std::string>& pred) {
  auto out = open_out(p);
  out << "ID\tTarget\tPrediction\n";
  for (std::size_t i = 0; i < d.size(); ++i)
    out << d.instances[i].id << '\t' << d.instances[i].target << '\t' << pred[i] << '\n';
}

std::vector<std::string> read_predictions(const std::string& path, const Dataset& gold) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open predictions '" + path + "'");
  std::map<std::string, std::string> by_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 || strings::trim(line).empty()) continue;
    auto cols = strings::split(line, '\t');
    if (cols.size() != 3)
      throw DataError("predictions line " + std::to_string(line_no) + ": expected ID<TAB>Target<TAB>Prediction");
    by_id[cols[0]] = strings::to_lower(strings::trim(cols[2]));
  }
  if (by_id.empty()) throw DataError("predictions file '" + path + "' is empty");
  std::vector<std::string> out;
  for (const auto& inst : gold.instances) {
    auto it = by_id.find(inst.id);
    if (it == by_id.end()) throw DataError("no prediction for instance '" + inst.id + "'");
    out.push_back(it->second);
  }
  return out;
}

void write_reports(const RunConfig& rc, const std::string& stem, const Dataset& test,
                   const std::vector<std::string>& pred, LabelKind kind,
                   nlohmann::json extra = nlohmann::json::object()) {
  const auto gold = gold_labels(test, kind);
  const auto report = evaluate(gold, pred, instance_targets(test), kind);
  const auto subsets = evaluate_by_opinion_subset(test, pred, kind);

  auto txt = open_out(out_file(rc, stem + ".txt"));
  write_report_text(txt, report);
  if (subsets.to_target) write_report_text(txt, *subsets.to_target, "to_target.");
  if (subsets.to_other) write_report_text(txt, *subsets.to_other, "to_other.");

  nlohmann::json j = extra;
  j["overall"] = report_json(report);
  if (subsets.to_target) j["to_target"] = report_json(*subsets.to_target);
  if (subsets.to_other) j["to_other"] = report_json(*subsets.to_other);
  open_out(out_file(rc, stem + ".json")) << j.dump(2) << '\n';

  std::cout << "F-macroT " << pct(100 * report.f_macroT) << "  F-microT "
            << pct(100 * report.f_microT) << "  (n=" << report.n << ")\n";
  for (const auto& t : report.per_target)
    std::cout << "  " << t.target << '\t' << pct(100 * t.f_average) << '\n';
  if (subsets.to_target && subsets.to_other)
    std::cout << "  to-target F-microT " << pct(100 * subsets.to_target->f_microT)
              << "  to-other F-microT " << pct(100 * subsets.to_other->f_microT) << '\n';
}

SiHashtagMap flatten_si(const std::map<std::string, SiHashtagMap>& per_target,
                        const std::optional<std::string>& target) {
  SiHashtagMap out;
  for (const auto& [t, m] : per_target)
    if (!target || t == *target) out.insert(m.begin(), m.end());
  return out;
}

// ---- commands ----

void cmd_ingest(const RunConfig& rc) {
  auto d = restrict(load_dataset(need(rc.dataset_path, "--dataset"), rc), rc);
  auto out = open_out(out_file(rc, "dataset.tsv"));
  write_tsv(out, d);
  std::cout << d.size() << " instances, " << d.target_names().size() << " targets\n";
  print_distribution(std::cout, d, LabelKind::Stance, "stance");
  print_distribution(std::cout, d, LabelKind::Opinion, "opinion towards");
  print_distribution(std::cout, d, LabelKind::Sentiment, "sentiment");
  print_matrix(std::cout, cross_distribution(d, LabelKind::Stance, LabelKind::Opinion),
               "opinion towards by stance");
}

void cmd_split(const RunConfig& rc) {
  auto d = restrict(load_dataset(need(rc.dataset_path, "--dataset"), rc), rc);
  auto [train, test] = split_chronological(d, rc.train_fraction);
  auto a = open_out(out_file(rc, "train.tsv"));
  write_tsv(a, train);
  auto b = open_out(out_file(rc, "test.tsv"));
  write_tsv(b, test);
  std::cout << "train " << train.size() << "  test " << test.size() << '\n';
  print_distribution(std::cout, train, LabelKind::Stance, "train stance");
  print_distribution(std::cout, test, LabelKind::Stance, "test stance");
}

void cmd_train(const RunConfig& rc, const Flags& f) {
  auto train = restrict(load_dataset(need(rc.train_path, "--train"), rc), rc);
  if (f.augment) {
    ParseOptions opts;
    opts.catalog = load_target_catalog(rc);
    auto pseudo = read_dataset(*f.augment, opts);
    if (rc.target) pseudo = pseudo.only_target(*rc.target);
    train = augment_training(train, pseudo);
    std::cerr << "augmented with " << pseudo.size() << " pseudo-labeled instances\n";
  }
  const auto& fc = rc.task == Task::Stance ? rc.stance_features : rc.sentiment_features;
  const auto resources = build_resources(rc, fc, train.target_names());

  std::vector<TargetModel> models;
  if (rc.task == Task::Stance) {
    for (auto& [t, m] : train_stance(train, fc, resources, rc.train)) models.push_back(std::move(m));
  } else {
    models.push_back(train_sentiment(train, fc, resources, rc.train));
  }
  std::vector<const TargetModel*> ptrs;
  auto cv = open_out(out_file(rc, "cv_report.tsv"));
  cv << "scope\tC\tmean_f_average\tselected\n";
  for (const auto& m : models) {
    ptrs.push_back(&m);
    std::cerr << "[train] " << m.scope << ": C=" << strings::format_double(m.C)
              << " features=" << m.space.size() << '\n';
    if (m.cv)
      for (const auto& [c, s] : m.cv->scores)
        cv << m.scope << '\t' << strings::format_double(c) << '\t' << strings::format_double(s)
           << '\t' << (c == m.C ? "yes" : "no") << '\n';
  }
  save_model_dir((fs::path(rc.out_dir) / "models").string(), ptrs);
  std::cout << models.size() << " model file(s) in " << (fs::path(rc.out_dir) / "models").string()
            << '\n';
}

std::string models_dir(const RunConfig& rc, const Flags& f) {
  return f.models ? *f.models : (fs::path(rc.out_dir) / "models").string();
}

FeatureConfig union_features(const std::vector<TargetModel>& models) {
  FeatureConfig u = models.front().features;
  for (const auto& m : models) {
    const auto& c = m.features;
    u.word_ngrams |= c.word_ngrams;
    u.char_ngrams |= c.char_ngrams;
    u.sentiment_lexicons |= c.sentiment_lexicons;
    u.target_presence |= c.target_presence;
    u.pos_counts |= c.pos_counts;
    u.encodings |= c.encodings;
    u.associations |= c.associations;
    u.embeddings |= c.embeddings;
  }
  return u;
}

void cmd_predict(const RunConfig& rc, const Flags& f) {
  auto test = restrict(load_dataset(need(rc.test_path, "--test"), rc), rc);
  const auto models = load_model_dir(models_dir(rc, f));
  const auto resources = build_resources(rc, union_features(models), test.target_names());
  const auto pred = predict_routed(models, test, resources);
  write_predictions(out_file(rc, "predictions.tsv"), test, pred);
  std::cout << pred.size() << " predictions\n";
}

void cmd_evaluate(const RunConfig& rc, const Flags& f) {
  auto test = restrict(load_dataset(need(rc.test_path, "--test"), rc), rc);
  const auto kind = rc.task == Task::Stance ? LabelKind::Stance : LabelKind::Sentiment;
  std::vector<std::string> pred;
  if (f.predictions) {
    pred = read_predictions(*f.predictions, test);
  } else {
    const auto models = load_model_dir(models_dir(rc, f));
    const auto resources = build_resources(rc, union_features(models), test.target_names());
    pred = predict_routed(models, test, resources);
    write_predictions(out_file(rc, "predictions.tsv"), test, pred);
  }
  write_reports(rc, "report", test, pred, kind);
}

void cmd_benchmark(const RunConfig& rc) {
  const auto& name = rc.benchmark;
  const auto kind = rc.task == Task::Stance ? LabelKind::Stance : LabelKind::Sentiment;
  if (name == "shared-task") {
    std::cout << "reference only (" << kSharedTaskWinner.name << ")\n";
    for (std::size_t i = 0; i < kReleasedTargets.size(); ++i)
      std::cout << "  " << kReleasedTargets[i] << '\t' << pct(kSharedTaskWinner.per_target[i]) << '\n';
    std::cout << "F-macroT " << pct(kSharedTaskWinner.f_macroT) << "  F-microT "
              << pct(kSharedTaskWinner.f_microT) << '\n';
    return;
  }
  auto test = restrict(load_dataset(need(rc.test_path, "--test"), rc), rc);
  nlohmann::json extra = {{"benchmark", name}};
  std::vector<std::string> pred;
  if (name == "majority") {
    auto train = restrict(load_dataset(need(rc.train_path, "--train"), rc), rc);
    pred = majority_classifier(train, test, kind);
  } else if (name == "random") {
    pred = random_classifier(test.size(), rc.seed, kind);
    extra["seed"] = rc.seed;
    const auto ex = random_expectation(test, 1000, rc.seed, kind);
    auto& e = extra["expectation"];
    e["draws"] = ex.draws;
    e["f_macroT"] = ex.f_macroT;
    e["f_microT"] = ex.f_microT;
    for (const auto& t : ex.per_target) e["per_target"][t.target] = t.f_average;
    std::cout << "expected over " << ex.draws << " draws: F-macroT " << pct(100 * ex.f_macroT)
              << "  F-microT " << pct(100 * ex.f_microT) << '\n';
  } else if (name == "oracle-sentiment" || name == "oracle-sentiment-target") {
    if (rc.task != Task::Stance) throw ConfigError("oracle benchmarks predict stance");
    auto r = name == "oracle-sentiment" ? oracle_sentiment(test) : oracle_sentiment_target(test);
    pred = r.predictions;
    for (const auto& [t, m] : r.to_target) extra["to_target_mapping"][t] = to_string(m);
    for (const auto& [t, m] : r.to_other) extra["to_other_mapping"][t] = to_string(m);
  } else if (name == "hashtag") {
    std::ifstream in(need(rc.si_hashtags, "--si-hashtags"));
    if (!in) throw ConfigError("cannot open '" + rc.si_hashtags + "'");
    auto map = flatten_si(load_si_hashtags(in), rc.target);
    auto r = hashtag_stance_classifier(test, map);
    if (r.n == 0) throw DataError("no test instance carries a query hashtag and a favor/against label");
    nlohmann::json j = {{"benchmark", name}, {"n", r.n}, {"correct", r.correct}, {"accuracy", r.accuracy}};
    open_out(out_file(rc, "benchmark-hashtag.json")) << j.dump(2) << '\n';
    std::cout << "accuracy " << pct(100 * r.accuracy) << " over " << r.n << " instances\n";
    return;
  } else {
    throw ConfigError("unknown benchmark '" + name + "'");
  }
  write_predictions(out_file(rc, "benchmark-" + name + "-predictions.tsv"), test, pred);
  write_reports(rc, "benchmark-" + name, test, pred, kind, extra);
}

void cmd_distant_hashtags(const RunConfig& rc) {
  auto train = restrict(load_dataset(need(rc.train_path, "--train"), rc), rc);
  FeatureResources res = build_resources(rc, FeatureConfig::parse("word-ngrams"), {});
  auto stats_out = open_out(out_file(rc, "hashtag_stats.tsv"));
  auto si_out = open_out(out_file(rc, "si_hashtags.tsv"));
  stats_out << "target\thashtag\tfreq\tfavor\tagainst\tneither\tH\targmax\n";
  std::map<std::string, SiHashtagMap> si;
  for (const auto& t : train.target_names()) {
    auto subset = train.only_target(t);
    for (const auto& s : hashtag_predictiveness(subset, res.tokenizer))
      stats_out << t << '\t' << s.hashtag << '\t' << s.freq << '\t' << s.favor << '\t'
                << s.against << '\t' << s.neither << '\t' << strings::format_double(s.predictiveness)
                << '\t' << to_string(s.argmax_label) << '\n';
    si[t] = auto_si_hashtags(subset, rc.auto_min_freq, rc.auto_threshold, res.tokenizer);
    for (const auto& [tag, st] : si[t]) si_out << t << '\t' << tag << '\t' << to_string(st) << '\n';
    std::cout << t << '\t' << si[t].size() << " SI hashtags\n";
  }
  if (!rc.si_hashtags.empty()) {
    std::ifstream in(rc.si_hashtags);
    if (!in) throw ConfigError("cannot open '" + rc.si_hashtags + "'");
    si = load_si_hashtags(in);
    std::cout << "using manual SI hashtags from " << rc.si_hashtags << '\n';
  }
  if (rc.domain_corpus.empty()) return;
  std::ifstream in(rc.domain_corpus);
  if (!in) throw ConfigError("cannot open domain corpus '" + rc.domain_corpus + "'");
  const auto corpus = load_domain_corpus(in);
  Dataset all;
  for (const auto& t : train.target_names()) {
    auto it = si.find(t);
    if (it == si.end() || it->second.empty()) continue;
    auto pseudo = pseudo_label(corpus, it->second, t, res.tokenizer);
    std::cout << t << '\t' << pseudo.size() << " pseudo-labeled tweets\n";
    all = concat(all, pseudo);
  }
  auto out = open_out(out_file(rc, "pseudo.tsv"));
  write_tsv(out, all);
}

void cmd_distant_associations(const RunConfig& rc, const Flags& f) {
  auto corpus = restrict(load_dataset(need(rc.dataset_path, "--dataset"), rc), rc);
  const auto kind = parse_association_kind(f.kind);
  FeatureResources res = build_resources(rc, FeatureConfig::parse("word-ngrams"), {});
  auto write = [&](const Dataset& d, const std::string& name) {
    auto table = build_association_table(d, kind, rc.pmi_min_freq, res.tokenizer);
    auto out = open_out(out_file(rc, name));
    save_association_table(out, table);
    std::cout << name << '\t' << table.scores.size() << " words\n";
  };
  const std::string k(to_string(kind));
  if (f.per_target && kind == AssociationKind::WordStance) {
    for (const auto& t : corpus.target_names()) write(corpus.only_target(t), "assoc-" + k + "-" + slug(t) + ".tsv");
  } else {
    write(corpus, "assoc-" + k + ".tsv");
  }
}

std::vector<std::vector<std::string>> embedding_corpus(const std::vector<DomainTweet>& tweets,
                                                       const Tokenizer& tok) {
  std::vector<std::vector<std::string>> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) out.push_back(embedding_words(tok.tokenize(t.text)));
  return out;
}

void cmd_embed_train(const RunConfig& rc) {
  std::ifstream in(need(rc.domain_corpus, "--domain-corpus"));
  if (!in) throw ConfigError("cannot open domain corpus '" + rc.domain_corpus + "'");
  FeatureResources res = build_resources(rc, FeatureConfig::parse("word-ngrams"), {});
  const auto corpus = embedding_corpus(load_domain_corpus(in), res.tokenizer);
  SkipGramTrace trace;
  auto table = train_skipgram(corpus, rc.skipgram, &trace);
  for (std::size_t e = 0; e < trace.epoch_loss.size(); ++e)
    std::cerr << "[embed] epoch " << e + 1 << " loss " << strings::format_double(trace.epoch_loss[e]) << '\n';
  auto out = open_out(out_file(rc, "embeddings.txt"));
  save_embeddings(out, table);
  std::cout << table.size() << " words x " << table.dim() << '\n';
}

void cmd_embed_load(const RunConfig& rc) {
  std::ifstream in(need(rc.embeddings_path, "--vectors"));
  if (!in) throw ConfigError("cannot open '" + rc.embeddings_path + "'");
  const auto table = load_embeddings(in);
  std::cout << table.size() << " words x " << table.dim() << '\n';
}

void cmd_export_viz(const RunConfig& rc) {
  std::vector<Dataset> keep;
  std::vector<VizPart> parts;
  keep.reserve(3);
  auto add = [&](const std::string& path, const char* split) {
    keep.push_back(restrict(load_dataset(path, rc), rc));
    parts.push_back({split, &keep.back()});
  };
  if (!rc.train_path.empty()) add(rc.train_path, "train");
  if (!rc.test_path.empty()) add(rc.test_path, "test");
  if (parts.empty()) add(need(rc.dataset_path, "--train/--test or --dataset"), "all");
  auto out = open_out(out_file(rc, "viz.json"));
  out << export_viz(parts).dump(1) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stance and sentiment classification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("--task", f.task, "stance or sentiment");
  app.add_option("--features", f.features, "feature families, e.g. ngrams,target");
  app.add_option("--benchmark", f.benchmark,
                 "majority, random, oracle-sentiment, oracle-sentiment-target, hashtag, shared-task");
  app.add_option("--seed", f.seed, "seed for every stochastic step");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--target", f.target, "restrict to one target");
  app.add_option("--train", f.train, "labeled training file");
  app.add_option("--test", f.test, "labeled test file");
  app.add_option("--dataset", f.dataset, "labeled dataset file");
  app.add_option("--predictions", f.predictions, "ID/Target/Prediction file");
  app.add_option("--models", f.models, "model directory");
  app.add_option("--lexicons", f.lexicons, "lexicon manifest");
  app.add_option("--targets-file", f.targets, "target alias file");
  app.add_option("--pos", f.pos, "POS sidecar file");
  app.add_option("--domain-corpus", f.domain_corpus, "unlabeled tweets, one per line");
  app.add_option("--si-hashtags", f.si_hashtags, "manual stance-indicative hashtags");
  app.add_option("--vectors", f.vectors, "word vectors file");
  app.add_option("--C-grid", f.C_grid, "comma-separated C values");

  auto* ingest = app.add_subcommand("ingest", "parse and normalize a dataset, print distributions");
  auto* split = app.add_subcommand("split", "chronological train/test split");
  split->add_option("--fraction", f.fraction, "train fraction")->each([&](const std::string&) {
    f.fraction_set = true;
  });
  auto* train = app.add_subcommand("train", "train stance or sentiment models");
  train->add_option("--augment", f.augment, "pseudo-labeled instances to add");
  auto* predict = app.add_subcommand("predict", "predict with saved models");
  auto* evaluate = app.add_subcommand("evaluate", "score predictions or saved models");
  auto* benchmark = app.add_subcommand("benchmark", "run a benchmark classifier");
  auto* hashtags = app.add_subcommand("distant-hashtags", "hashtag predictiveness, SI hashtags, pseudo-labels");
  hashtags->add_option("--min-freq", f.min_freq, "minimum hashtag frequency");
  hashtags->add_option("--threshold", f.threshold, "predictiveness must exceed this");
  auto* assoc = app.add_subcommand("distant-associations", "PMI association tables");
  assoc->add_option("--kind", f.kind, "word-stance or word-target");
  assoc->add_flag("--per-target", f.per_target, "one word-stance table per target");
  auto* embed_train = app.add_subcommand("embed-train", "skip-gram embeddings from a domain corpus");
  auto* embed_load = app.add_subcommand("embed-load", "validate a word vectors file");
  auto* viz = app.add_subcommand("export-viz", "dataset explorer JSON export");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const auto rc = resolve(f);
    if (ingest->parsed()) cmd_ingest(rc);
    else if (split->parsed()) cmd_split(rc);
    else if (train->parsed()) cmd_train(rc, f);
    else if (predict->parsed()) cmd_predict(rc, f);
    else if (evaluate->parsed()) cmd_evaluate(rc, f);
    else if (benchmark->parsed()) cmd_benchmark(rc);
    else if (hashtags->parsed()) cmd_distant_hashtags(rc);
    else if (assoc->parsed()) cmd_distant_associations(rc, f);
    else if (embed_train->parsed()) cmd_embed_train(rc);
    else if (embed_load->parsed()) cmd_embed_load(rc);
    else if (viz->parsed()) cmd_export_viz(rc);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
