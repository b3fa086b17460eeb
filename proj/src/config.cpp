#include "stance/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <filesystem>
#include <functional>
#include <map>

#include "stance/error.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace fs = std::filesystem;

void RunConfig::propagate_seed() {
  train.seed = seed;
  skipgram.seed = seed;
}

RunConfig load_run_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config '" + path + "': " + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }
  const fs::path base = fs::path(path).parent_path();
  RunConfig c;

  auto file = [&](std::string& dst) {
    return [&dst, &base](const std::string& v) {
      fs::path p(v);
      dst = (p.is_relative() && !base.empty() ? base / p : p).string();
    };
  };
  auto text = [](std::string& dst) { return [&dst](const std::string& v) { dst = v; }; };
  auto real = [](double& dst, const char* key) {
    return [&dst, key](const std::string& v) {
      auto d = strings::parse_double(v);
      if (!d) throw ConfigError(std::string("bad number for ") + key + ": '" + v + "'");
      dst = *d;
    };
  };
  auto integer = [](auto& dst, const char* key) {
    return [&dst, key](const std::string& v) {
      auto d = strings::parse_int(v);
      if (!d || *d < 0) throw ConfigError(std::string("bad integer for ") + key + ": '" + v + "'");
      dst = static_cast<std::remove_reference_t<decltype(dst)>>(*d);
    };
  };

  std::map<std::string, std::function<void(const std::string&)>> keys = {
      {"data.train", file(c.train_path)},
      {"data.test", file(c.test_path)},
      {"data.dataset", file(c.dataset_path)},
      {"data.train_fraction", real(c.train_fraction, "train_fraction")},
      {"data.targets", file(c.targets_path)},
      {"data.pos", file(c.pos_path)},
      {"data.emoticons_pos", file(c.emoticons_pos_path)},
      {"data.emoticons_neg", file(c.emoticons_neg_path)},
      {"lexicons.manifest", file(c.lexicon_manifest)},
      {"features.stance", [&](const std::string& v) { c.stance_features = FeatureConfig::parse(v); }},
      {"features.sentiment", [&](const std::string& v) { c.sentiment_features = FeatureConfig::parse(v); }},
      {"train.C", real(c.train.C, "C")},
      {"train.C_grid",
       [&](const std::string& v) {
         c.train.C_grid.clear();
         for (const auto& part : strings::split(v, ',')) {
           if (strings::trim(part).empty()) continue;
           auto d = strings::parse_double(strings::trim(part));
           if (!d) throw ConfigError("bad C_grid value '" + part + "'");
           c.train.C_grid.push_back(*d);
         }
       }},
      {"train.max_epochs", integer(c.train.max_epochs, "max_epochs")},
      {"train.tolerance", real(c.train.tolerance, "tolerance")},
      {"train.folds", integer(c.train.folds, "folds")},
      {"distant.domain_corpus", file(c.domain_corpus)},
      {"distant.si_hashtags", file(c.si_hashtags)},
      {"distant.auto_min_freq", integer(c.auto_min_freq, "auto_min_freq")},
      {"distant.auto_threshold", real(c.auto_threshold, "auto_threshold")},
      {"distant.pmi_min_freq", integer(c.pmi_min_freq, "pmi_min_freq")},
      {"distant.word_stance", file(c.word_stance_tables)},
      {"distant.word_target", file(c.word_target_table)},
      {"embeddings.vectors", file(c.embeddings_path)},
      {"embeddings.dim", integer(c.skipgram.dim, "dim")},
      {"embeddings.window", integer(c.skipgram.window, "window")},
      {"embeddings.min_count", integer(c.skipgram.min_count, "min_count")},
      {"embeddings.negatives", integer(c.skipgram.negatives, "negatives")},
      {"embeddings.epochs", integer(c.skipgram.epochs, "epochs")},
      {"embeddings.learning_rate", real(c.skipgram.learning_rate, "learning_rate")},
      {"run.task", [&](const std::string& v) { c.task = parse_task(v); }},
      {"run.out", file(c.out_dir)},
      {"run.seed", integer(c.seed, "seed")},
      {"run.target", [&](const std::string& v) { c.target = v; }},
      {"run.benchmark", text(c.benchmark)},
  };

  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config '" + path + "': key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      const auto full = section + "." + key;
      auto it = keys.find(full);
      if (it == keys.end()) throw ConfigError("config '" + path + "': unknown key '" + full + "'");
      it->second(std::string(strings::trim(value.data())));
    }
  }
  c.propagate_seed();
  c.train.validate();
  c.skipgram.validate();
  return c;
}

}  // namespace stance
