#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stance/classifier.hpp"
#include "stance/embeddings.hpp"
#include "stance/features.hpp"

namespace stance {

// INI-style file:
//
//   [data]        train, test, dataset, train_fraction, targets, pos, emoticons_pos,
//                 emoticons_neg
//   [lexicons]    manifest
//   [features]    stance, sentiment            (family lists)
//   [train]       C, C_grid, max_epochs, tolerance, folds
//   [distant]     domain_corpus, si_hashtags, auto_min_freq, auto_threshold,
//                 pmi_min_freq, word_stance, word_target
//   [embeddings]  vectors, dim, window, min_count, negatives, epochs,
//                 learning_rate
//   [run]         task, out, seed, target, benchmark
//
// Relative paths resolve against the config file's directory.
struct RunConfig {
  std::string train_path, test_path, dataset_path;
  double train_fraction = 0.7;
  std::string targets_path, pos_path;
  std::string emoticons_pos_path, emoticons_neg_path;
  std::string lexicon_manifest;

  FeatureConfig stance_features = FeatureConfig::parse("ngrams,target");
  FeatureConfig sentiment_features = FeatureConfig::parse("ngrams,sentiment");
  TrainConfig train;

  std::string domain_corpus, si_hashtags;
  std::size_t auto_min_freq = 5;
  double auto_threshold = 0.6;
  std::size_t pmi_min_freq = 5;
  // Association table files; word_stance may hold "{target}" for per-target
  // tables.
  std::string word_stance_tables, word_target_table;

  std::string embeddings_path;
  SkipGramConfig skipgram;

  Task task = Task::Stance;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::optional<std::string> target;
  std::string benchmark = "majority";

  // Copies the seed into every stochastic component.
  void propagate_seed();
};

// Throws ConfigError for unreadable files, unknown keys or bad values.
RunConfig load_run_config(const std::string& path);

}  // namespace stance
