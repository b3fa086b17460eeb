#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stance/corpus.hpp"
#include "stance/distant.hpp"
#include "stance/embeddings.hpp"
#include "stance/lexicons.hpp"
#include "stance/sparse.hpp"
#include "stance/tokenize.hpp"

namespace stance {

using FeatureMap = std::map<std::string, double>;

struct FeatureConfig {
  bool word_ngrams = true;
  bool char_ngrams = true;
  bool sentiment_lexicons = false;
  bool target_presence = false;
  bool pos_counts = false;
  bool encodings = false;
  bool associations = false;
  bool embeddings = false;

  // Comma-separated family names. "ngrams" turns on both word and character
  // n-grams; "word-ngrams" / "char-ngrams" select one. Other names:
  // sentiment, target, pos, encodings, associations, embeddings.
  static FeatureConfig parse(std::string_view list);
  // Canonical list accepted by parse.
  std::string to_string() const;
  // Throws ConfigError when nothing is enabled.
  void validate() const;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

struct AssociationResource {
  std::string name;  // feature namespace, e.g. "word-stance"
  AssociationTable table;
  // Applies only to instances of this target when set.
  std::optional<std::string> target;
};

struct FeatureResources {
  // Keeps a loaded emoticon inventory alive for `tokenizer`.
  std::shared_ptr<const EmoticonInventory> emoticons;
  Tokenizer tokenizer;
  std::vector<SentimentLexicon> lexicons;
  // Alias lists; targets missing here fall back to default_target_spec.
  std::vector<TargetSpec> targets;
  // Instance id -> one tag per token.
  std::unordered_map<std::string, std::vector<std::string>> pos_tags;
  std::vector<AssociationResource> associations;
  std::optional<EmbeddingTable> embeddings;

  // Throws ConfigError naming the first enabled family without its resource.
  void check(const FeatureConfig& config) const;
};

// Text and aliases are lowercased with '#' and '-' removed; an alias matches
// where it starts a word ("#HillaryForPrison", "pro-life").
bool mentions_target(std::string_view text, const TargetSpec& spec);

// "pos:<tag>" counts.
FeatureMap pos_count_features(const std::vector<std::string>& tags);

// "id<TAB>tag tag ..." per line.
std::unordered_map<std::string, std::vector<std::string>> load_pos_sidecar(std::istream& in);

// Word units shared by embedding training and tweet averaging.
std::vector<std::string> embedding_words(const std::vector<Token>& tokens);

FeatureMap extract(const Instance& instance, const FeatureConfig& config,
                   const FeatureResources& resources);
std::vector<FeatureMap> extract_all(const Dataset& dataset, const FeatureConfig& config,
                                    const FeatureResources& resources);

class FeatureSpace {
 public:
  FeatureSpace() = default;
  // Builds a frozen space with the given names at indices 0..n-1.
  static FeatureSpace from_names(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool frozen() const { return frozen_; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;

  // Throws std::logic_error once frozen.
  std::size_t add(const std::string& name);
  void freeze() { frozen_ = true; }

  friend bool operator==(const FeatureSpace& a, const FeatureSpace& b) {
    return a.frozen_ == b.frozen_ && a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  bool frozen_ = false;
};

// Union of names in sorted order, frozen.
FeatureSpace fit_space(std::span<const FeatureMap> train);

// Names outside the space are dropped, zero values are not stored. Throws
// std::logic_error on an unfrozen space.
SparseVector vectorize(const FeatureMap& features, const FeatureSpace& space);
std::vector<SparseVector> vectorize_all(std::span<const FeatureMap> features,
                                        const FeatureSpace& space);
FeatureMap devectorize(const SparseVector& v, const FeatureSpace& space);

}  // namespace stance
