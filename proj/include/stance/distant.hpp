#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stance/corpus.hpp"
#include "stance/tokenize.hpp"

namespace stance {

// Hashtags are keyed by their lowercased surface, '#' included.
using SiHashtagMap = std::map<std::string, Stance>;

struct HashtagStats {
  std::string hashtag;
  std::size_t freq = 0;  // labeled tweets containing the hashtag, any label
  std::size_t favor = 0;
  std::size_t against = 0;
  std::size_t neither = 0;
  // max over {favor, against} of label freq / freq.
  double predictiveness = 0;
  // Against on a favor/against tie.
  Stance argmax_label = Stance::Against;
};

// One entry per distinct hashtag in the stance-labeled tweets, sorted by
// descending freq then hashtag. Unlabeled instances are ignored.
std::vector<HashtagStats> hashtag_predictiveness(const Dataset& labeled,
                                                 const Tokenizer& tokenizer = {});

// Hashtags with freq >= min_freq and predictiveness strictly above threshold.
SiHashtagMap auto_si_hashtags(const Dataset& labeled, std::size_t min_freq = 5,
                              double threshold = 0.6, const Tokenizer& tokenizer = {});

// Per-target manual lists: "target<TAB>#hashtag<TAB>favor|against" lines.
std::map<std::string, SiHashtagMap> load_si_hashtags(std::istream& in);

struct DomainTweet {
  std::optional<std::string> target;
  std::string text;
};

// One tweet per line, optionally "target<TAB>tweet".
std::vector<DomainTweet> load_domain_corpus(std::istream& in);

// Labels domain tweets of `target` (unprefixed tweets count for every target)
// that carry SI hashtags of exactly one stance; those hashtags are removed from
// the text. Conflicting or hashtag-free tweets are skipped.
Dataset pseudo_label(std::span<const DomainTweet> corpus, const SiHashtagMap& si_map,
                     const std::string& target, const Tokenizer& tokenizer = {});

enum class AssociationKind { WordStance, WordTarget };

std::string_view to_string(AssociationKind k);
AssociationKind parse_association_kind(std::string_view s);

struct CorpusCounts {
  std::size_t total_tokens = 0;
  std::map<std::string, std::size_t> word;
  std::map<std::string, std::size_t> label;  // tokens inside tweets of the label
  std::map<std::pair<std::string, std::string>, std::size_t> joint;
};

struct AssociationTable {
  AssociationKind kind = AssociationKind::WordStance;
  std::size_t min_word_freq = 5;
  std::vector<std::string> labels;
  // word -> label -> PMI (log base 2).
  std::map<std::string, std::map<std::string, double>> scores;
  CorpusCounts counts;

  std::optional<double> pmi(const std::string& word, const std::string& label) const;
};

// Word units are gram_surfaces of each tokenized tweet. Word-stance labels are
// the instances' stance labels, word-target labels their target names;
// instances without the label are skipped. Throws DataError on an empty
// corpus.
AssociationTable build_association_table(const Dataset& corpus, AssociationKind kind,
                                         std::size_t min_word_freq = 5,
                                         const Tokenizer& tokenizer = {});

// "kind<TAB>word<TAB>label<TAB>pmi" lines.
void save_association_table(std::ostream& out, const AssociationTable& table);
// Scores only; counts stay empty.
AssociationTable load_association_table(std::istream& in);

// Per table label: "asc:<name>:<label>:sum|min|max" over the tweet's in-table
// word occurrences; zero when none is in the table.
std::vector<std::pair<std::string, double>> association_features(const std::vector<Token>& tokens,
                                                                 const AssociationTable& table,
                                                                 const std::string& name);

// Base instances keep their provenance; pseudo instances are flagged Pseudo.
Dataset augment_training(const Dataset& base, const Dataset& pseudo);

}  // namespace stance
