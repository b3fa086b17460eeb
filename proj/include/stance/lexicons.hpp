#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stance/tokenize.hpp"

namespace stance {

enum class LexiconFormat {
  TermScore,         // term<TAB>real[<TAB>...]
  TermPolarity,      // term<TAB>positive|negative
  NrcEmotion,        // word<TAB>category<TAB>0|1; positive/negative rows only
  Mpqa,              // "... word1=w ... priorpolarity=p"
  WordListPositive,  // one term per line, score +1; ';' comments
  WordListNegative,  // one term per line, score -1; ';' comments
};

LexiconFormat parse_lexicon_format(std::string_view s);

struct SentimentLexicon {
  std::string name;
  // Lowercased terms; multiword entries are space-joined.
  std::unordered_map<std::string, double> entries;
  bool has_multiword = false;

  std::optional<double> score(const std::string& term) const;
};

// Duplicate terms keep the last entry. Throws DataError with the line number
// for unparseable lines.
SentimentLexicon load_lexicon(std::istream& in, LexiconFormat format, std::string name = {});

// Entries of `more` override those already in `into`.
void merge_lexicon(SentimentLexicon& into, const SentimentLexicon& more);

struct LexiconManifestEntry {
  std::string name;
  std::string path;
  LexiconFormat format;
};

// "name<TAB>path<TAB>format" per line; '#' comments. Relative paths resolve
// against `base_dir`.
std::vector<LexiconManifestEntry> parse_lexicon_manifest(std::istream& in,
                                                         const std::string& base_dir = {});

// Loads every manifest entry; entries sharing a name merge into one lexicon
// (e.g. a positive and a negative word list). Order of first appearance.
std::vector<SentimentLexicon> load_lexicons(const std::string& manifest_path);

struct LexiconStats {
  double count_pos = 0;
  double count_neg = 0;
  double sum_pos = 0;
  double sum_neg = 0;
  double max_score = 0;
  double min_score = 0;
  double last_score = 0;
};

LexiconStats lexicon_stats(const std::vector<Token>& tokens, const SentimentLexicon& lexicon);

// "lex:<name>:<stat>" for the seven statistics, in a fixed order.
std::vector<std::pair<std::string, double>> lexicon_features(const std::vector<Token>& tokens,
                                                             const SentimentLexicon& lexicon);

}  // namespace stance
