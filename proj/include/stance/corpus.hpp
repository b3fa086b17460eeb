#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stance {

enum class Stance { Favor, Against, Neither };
enum class Sentiment { Positive, Negative, Neither };
enum class OpinionTowards { Target, Other, NoOne };

inline constexpr std::array<Stance, 3> kAllStances = {Stance::Favor, Stance::Against,
                                                      Stance::Neither};
inline constexpr std::array<Sentiment, 3> kAllSentiments = {
    Sentiment::Positive, Sentiment::Negative, Sentiment::Neither};
inline constexpr std::array<OpinionTowards, 3> kAllOpinions = {
    OpinionTowards::Target, OpinionTowards::Other, OpinionTowards::NoOne};

// Canonical lowercase names: "favor", "against", "neither", "positive",
// "negative", "target", "other", "no one".
std::string_view to_string(Stance s);
std::string_view to_string(Sentiment s);
std::string_view to_string(OpinionTowards o);

// Case-insensitive. Accepts the shared-task spellings (FAVOR/AGAINST/NONE,
// pos/neg/other) and the numbered opinion options of the released files.
// Throws DataError naming the offending string.
Stance parse_stance(std::string_view s);
Sentiment parse_sentiment(std::string_view s);
OpinionTowards parse_opinion(std::string_view s);

// Folds the five raw sentiment-question options into three classes:
// 1 -> Positive, 2|3 -> Negative, 4|5 -> Neither.
Sentiment collapse_sentiment_option(int raw);

struct TargetSpec {
  std::string name;
  // Case-insensitive; each is matched with or without a leading '#'.
  std::vector<std::string> aliases;
};

// Aliases for a target name: the documented lists for Hillary Clinton and
// Legalization of Abortion, otherwise the content words of the name.
TargetSpec default_target_spec(std::string_view name);

// "name<TAB>alias,alias,..." per line; '#' starts a comment line.
std::vector<TargetSpec> load_target_specs(std::istream& in);

enum class Provenance { Gold, Pseudo };

struct Instance {
  std::string id;
  std::string target;
  std::string text;
  std::optional<Stance> stance;
  std::optional<Sentiment> sentiment;
  std::optional<OpinionTowards> opinion_towards;
  std::optional<std::string> query_hashtag;
  std::optional<std::int64_t> timestamp;
  Provenance source = Provenance::Gold;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Dataset {
  std::vector<Instance> instances;
  std::vector<TargetSpec> targets;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }

  // Target names in order of first appearance among instances.
  std::vector<std::string> target_names() const;
  const TargetSpec* find_target(std::string_view name) const;
  // Same targets, only the instances of `name`.
  Dataset only_target(std::string_view name) const;
};

// Header names matched case-insensitively.
struct ColumnSchema {
  std::string id = "ID";
  std::string target = "Target";
  std::string text = "Tweet";
  std::string stance = "Stance";
  std::string opinion = "Opinion towards";
  std::string sentiment = "Sentiment";
  std::string hashtag = "Hashtag";
  std::string timestamp = "Timestamp";
};

struct ParseOptions {
  ColumnSchema schema;
  char delimiter = '\t';
  // Quoted fields (RFC 4180 style). Always on for ',' delimiters.
  bool quoted = false;
  // Alias lists for known targets; other targets get default_target_spec.
  std::vector<TargetSpec> catalog;
};

Dataset parse_tsv(std::istream& in, const ParseOptions& options = {});

// Dispatches on extension: ".csv" is comma-separated and quoted, anything else
// is TSV.
Dataset read_dataset(const std::string& path, const ParseOptions& options = {});

// Writes every column the parser understands; parse_tsv(write_tsv(d)) == d.
void write_tsv(std::ostream& out, const Dataset& dataset);

Dataset concat(const Dataset& a, const Dataset& b);

// First floor(train_fraction * N) instances (chronological order) go to train.
std::pair<Dataset, Dataset> split_chronological(const Dataset& dataset,
                                                double train_fraction = 0.7);

struct AnnotationRecord {
  std::string instance_id;
  std::vector<std::string> responses;
};

// Modal label when its share reaches `threshold`; ties for the mode yield
// nothing.
std::optional<std::string> aggregate_annotations(const AnnotationRecord& record,
                                                 double threshold = 0.6);

// Mean over records of (modal count / responses).
double inter_annotator_agreement(std::span<const AnnotationRecord> records);

enum class LabelKind { Stance, Sentiment, Opinion };

LabelKind parse_label_kind(std::string_view s);

// Label name of the requested kind, or nothing when unannotated.
std::optional<std::string> label_of(const Instance& inst, LabelKind kind);

// Canonical label names of a kind, in display order.
std::vector<std::string> label_names(LabelKind kind);

struct Distribution {
  std::size_t total = 0;
  // Display order of label_names(kind).
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::vector<std::pair<std::string, double>> percentages;

  double percent(std::string_view label) const;
};

Distribution class_distribution(const Dataset& dataset, LabelKind kind,
                                std::optional<std::string_view> target = std::nullopt);

// Rows are `row_kind` labels, columns `col_kind` labels; each row holds
// percentages of that row's instances (sums to 100, or all zero when the row
// is empty). Instances missing either label are skipped.
struct CrossMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::vector<double>> percentages;

  double percent(std::string_view row, std::string_view col) const;
};

CrossMatrix cross_distribution(const Dataset& dataset, LabelKind row_kind, LabelKind col_kind);

}  // namespace stance
