#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stance/corpus.hpp"
#include "stance/distant.hpp"

namespace stance {

struct ClassScore {
  std::string label;
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 0, recall = 0, f1 = 0;
};

// 0/0 precision, recall or F is 0. Throws DataError on a length mismatch.
ClassScore f1(std::span<const std::string> gold, std::span<const std::string> pred,
              const std::string& cls);
// Mean of the F1 of the two main classes.
double f_average(std::span<const std::string> gold, std::span<const std::string> pred,
                 const std::string& first, const std::string& second);

struct MainClasses {
  std::string first, second;
};
MainClasses main_classes(LabelKind kind);  // favor/against or positive/negative

// Pooled over all instances.
double f_microT(std::span<const std::string> gold, std::span<const std::string> pred,
                const MainClasses& main);
// Unweighted mean of per-target f_average, targets in order of first
// appearance.
double f_macroT(std::span<const std::string> gold, std::span<const std::string> pred,
                std::span<const std::string> targets, const MainClasses& main);

struct TargetScore {
  std::string target;
  std::size_t n = 0;
  double f_average = 0;
  double accuracy = 0;
};

struct EvalReport {
  MainClasses main;
  std::size_t n = 0;
  std::vector<ClassScore> classes;  // pooled, one per label of the kind
  double f_average = 0;             // pooled; equals f_microT
  double f_macroT = 0;
  double f_microT = 0;
  double accuracy = 0;
  std::vector<TargetScore> per_target;
};

EvalReport evaluate(std::span<const std::string> gold, std::span<const std::string> pred,
                    std::span<const std::string> targets, LabelKind kind);

// Gold labels of a kind; throws DataError naming an unlabeled instance.
std::vector<std::string> gold_labels(const Dataset& data, LabelKind kind);
std::vector<std::string> instance_targets(const Dataset& data);

// Per-target modal training label (ties: alphabetical) for every test
// instance. Throws DataError for a test target absent from train.
std::vector<std::string> majority_classifier(const Dataset& train, const Dataset& test,
                                             LabelKind kind = LabelKind::Stance);
// Uniform over the labels of the kind.
std::vector<std::string> random_classifier(std::size_t n, std::uint64_t seed,
                                           LabelKind kind = LabelKind::Stance);

// Mean scores of `draws` random_classifier runs with seeds seed, seed+1, ...
struct RandomExpectation {
  std::size_t draws = 0;
  double f_macroT = 0;
  double f_microT = 0;
  std::vector<TargetScore> per_target;  // f_average and accuracy are means
};
RandomExpectation random_expectation(const Dataset& test, std::size_t draws, std::uint64_t seed,
                                     LabelKind kind = LabelKind::Stance);

// Neither sentiment always maps to neither stance.
enum class SentimentMapping { PositiveFavor, PositiveAgainst, AllNeither };
std::string_view to_string(SentimentMapping m);
Stance map_sentiment(Sentiment s, SentimentMapping m);

struct OracleResult {
  // Mapping applied to tweets whose opinion is towards the target (all
  // tweets for the sentiment-only oracle).
  std::map<std::string, SentimentMapping> to_target;
  // Mapping applied to tweets whose opinion is towards another entity.
  std::map<std::string, SentimentMapping> to_other;
  std::vector<std::string> predictions;
  EvalReport report;
};

// Per target, the polarity mapping with the higher f_average (ties: the
// positive->favor mapping).
OracleResult oracle_sentiment(const Dataset& test);
// Per target, the jointly best (to-target mapping, to-other mapping) pair;
// tweets with no opinion target get neither.
OracleResult oracle_sentiment_target(const Dataset& test);

struct HashtagResult {
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy = 0;
};

// Over instances with a query hashtag and a favor/against gold label; the
// prediction is the mapped stance of the query hashtag. Throws DataError
// naming a query hashtag missing from the map.
HashtagResult hashtag_stance_classifier(const Dataset& test, const SiHashtagMap& map);

struct SubsetReports {
  std::optional<EvalReport> to_target;
  std::optional<EvalReport> to_other;
};

// Instances without an opinion annotation are ignored; an empty subset has no
// report.
SubsetReports evaluate_by_opinion_subset(const Dataset& data, std::span<const std::string> pred,
                                         LabelKind kind);

// "key<TAB>value" lines, scores as fractions with four decimals.
void write_report_text(std::ostream& out, const EvalReport& r, std::string_view prefix = {});
nlohmann::json report_json(const EvalReport& r);

// Targets of the released dataset, in the column order of its result tables.
inline constexpr std::array<std::string_view, 5> kReleasedTargets = {
    "Atheism", "Climate Change is a Real Concern", "Feminist Movement", "Hillary Clinton",
    "Legalization of Abortion"};

struct ReferenceScores {
  std::string_view name;
  std::array<double, 5> per_target;  // percent, kReleasedTargets order
  double f_macroT;
  double f_microT;
};

// Best system of the 2016 shared task on this data; reported, not
// reproduced.
inline constexpr ReferenceScores kSharedTaskWinner = {
    "shared-task-winner", {61.4, 41.6, 62.1, 57.7, 57.3}, 56.0, 67.8};

}  // namespace stance
