#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stance {

struct SkipGramConfig {
  int dim = 100;
  int window = 10;
  int min_count = 2;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  std::uint64_t seed = 1;

  void validate() const;
};

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<std::size_t> find(const std::string& word) const;
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * dim_, dim_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * dim_, dim_}; }

  // Throws DataError on duplicate words, wrong length, or non-finite values.
  std::size_t add(std::string word, std::span<const double> values);

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.dim_ == b.dim_ && a.words_ == b.words_ && a.data_ == b.data_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

struct SkipGramTrace {
  // Mean negative-sampling loss per (center, context) pair, one per epoch.
  std::vector<double> epoch_loss;
  std::size_t vocab_size = 0;
};

// Skip-gram with negative sampling over pre-tokenized tweets. Windows never
// cross tweet boundaries. Deterministic for a given seed.
EmbeddingTable train_skipgram(const std::vector<std::vector<std::string>>& corpus,
                              const SkipGramConfig& config, SkipGramTrace* trace = nullptr);

// "word v1 ... vd" lines with an optional leading "count dim" header.
EmbeddingTable load_embeddings(std::istream& in);
// Writes the header form; load_embeddings reads it back exactly.
void save_embeddings(std::ostream& out, const EmbeddingTable& table);

// Componentwise mean over in-vocabulary words (with multiplicity); zero vector
// when none is in the vocabulary.
std::vector<double> tweet_embedding(const std::vector<std::string>& words,
                                    const EmbeddingTable& table);

// Negative-sampling objective for one center word, its observed context word
// and sampled noise words:
//   -log sigmoid(context . center) - sum_k log sigmoid(-noise_k . center)
double sgns_loss(std::span<const double> center, std::span<const double> context,
                 const std::vector<std::span<const double>>& noise);

struct SgnsGradient {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> noise;
};

SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> context,
                           const std::vector<std::span<const double>>& noise);

}  // namespace stance
