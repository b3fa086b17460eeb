#include "stance/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

#include "stance/error.hpp"
#include "stance/rng.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// -log sigmoid(x), stable for large |x|.
double neg_log_sigmoid(double x) { return x >= 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x)); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void SkipGramConfig::validate() const {
  if (dim < 1) throw ConfigError("embedding dim must be >= 1");
  if (window < 1) throw ConfigError("embedding window must be >= 1");
  if (min_count < 1) throw ConfigError("embedding min_count must be >= 1");
  if (negatives < 0) throw ConfigError("embedding negatives must be >= 0");
  if (epochs < 1) throw ConfigError("embedding epochs must be >= 1");
  if (!(learning_rate > 0)) throw ConfigError("embedding learning rate must be > 0");
}

std::optional<std::size_t> EmbeddingTable::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t EmbeddingTable::add(std::string word, std::span<const double> values) {
  if (values.size() != dim_)
    throw DataError("embedding for '" + word + "' has " + std::to_string(values.size()) +
                    " values, expected " + std::to_string(dim_));
  for (double v : values)
    if (!std::isfinite(v)) throw DataError("embedding for '" + word + "' is not finite");
  if (index_.count(word)) throw DataError("duplicate embedding word '" + word + "'");
  const std::size_t r = words_.size();
  index_.emplace(word, r);
  words_.push_back(std::move(word));
  data_.insert(data_.end(), values.begin(), values.end());
  return r;
}

double sgns_loss(std::span<const double> center, std::span<const double> context,
                 const std::vector<std::span<const double>>& noise) {
  double loss = neg_log_sigmoid(dot(context, center));
  for (const auto& n : noise) loss += neg_log_sigmoid(-dot(n, center));
  return loss;
}

SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> context,
                           const std::vector<std::span<const double>>& noise) {
  const std::size_t d = center.size();
  SgnsGradient g;
  g.center.assign(d, 0.0);
  // d/dx [-log sigmoid(x)] = sigmoid(x) - 1 ; d/dx [-log sigmoid(-x)] = sigmoid(x)
  const double gp = sigmoid(dot(context, center)) - 1.0;
  g.context.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    g.context[i] = gp * center[i];
    g.center[i] += gp * context[i];
  }
  for (const auto& n : noise) {
    const double gn = sigmoid(dot(n, center));
    std::vector<double> gnv(d);
    for (std::size_t i = 0; i < d; ++i) {
      gnv[i] = gn * center[i];
      g.center[i] += gn * n[i];
    }
    g.noise.push_back(std::move(gnv));
  }
  return g;
}

EmbeddingTable train_skipgram(const std::vector<std::vector<std::string>>& corpus,
                              const SkipGramConfig& config, SkipGramTrace* trace) {
  config.validate();
  if (corpus.empty()) throw DataError("skip-gram corpus is empty");

  std::map<std::string, std::size_t> counts;
  for (const auto& tweet : corpus)
    for (const auto& w : tweet) ++counts[w];
  std::vector<std::pair<std::string, std::size_t>> vocab;
  for (const auto& [w, c] : counts)
    if (c >= static_cast<std::size_t>(config.min_count)) vocab.emplace_back(w, c);
  if (vocab.empty()) throw DataError("no word reaches the minimum count");
  std::stable_sort(vocab.begin(), vocab.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  const std::size_t V = vocab.size();
  const std::size_t D = static_cast<std::size_t>(config.dim);
  std::unordered_map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < V; ++i) id.emplace(vocab[i].first, i);

  // Noise distribution: unigram counts raised to 0.75, as a cumulative table.
  std::vector<double> cumulative(V);
  double acc = 0;
  for (std::size_t i = 0; i < V; ++i) {
    acc += std::pow(static_cast<double>(vocab[i].second), 0.75);
    cumulative[i] = acc;
  }

  Rng rng(config.seed);
  std::vector<double> input(V * D), output(V * D, 0.0);
  for (auto& v : input) v = (rng.uniform() - 0.5) / static_cast<double>(D);

  std::vector<std::vector<std::size_t>> tweets;
  tweets.reserve(corpus.size());
  std::size_t train_words = 0;
  for (const auto& tweet : corpus) {
    std::vector<std::size_t> ids;
    for (const auto& w : tweet)
      if (auto it = id.find(w); it != id.end()) ids.push_back(it->second);
    train_words += ids.size();
    tweets.push_back(std::move(ids));
  }
  const double total = static_cast<double>(train_words) * config.epochs + 1.0;

  auto row = [D](std::vector<double>& m, std::size_t r) { return std::span<double>(m.data() + r * D, D); };
  auto sample_noise = [&]() {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), V - 1);
  };

  std::vector<double> grad_center(D);
  std::size_t processed = 0;
  const auto window = static_cast<std::size_t>(config.window);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0;
    std::size_t pairs = 0;
    for (const auto& ids : tweets) {
      for (std::size_t i = 0; i < ids.size(); ++i, ++processed) {
        const double alpha =
            config.learning_rate * std::max(1e-4, 1.0 - static_cast<double>(processed) / total);
        auto center = row(input, ids[i]);
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(ids.size(), i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
          if (j == i) continue;
          std::fill(grad_center.begin(), grad_center.end(), 0.0);
          for (int k = 0; k <= config.negatives; ++k) {
            std::size_t target;
            double label;
            if (k == 0) {
              target = ids[j];
              label = 1.0;
            } else {
              target = sample_noise();
              if (target == ids[j]) continue;
              label = 0.0;
            }
            auto out = row(output, target);
            const double x = dot(center, out);
            epoch_loss += label > 0 ? neg_log_sigmoid(x) : neg_log_sigmoid(-x);
            const double g = alpha * (sigmoid(x) - label);
            for (std::size_t d = 0; d < D; ++d) {
              grad_center[d] += g * out[d];
              out[d] -= g * center[d];
            }
          }
          for (std::size_t d = 0; d < D; ++d) center[d] -= grad_center[d];
          ++pairs;
        }
      }
    }
    if (trace) trace->epoch_loss.push_back(pairs ? epoch_loss / static_cast<double>(pairs) : 0.0);
  }
  if (trace) trace->vocab_size = V;

  EmbeddingTable table(D);
  for (std::size_t i = 0; i < V; ++i) table.add(vocab[i].first, row(input, i));
  return table;
}

EmbeddingTable load_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> declared_count;
  EmbeddingTable table;
  bool have_dim = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = strings::split_ws(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2) {
      auto c = strings::parse_int(fields[0]);
      auto d = strings::parse_int(fields[1]);
      if (c && d && *c >= 0 && *d > 0) {
        declared_count = static_cast<std::size_t>(*c);
        table = EmbeddingTable(static_cast<std::size_t>(*d));
        have_dim = true;
        continue;
      }
    }
    if (fields.size() < 2) throw DataError("embeddings line " + std::to_string(line_no) + ": no values");
    const std::size_t dim = fields.size() - 1;
    if (!have_dim) {
      table = EmbeddingTable(dim);
      have_dim = true;
    } else if (dim != table.dim()) {
      throw DataError("embeddings line " + std::to_string(line_no) + ": " + std::to_string(dim) +
                      " values, expected " + std::to_string(table.dim()));
    }
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto v = strings::parse_double(fields[i]);
      if (!v) throw DataError("embeddings line " + std::to_string(line_no) + ": bad value '" +
                              fields[i] + "'");
      values.push_back(*v);
    }
    try {
      table.add(fields[0], values);
    } catch (const DataError& e) {
      throw DataError("embeddings line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (declared_count && *declared_count != table.size())
    throw DataError("embeddings header declares " + std::to_string(*declared_count) +
                    " words, file has " + std::to_string(table.size()));
  return table;
}

void save_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dim() << '\n';
  for (std::size_t r = 0; r < table.size(); ++r) {
    out << table.words()[r];
    for (double v : table.row(r)) out << ' ' << strings::format_double(v);
    out << '\n';
  }
}

std::vector<double> tweet_embedding(const std::vector<std::string>& words,
                                    const EmbeddingTable& table) {
  std::vector<double> mean(table.dim(), 0.0);
  std::size_t n = 0;
  for (const auto& w : words) {
    auto r = table.find(w);
    if (!r) continue;
    auto v = table.row(*r);
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += v[d];
    ++n;
  }
  if (n > 0)
    for (auto& m : mean) m /= static_cast<double>(n);
  return mean;
}

}  // namespace stance
