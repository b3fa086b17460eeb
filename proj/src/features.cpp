#include "stance/features.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <set>
#include <stdexcept>

#include "stance/error.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

std::string normalize_mention(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '#' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) || c == '_';
}

const TargetSpec& spec_for(const std::string& target, const FeatureResources& res,
                           TargetSpec& scratch) {
  for (const auto& t : res.targets)
    if (t.name == target) return t;
  scratch = default_target_spec(target);
  return scratch;
}

}  // namespace

FeatureConfig FeatureConfig::parse(std::string_view list) {
  FeatureConfig c;
  c.word_ngrams = c.char_ngrams = false;
  for (const auto& raw : strings::split(list, ',')) {
    auto name = strings::to_lower(strings::trim(raw));
    if (name.empty()) continue;
    if (name == "ngrams") {
      c.word_ngrams = c.char_ngrams = true;
    } else if (name == "word-ngrams") {
      c.word_ngrams = true;
    } else if (name == "char-ngrams") {
      c.char_ngrams = true;
    } else if (name == "sentiment" || name == "lexicons") {
      c.sentiment_lexicons = true;
    } else if (name == "target") {
      c.target_presence = true;
    } else if (name == "pos") {
      c.pos_counts = true;
    } else if (name == "encodings") {
      c.encodings = true;
    } else if (name == "associations") {
      c.associations = true;
    } else if (name == "embeddings") {
      c.embeddings = true;
    } else {
      throw ConfigError("unknown feature family '" + name + "'");
    }
  }
  c.validate();
  return c;
}

std::string FeatureConfig::to_string() const {
  std::vector<std::string> parts;
  if (word_ngrams && char_ngrams)
    parts.push_back("ngrams");
  else if (word_ngrams)
    parts.push_back("word-ngrams");
  else if (char_ngrams)
    parts.push_back("char-ngrams");
  if (sentiment_lexicons) parts.push_back("sentiment");
  if (target_presence) parts.push_back("target");
  if (pos_counts) parts.push_back("pos");
  if (encodings) parts.push_back("encodings");
  if (associations) parts.push_back("associations");
  if (embeddings) parts.push_back("embeddings");
  return strings::join(parts, ",");
}

void FeatureConfig::validate() const {
  if (!(word_ngrams || char_ngrams || sentiment_lexicons || target_presence || pos_counts ||
        encodings || associations || embeddings))
    throw ConfigError("no feature family enabled");
}

void FeatureResources::check(const FeatureConfig& config) const {
  if (config.sentiment_lexicons && lexicons.empty())
    throw ConfigError("feature family 'sentiment' needs at least one lexicon");
  if (config.pos_counts && pos_tags.empty())
    throw ConfigError("feature family 'pos' needs a POS sidecar file");
  if (config.associations && associations.empty())
    throw ConfigError("feature family 'associations' needs an association table");
  if (config.embeddings && !embeddings)
    throw ConfigError("feature family 'embeddings' needs an embedding table");
}

bool mentions_target(std::string_view text, const TargetSpec& spec) {
  const auto norm = normalize_mention(text);
  for (const auto& alias : spec.aliases) {
    const auto a = normalize_mention(strings::trim(alias));
    if (a.empty()) continue;
    for (auto pos = norm.find(a); pos != std::string::npos; pos = norm.find(a, pos + 1))
      if (pos == 0 || !word_char(norm[pos - 1])) return true;
  }
  return false;
}

FeatureMap pos_count_features(const std::vector<std::string>& tags) {
  FeatureMap out;
  for (const auto& t : tags) out["pos:" + t] += 1.0;
  return out;
}

std::unordered_map<std::string, std::vector<std::string>> load_pos_sidecar(std::istream& in) {
  std::unordered_map<std::string, std::vector<std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (strings::trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("POS sidecar line " + std::to_string(line_no) + ": expected id<TAB>tags");
    auto id = std::string(strings::trim(std::string_view(line).substr(0, tab)));
    if (!out.emplace(id, strings::split_ws(std::string_view(line).substr(tab + 1))).second)
      throw DataError("POS sidecar line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
  }
  return out;
}

std::vector<std::string> embedding_words(const std::vector<Token>& tokens) {
  return gram_surfaces(tokens);
}

FeatureMap extract(const Instance& instance, const FeatureConfig& config,
                   const FeatureResources& resources) {
  FeatureMap f;
  const auto tokens = resources.tokenizer.tokenize(instance.text);

  if (config.word_ngrams)
    for (int n = 1; n <= 3; ++n) {
      const std::string p = "w" + std::to_string(n) + ":";
      for (const auto& g : word_ngrams(tokens, n)) f[p + g] = 1.0;
    }
  if (config.char_ngrams)
    for (int n = 2; n <= 5; ++n) {
      const std::string p = "c" + std::to_string(n) + ":";
      for (const auto& g : char_ngrams(instance.text, n)) f[p + g] = 1.0;
    }
  if (config.sentiment_lexicons) {
    if (resources.lexicons.empty())
      throw ConfigError("feature family 'sentiment' needs at least one lexicon");
    for (const auto& lex : resources.lexicons)
      for (auto& [k, v] : lexicon_features(tokens, lex)) f[k] = v;
  }
  if (config.target_presence) {
    TargetSpec scratch;
    f["tgt:present"] = mentions_target(instance.text, spec_for(instance.target, resources, scratch)) ? 1.0 : 0.0;
  }
  if (config.pos_counts) {
    auto it = resources.pos_tags.find(instance.id);
    if (it == resources.pos_tags.end())
      throw DataError("feature family 'pos': no tags for instance '" + instance.id + "'");
    if (it->second.size() != tokens.size())
      throw DataError("feature family 'pos': instance '" + instance.id + "' has " +
                      std::to_string(it->second.size()) + " tags for " +
                      std::to_string(tokens.size()) + " tokens");
    for (auto& [k, v] : pos_count_features(it->second)) f[k] = v;
  }
  if (config.encodings) {
    const auto e = surface_encodings(tokens, resources.tokenizer.emoticons());
    f["enc:pos_emoticon"] = e.pos_emoticon;
    f["enc:neg_emoticon"] = e.neg_emoticon;
    f["enc:hashtag"] = e.has_hashtag;
    f["enc:allcaps"] = e.has_allcaps_word;
    f["enc:elongated"] = e.has_elongated;
    f["enc:exclamation"] = e.has_exclamation;
    f["enc:question"] = e.has_question;
  }
  if (config.associations) {
    if (resources.associations.empty())
      throw ConfigError("feature family 'associations' needs an association table");
    for (const auto& a : resources.associations) {
      if (a.target && *a.target != instance.target) continue;
      for (auto& [k, v] : association_features(tokens, a.table, a.name)) f[k] = v;
    }
  }
  if (config.embeddings) {
    if (!resources.embeddings)
      throw ConfigError("feature family 'embeddings' needs an embedding table");
    const auto v = tweet_embedding(embedding_words(tokens), *resources.embeddings);
    for (std::size_t k = 0; k < v.size(); ++k) f["emb:" + std::to_string(k)] = v[k];
  }
  return f;
}

std::vector<FeatureMap> extract_all(const Dataset& dataset, const FeatureConfig& config,
                                    const FeatureResources& resources) {
  config.validate();
  resources.check(config);
  std::vector<FeatureMap> out;
  out.reserve(dataset.size());
  for (const auto& inst : dataset.instances) out.push_back(extract(inst, config, resources));
  return out;
}

FeatureSpace FeatureSpace::from_names(std::vector<std::string> names) {
  FeatureSpace s;
  for (auto& n : names) s.add(n);
  s.freeze();
  return s;
}

std::optional<std::size_t> FeatureSpace::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FeatureSpace::add(const std::string& name) {
  if (auto i = find(name)) return *i;
  if (frozen_) throw std::logic_error("feature space is frozen");
  index_.emplace(name, names_.size());
  names_.push_back(name);
  return names_.size() - 1;
}

FeatureSpace fit_space(std::span<const FeatureMap> train) {
  std::set<std::string> all;
  for (const auto& m : train)
    for (const auto& [k, v] : m) all.insert(k);
  return FeatureSpace::from_names({all.begin(), all.end()});
}

SparseVector vectorize(const FeatureMap& features, const FeatureSpace& space) {
  if (!space.frozen()) throw std::logic_error("vectorize needs a frozen feature space");
  std::vector<std::pair<std::uint32_t, double>> entries;
  entries.reserve(features.size());
  for (const auto& [k, v] : features) {
    if (v == 0.0) continue;
    if (auto i = space.find(k)) entries.emplace_back(static_cast<std::uint32_t>(*i), v);
  }
  std::sort(entries.begin(), entries.end());
  SparseVector out;
  out.dim = space.size();
  out.index.reserve(entries.size());
  out.value.reserve(entries.size());
  for (auto& [i, v] : entries) {
    out.index.push_back(i);
    out.value.push_back(v);
  }
  return out;
}

std::vector<SparseVector> vectorize_all(std::span<const FeatureMap> features,
                                        const FeatureSpace& space) {
  std::vector<SparseVector> out;
  out.reserve(features.size());
  for (const auto& m : features) out.push_back(vectorize(m, space));
  return out;
}

FeatureMap devectorize(const SparseVector& v, const FeatureSpace& space) {
  FeatureMap out;
  for (std::size_t k = 0; k < v.nnz(); ++k) out[space.names().at(v.index[k])] = v.value[k];
  return out;
}

}  // namespace stance
