#include "stance/distant.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "stance/error.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

std::set<std::string> hashtags_of(const std::vector<Token>& tokens) {
  std::set<std::string> out;
  for (const auto& t : tokens)
    if (t.kind == TokenKind::Hashtag) out.insert(strings::to_lower(t.surface));
  return out;
}

// Removes the raw occurrences of the selected tokens and collapses spaces.
std::string strip_tokens(std::string_view text, const std::vector<Token>& tokens,
                         const std::vector<bool>& remove) {
  std::string out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto pos = text.find(tokens[i].raw, cursor);
    if (pos == std::string_view::npos) continue;
    if (remove[i]) {
      out.append(text.substr(cursor, pos - cursor));
      cursor = pos + tokens[i].raw.size();
    }
  }
  out.append(text.substr(cursor));
  return strings::join(strings::split_ws(out), " ");
}

}  // namespace

std::vector<HashtagStats> hashtag_predictiveness(const Dataset& labeled,
                                                 const Tokenizer& tokenizer) {
  std::map<std::string, HashtagStats> stats;
  for (const auto& inst : labeled.instances) {
    if (!inst.stance) continue;
    for (const auto& tag : hashtags_of(tokenizer.tokenize(inst.text))) {
      auto& s = stats[tag];
      s.hashtag = tag;
      ++s.freq;
      switch (*inst.stance) {
        case Stance::Favor: ++s.favor; break;
        case Stance::Against: ++s.against; break;
        case Stance::Neither: ++s.neither; break;
      }
    }
  }
  std::vector<HashtagStats> out;
  out.reserve(stats.size());
  for (auto& [tag, s] : stats) {
    const auto top = std::max(s.favor, s.against);
    s.predictiveness = static_cast<double>(top) / static_cast<double>(s.freq);
    s.argmax_label = s.favor > s.against ? Stance::Favor : Stance::Against;
    out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const HashtagStats& a, const HashtagStats& b) {
    return a.freq > b.freq;
  });
  return out;
}

SiHashtagMap auto_si_hashtags(const Dataset& labeled, std::size_t min_freq, double threshold,
                              const Tokenizer& tokenizer) {
  SiHashtagMap out;
  for (const auto& s : hashtag_predictiveness(labeled, tokenizer))
    if (s.freq >= min_freq && s.predictiveness > threshold) out[s.hashtag] = s.argmax_label;
  return out;
}

std::map<std::string, SiHashtagMap> load_si_hashtags(std::istream& in) {
  std::map<std::string, SiHashtagMap> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = strings::trim(line);
    if (t.empty() || (t.front() == '#' && t.find('\t') == std::string_view::npos)) continue;
    auto cols = strings::split(t, '\t');
    if (cols.size() != 3)
      throw DataError("SI hashtag line " + std::to_string(line_no) +
                      ": expected target<TAB>#hashtag<TAB>stance");
    auto tag = strings::to_lower(strings::trim(cols[1]));
    if (tag.empty() || tag.front() != '#') tag.insert(tag.begin(), '#');
    Stance s = parse_stance(cols[2]);
    if (s == Stance::Neither)
      throw DataError("SI hashtag line " + std::to_string(line_no) + ": stance must be favor or against");
    out[std::string(strings::trim(cols[0]))][tag] = s;
  }
  return out;
}

std::vector<DomainTweet> load_domain_corpus(std::istream& in) {
  std::vector<DomainTweet> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tab = line.find('\t');
    DomainTweet tw;
    if (tab != std::string::npos) {
      tw.target = std::string(strings::trim(std::string_view(line).substr(0, tab)));
      tw.text = std::string(strings::trim(std::string_view(line).substr(tab + 1)));
    } else {
      tw.text = std::string(strings::trim(line));
    }
    if (!tw.text.empty()) out.push_back(std::move(tw));
  }
  return out;
}

Dataset pseudo_label(std::span<const DomainTweet> corpus, const SiHashtagMap& si_map,
                     const std::string& target, const Tokenizer& tokenizer) {
  Dataset out;
  out.targets.push_back(default_target_spec(target));
  if (si_map.empty()) return out;
  std::size_t next_id = 0;
  for (const auto& tw : corpus) {
    if (tw.target && *tw.target != target) continue;
    auto tokens = tokenizer.tokenize(tw.text);
    std::vector<bool> remove(tokens.size(), false);
    std::optional<Stance> label;
    bool conflict = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].kind != TokenKind::Hashtag) continue;
      auto it = si_map.find(strings::to_lower(tokens[i].surface));
      if (it == si_map.end()) continue;
      remove[i] = true;
      if (label && *label != it->second) conflict = true;
      label = it->second;
    }
    if (!label || conflict) continue;
    auto text = strip_tokens(tw.text, tokens, remove);
    if (text.empty()) continue;
    Instance inst;
    inst.id = "pseudo:" + target + ":" + std::to_string(++next_id);
    inst.target = target;
    inst.text = std::move(text);
    inst.stance = *label;
    inst.source = Provenance::Pseudo;
    out.instances.push_back(std::move(inst));
  }
  return out;
}

std::string_view to_string(AssociationKind k) {
  return k == AssociationKind::WordStance ? "word-stance" : "word-target";
}

AssociationKind parse_association_kind(std::string_view s) {
  auto v = strings::to_lower(strings::trim(s));
  if (v == "word-stance" || v == "stance") return AssociationKind::WordStance;
  if (v == "word-target" || v == "target") return AssociationKind::WordTarget;
  throw ConfigError("unknown association kind '" + std::string(s) + "'");
}

std::optional<double> AssociationTable::pmi(const std::string& word,
                                            const std::string& label) const {
  auto w = scores.find(word);
  if (w == scores.end()) return std::nullopt;
  auto l = w->second.find(label);
  if (l == w->second.end()) return std::nullopt;
  return l->second;
}

AssociationTable build_association_table(const Dataset& corpus, AssociationKind kind,
                                         std::size_t min_word_freq, const Tokenizer& tokenizer) {
  AssociationTable table;
  table.kind = kind;
  table.min_word_freq = min_word_freq;
  auto& c = table.counts;
  for (const auto& inst : corpus.instances) {
    std::string label;
    if (kind == AssociationKind::WordStance) {
      if (!inst.stance) continue;
      label = std::string(to_string(*inst.stance));
    } else {
      label = inst.target;
    }
    if (std::find(table.labels.begin(), table.labels.end(), label) == table.labels.end())
      table.labels.push_back(label);
    auto words = gram_surfaces(tokenizer.tokenize(inst.text));
    c.total_tokens += words.size();
    c.label[label] += words.size();
    for (const auto& w : words) {
      ++c.word[w];
      ++c.joint[{w, label}];
    }
  }
  if (c.total_tokens == 0) throw DataError("association corpus has no tokens");
  std::sort(table.labels.begin(), table.labels.end());
  const double n = static_cast<double>(c.total_tokens);
  for (const auto& [key, joint] : c.joint) {
    const auto& [word, label] = key;
    const auto fw = c.word.at(word);
    if (fw < min_word_freq) continue;
    const double fl = static_cast<double>(c.label.at(label));
    table.scores[word][label] =
        std::log2(static_cast<double>(joint) * n / (static_cast<double>(fw) * fl));
  }
  return table;
}

void save_association_table(std::ostream& out, const AssociationTable& table) {
  const auto kind = to_string(table.kind);
  for (const auto& [word, labels] : table.scores)
    for (const auto& [label, pmi] : labels)
      out << kind << '\t' << word << '\t' << label << '\t' << strings::format_double(pmi) << '\n';
}

AssociationTable load_association_table(std::istream& in) {
  AssociationTable table;
  table.min_word_freq = 0;
  std::string line;
  std::size_t line_no = 0;
  bool kind_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = strings::split(line, '\t');
    if (cols.size() != 4)
      throw DataError("association line " + std::to_string(line_no) +
                      ": expected kind<TAB>word<TAB>label<TAB>pmi");
    auto kind = parse_association_kind(cols[0]);
    if (kind_seen && kind != table.kind)
      throw DataError("association line " + std::to_string(line_no) + ": mixed table kinds");
    table.kind = kind;
    kind_seen = true;
    auto v = strings::parse_double(cols[3]);
    if (!v) throw DataError("association line " + std::to_string(line_no) + ": bad pmi");
    table.scores[cols[1]][cols[2]] = *v;
    if (std::find(table.labels.begin(), table.labels.end(), cols[2]) == table.labels.end())
      table.labels.push_back(cols[2]);
  }
  std::sort(table.labels.begin(), table.labels.end());
  return table;
}

std::vector<std::pair<std::string, double>> association_features(const std::vector<Token>& tokens,
                                                                 const AssociationTable& table,
                                                                 const std::string& name) {
  struct Acc {
    double sum = 0, min = std::numeric_limits<double>::infinity(),
           max = -std::numeric_limits<double>::infinity();
    bool any = false;
  };
  std::map<std::string, Acc> acc;
  for (const auto& w : gram_surfaces(tokens)) {
    auto it = table.scores.find(w);
    if (it == table.scores.end()) continue;
    for (const auto& [label, pmi] : it->second) {
      auto& a = acc[label];
      a.sum += pmi;
      a.min = std::min(a.min, pmi);
      a.max = std::max(a.max, pmi);
      a.any = true;
    }
  }
  std::vector<std::pair<std::string, double>> out;
  out.reserve(table.labels.size() * 3);
  for (const auto& label : table.labels) {
    const std::string p = "asc:" + name + ":" + label + ":";
    auto it = acc.find(label);
    if (it == acc.end() || !it->second.any) {
      out.emplace_back(p + "sum", 0.0);
      out.emplace_back(p + "min", 0.0);
      out.emplace_back(p + "max", 0.0);
    } else {
      out.emplace_back(p + "sum", it->second.sum);
      out.emplace_back(p + "min", it->second.min);
      out.emplace_back(p + "max", it->second.max);
    }
  }
  return out;
}

Dataset augment_training(const Dataset& base, const Dataset& pseudo) {
  Dataset flagged = pseudo;
  for (auto& inst : flagged.instances) inst.source = Provenance::Pseudo;
  return concat(base, flagged);
}

}  // namespace stance
