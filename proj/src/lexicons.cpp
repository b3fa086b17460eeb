#include "stance/lexicons.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>

#include "stance/error.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

[[noreturn]] void bad_line(std::size_t line_no, const std::string& why) {
  throw DataError("lexicon line " + std::to_string(line_no) + ": " + why);
}

std::optional<double> polarity_score(std::string_view p) {
  auto v = strings::to_lower(strings::trim(p));
  if (v == "positive" || v == "pos") return 1.0;
  if (v == "negative" || v == "neg") return -1.0;
  return std::nullopt;
}

// Looks a token up, also without its '#' for hashtags.
std::optional<double> token_score(const SentimentLexicon& lex, const Token& t,
                                  const std::string& surface) {
  auto key = strings::to_lower(surface);
  if (auto s = lex.score(key)) return s;
  if (t.kind == TokenKind::Hashtag && key.size() > 1) return lex.score(key.substr(1));
  return std::nullopt;
}

}  // namespace

LexiconFormat parse_lexicon_format(std::string_view s) {
  auto v = strings::to_lower(strings::trim(s));
  if (v == "term_score") return LexiconFormat::TermScore;
  if (v == "term_polarity") return LexiconFormat::TermPolarity;
  if (v == "nrc_emotion") return LexiconFormat::NrcEmotion;
  if (v == "mpqa") return LexiconFormat::Mpqa;
  if (v == "wordlist_positive") return LexiconFormat::WordListPositive;
  if (v == "wordlist_negative") return LexiconFormat::WordListNegative;
  throw ConfigError("unknown lexicon format '" + std::string(s) + "'");
}

std::optional<double> SentimentLexicon::score(const std::string& term) const {
  auto it = entries.find(term);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

SentimentLexicon load_lexicon(std::istream& in, LexiconFormat format, std::string name) {
  SentimentLexicon lex;
  lex.name = std::move(name);
  auto put = [&](std::string_view term, double score) {
    auto key = strings::to_lower(strings::trim(term));
    if (key.empty()) return;
    if (key.find(' ') != std::string::npos) lex.has_multiword = true;
    lex.entries[key] = score;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = strings::trim(line);
    if (t.empty()) continue;
    switch (format) {
      case LexiconFormat::TermScore: {
        auto cols = strings::split(t, '\t');
        if (cols.size() < 2) bad_line(line_no, "expected term<TAB>score");
        auto v = strings::parse_double(cols[1]);
        if (!v) bad_line(line_no, "bad score '" + cols[1] + "'");
        put(cols[0], *v);
        break;
      }
      case LexiconFormat::TermPolarity: {
        auto cols = strings::split(t, '\t');
        if (cols.size() < 2) bad_line(line_no, "expected term<TAB>polarity");
        auto v = polarity_score(cols[1]);
        if (!v) bad_line(line_no, "bad polarity '" + cols[1] + "'");
        put(cols[0], *v);
        break;
      }
      case LexiconFormat::NrcEmotion: {
        auto cols = strings::split(t, '\t');
        if (cols.size() != 3) bad_line(line_no, "expected word<TAB>category<TAB>flag");
        auto flag = strings::parse_int(cols[2]);
        if (!flag) bad_line(line_no, "bad flag '" + cols[2] + "'");
        auto v = polarity_score(cols[1]);
        if (v && *flag == 1) put(cols[0], *v);
        break;
      }
      case LexiconFormat::Mpqa: {
        std::string word;
        std::optional<std::string> polarity;
        for (const auto& kv : strings::split_ws(t)) {
          auto eq = kv.find('=');
          if (eq == std::string::npos) continue;
          auto key = kv.substr(0, eq);
          auto val = kv.substr(eq + 1);
          if (key == "word1") word = val;
          if (key == "priorpolarity") polarity = val;
        }
        if (word.empty() || !polarity) bad_line(line_no, "expected word1= and priorpolarity=");
        if (auto v = polarity_score(*polarity)) put(word, *v);
        break;
      }
      case LexiconFormat::WordListPositive:
      case LexiconFormat::WordListNegative:
        if (t.front() == ';') continue;
        if (t.find('\t') != std::string_view::npos) bad_line(line_no, "word lists take one term per line");
        put(t, format == LexiconFormat::WordListPositive ? 1.0 : -1.0);
        break;
    }
  }
  return lex;
}

void merge_lexicon(SentimentLexicon& into, const SentimentLexicon& more) {
  for (const auto& [k, v] : more.entries) into.entries[k] = v;
  into.has_multiword = into.has_multiword || more.has_multiword;
}

std::vector<LexiconManifestEntry> parse_lexicon_manifest(std::istream& in,
                                                         const std::string& base_dir) {
  std::vector<LexiconManifestEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = strings::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cols = strings::split(t, '\t');
    if (cols.size() != 3)
      throw ConfigError("lexicon manifest line " + std::to_string(line_no) +
                        ": expected name<TAB>path<TAB>format");
    std::filesystem::path p(std::string(strings::trim(cols[1])));
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    out.push_back({std::string(strings::trim(cols[0])), p.string(), parse_lexicon_format(cols[2])});
  }
  return out;
}

std::vector<SentimentLexicon> load_lexicons(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("cannot open lexicon manifest '" + manifest_path + "'");
  auto base = std::filesystem::path(manifest_path).parent_path().string();
  std::vector<SentimentLexicon> lexicons;
  for (const auto& e : parse_lexicon_manifest(in, base)) {
    std::ifstream f(e.path);
    if (!f) throw ConfigError("cannot open lexicon '" + e.path + "'");
    SentimentLexicon lex;
    try {
      lex = load_lexicon(f, e.format, e.name);
    } catch (const DataError& err) {
      throw DataError(e.path + ": " + err.what());
    }
    auto it = std::find_if(lexicons.begin(), lexicons.end(),
                           [&](const SentimentLexicon& l) { return l.name == e.name; });
    if (it == lexicons.end())
      lexicons.push_back(std::move(lex));
    else
      merge_lexicon(*it, lex);
  }
  return lexicons;
}

LexiconStats lexicon_stats(const std::vector<Token>& tokens, const SentimentLexicon& lexicon) {
  LexiconStats st;
  bool any = false;
  auto add = [&](double s) {
    if (s > 0) {
      st.count_pos += 1;
      st.sum_pos += s;
    } else if (s < 0) {
      st.count_neg += 1;
      st.sum_neg += s;
    }
    if (!any) {
      st.max_score = st.min_score = s;
      any = true;
    } else {
      st.max_score = std::max(st.max_score, s);
      st.min_score = std::min(st.min_score, s);
    }
    if (s != 0) st.last_score = s;
  };
  auto surfaces = gram_surfaces(tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    // A bigram ending at i is ordered before the unigram at i.
    if (lexicon.has_multiword && i > 0) {
      auto key = strings::to_lower(surfaces[i - 1] + " " + surfaces[i]);
      if (auto s = lexicon.score(key)) add(*s);
    }
    if (auto s = token_score(lexicon, tokens[i], surfaces[i])) add(*s);
  }
  return st;
}

std::vector<std::pair<std::string, double>> lexicon_features(const std::vector<Token>& tokens,
                                                             const SentimentLexicon& lexicon) {
  auto st = lexicon_stats(tokens, lexicon);
  const std::string p = "lex:" + lexicon.name + ":";
  return {{p + "count_pos", st.count_pos}, {p + "count_neg", st.count_neg},
          {p + "sum_pos", st.sum_pos},     {p + "sum_neg", st.sum_neg},
          {p + "max", st.max_score},       {p + "min", st.min_score},
          {p + "last", st.last_score}};
}

}  // namespace stance
