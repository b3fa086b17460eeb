#include "stance/tokenize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>

#include "stance/error.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

const std::vector<std::string> kPositiveEmoticons = {
    ":)", ":-)", ":D", ":-D", ";)", ";-)", ":P", ":-P", ":p", ":-p", "=)", "=D",
    "(:", "(-:", ":]", ":')", "xD", "XD", "<3", "^_^", "^^", ":o)", "8)", ":*", ";D"};
const std::vector<std::string> kNegativeEmoticons = {
    ":(", ":-(", ":'(", ":((", "=(", "):", ")-:", ":[", ":/", ":-/", ":\\", ":|",
    ":-|", "D:", ">:(", ":@", "</3", ":S", "-_-"};

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_ascii_alnum(unsigned char c) { return c < 0x80 && std::isalnum(c) != 0; }

// Length of the UTF-8 sequence starting at s[i]; invalid lead bytes count as 1.
std::size_t utf8_len(std::string_view s, std::size_t i) {
  auto c = static_cast<unsigned char>(s[i]);
  std::size_t n = 1;
  if (c >= 0xF0 && c <= 0xF4) n = 4;
  else if (c >= 0xE0) n = 3;
  else if (c >= 0xC2 && c < 0xE0) n = 2;
  if (i + n > s.size()) return 1;
  for (std::size_t k = 1; k < n; ++k)
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 1;
  return n;
}

// Right single quotation mark, used as an apostrophe.
bool is_curly_apostrophe(std::string_view s, std::size_t i) {
  return s.compare(i, 3, "\xE2\x80\x99") == 0;
}

// Multibyte symbols (emoji, general punctuation, arrows, dingbats) are not
// word characters.
bool is_symbol_sequence(std::string_view s, std::size_t i, std::size_t len) {
  auto c = static_cast<unsigned char>(s[i]);
  if (len == 4) return true;
  if (len == 3 && c == 0xE2) return true;
  if (len == 2 && c == 0xC2) {
    auto d = static_cast<unsigned char>(s[i + 1]);
    return d < 0xC0;  // Latin-1 punctuation block
  }
  return false;
}

// Word character at byte i: ASCII alnum, '_', or a non-symbol multibyte
// sequence (accented letters). Undecodable bytes are treated as letters.
std::size_t word_char_len(std::string_view s, std::size_t i) {
  auto c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) return (std::isalnum(c) || c == '_') ? 1 : 0;
  auto len = utf8_len(s, i);
  if (len > 1 && is_symbol_sequence(s, i, len)) return 0;
  return len;
}

bool starts_with_icase(std::string_view s, std::size_t i, std::string_view prefix) {
  if (i + prefix.size() > s.size()) return false;
  return strings::iequals(s.substr(i, prefix.size()), prefix);
}

}  // namespace

std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Word: return "word";
    case TokenKind::Hashtag: return "hashtag";
    case TokenKind::Mention: return "mention";
    case TokenKind::Url: return "url";
    case TokenKind::Emoticon: return "emoticon";
    case TokenKind::Punct: return "punct";
    case TokenKind::Number: return "number";
  }
  return "word";
}

EmoticonInventory::EmoticonInventory(std::vector<std::string> positive,
                                     std::vector<std::string> negative) {
  for (auto& p : positive) {
    longest_ = std::max(longest_, p.size());
    positive_.insert(std::move(p));
  }
  for (auto& n : negative) {
    longest_ = std::max(longest_, n.size());
    negative_.insert(std::move(n));
  }
}

const EmoticonInventory& EmoticonInventory::builtin() {
  static const EmoticonInventory inv(kPositiveEmoticons, kNegativeEmoticons);
  return inv;
}

EmoticonInventory EmoticonInventory::load(std::istream& positive, std::istream& negative) {
  auto read = [](std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
      auto t = strings::trim(line);
      if (!t.empty()) out.emplace_back(t);
    }
    return out;
  };
  auto pos = read(positive);
  auto neg = read(negative);
  return EmoticonInventory(std::move(pos), std::move(neg));
}

EmoticonInventory EmoticonInventory::load_files(const std::string& positive_path,
                                                const std::string& negative_path) {
  std::ifstream p(positive_path), n(negative_path);
  if (!p) throw ConfigError("cannot open emoticon list '" + positive_path + "'");
  if (!n) throw ConfigError("cannot open emoticon list '" + negative_path + "'");
  return load(p, n);
}

std::size_t EmoticonInventory::match_length(std::string_view s) const {
  for (std::size_t len = std::min(longest_, s.size()); len > 0; --len) {
    std::string candidate(s.substr(0, len));
    if (positive_.count(candidate) || negative_.count(candidate)) return len;
  }
  return 0;
}

std::vector<Token> Tokenizer::tokenize(std::string_view text) const {
  std::vector<Token> tokens;
  auto emit = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    Token t;
    t.raw = std::string(text.substr(begin, end - begin));
    t.kind = kind;
    t.surface = kind == TokenKind::Word ? strings::to_lower(t.raw) : t.raw;
    tokens.push_back(std::move(t));
  };
  auto word_end = [&](std::size_t i) {
    while (i < text.size()) {
      if (auto n = word_char_len(text, i)) {
        i += n;
      } else {
        break;
      }
    }
    return i;
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    const bool left_boundary = i == 0 || !is_ascii_alnum(static_cast<unsigned char>(text[i - 1]));

    if (starts_with_icase(text, i, "http://") || starts_with_icase(text, i, "https://") ||
        (left_boundary && starts_with_icase(text, i, "www."))) {
      std::size_t j = i;
      while (j < n && !is_space(static_cast<unsigned char>(text[j]))) ++j;
      emit(TokenKind::Url, i, j);
      i = j;
      continue;
    }
    if ((c == '@' || c == '#') && i + 1 < n && word_char_len(text, i + 1) > 0) {
      std::size_t j = word_end(i + 1);
      emit(c == '@' ? TokenKind::Mention : TokenKind::Hashtag, i, j);
      i = j;
      continue;
    }
    // Emoticons that start with a letter ("XD", "D:") need a word boundary.
    if (left_boundary || !is_ascii_alnum(c)) {
      if (auto len = emoticons_->match_length(text.substr(i))) {
        std::size_t j = i + len;
        if (j >= n || !is_ascii_alnum(static_cast<unsigned char>(text[j]))) {
          emit(TokenKind::Emoticon, i, j);
          i = j;
          continue;
        }
      }
    }
    if (word_char_len(text, i) > 0) {
      std::size_t j = word_end(i);
      // Internal apostrophes and numeric separators stay inside the token.
      while (j < n) {
        if ((text[j] == '\'' || is_curly_apostrophe(text, j))) {
          std::size_t k = j + (text[j] == '\'' ? 1 : 3);
          if (k < n && word_char_len(text, k) > 0) {
            j = word_end(k);
            continue;
          }
        } else if ((text[j] == '.' || text[j] == ',' || text[j] == ':') && j + 1 < n &&
                   std::isdigit(static_cast<unsigned char>(text[j + 1])) &&
                   std::isdigit(static_cast<unsigned char>(text[j - 1]))) {
          j = word_end(j + 1);
          continue;
        }
        break;
      }
      auto body = text.substr(i, j - i);
      bool numeric = std::all_of(body.begin(), body.end(), [](char ch) {
        return std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == ',' || ch == ':';
      });
      emit(numeric ? TokenKind::Number : TokenKind::Word, i, j);
      i = j;
      continue;
    }
    if (c < 0x80) {
      std::size_t j = i + 1;
      while (j < n && text[j] == text[i]) ++j;
      emit(TokenKind::Punct, i, j);
      i = j;
      continue;
    }
    emit(TokenKind::Punct, i, i + utf8_len(text, i));
    i += utf8_len(text, i);
  }
  return tokens;
}

std::vector<Token> tokenize(std::string_view text) { return Tokenizer().tokenize(text); }

std::vector<std::string> gram_surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    switch (t.kind) {
      case TokenKind::Url: out.emplace_back("URL"); break;
      case TokenKind::Mention: out.emplace_back("@USER"); break;
      default: out.push_back(t.surface); break;
    }
  }
  return out;
}

std::set<std::string> word_ngrams(const std::vector<Token>& tokens, int order) {
  std::set<std::string> grams;
  if (order < 1) return grams;
  auto surfaces = gram_surfaces(tokens);
  const auto n = static_cast<std::size_t>(order);
  if (surfaces.size() < n) return grams;
  for (std::size_t i = 0; i + n <= surfaces.size(); ++i) {
    std::string g = surfaces[i];
    for (std::size_t k = 1; k < n; ++k) {
      g += ' ';
      g += surfaces[i + k];
    }
    grams.insert(std::move(g));
  }
  return grams;
}

std::string normalize_for_char_ngrams(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::set<std::string> char_ngrams(std::string_view text, int order) {
  std::set<std::string> grams;
  if (order < 1) return grams;
  auto norm = normalize_for_char_ngrams(text);
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < norm.size(); i += utf8_len(norm, i)) starts.push_back(i);
  starts.push_back(norm.size());
  const auto n = static_cast<std::size_t>(order);
  for (std::size_t k = 0; k + n < starts.size(); ++k)
    grams.insert(norm.substr(starts[k], starts[k + n] - starts[k]));
  return grams;
}

SurfaceEncodings surface_encodings(const std::vector<Token>& tokens,
                                   const EmoticonInventory& emoticons) {
  SurfaceEncodings e;
  for (const auto& t : tokens) {
    switch (t.kind) {
      case TokenKind::Emoticon:
        e.pos_emoticon = e.pos_emoticon || emoticons.is_positive(t.surface);
        e.neg_emoticon = e.neg_emoticon || emoticons.is_negative(t.surface);
        break;
      case TokenKind::Hashtag:
        e.has_hashtag = true;
        break;
      case TokenKind::Word: {
        std::size_t letters = 0;
        bool any_lower = false;
        for (char ch : t.raw) {
          auto c = static_cast<unsigned char>(ch);
          if (c < 0x80 && std::isalpha(c)) {
            ++letters;
            any_lower = any_lower || std::islower(c);
          }
        }
        if (letters >= 2 && !any_lower) e.has_allcaps_word = true;
        std::size_t run = 1;
        for (std::size_t k = 1; k < t.surface.size(); ++k) {
          auto c = static_cast<unsigned char>(t.surface[k]);
          run = (c == static_cast<unsigned char>(t.surface[k - 1]) && c < 0x80 && std::isalpha(c))
                    ? run + 1
                    : 1;
          if (run >= 3) e.has_elongated = true;
        }
        break;
      }
      case TokenKind::Punct:
        e.has_exclamation = e.has_exclamation || t.surface.find('!') != std::string::npos;
        e.has_question = e.has_question || t.surface.find('?') != std::string::npos;
        break;
      default:
        break;
    }
  }
  return e;
}

}  // namespace stance
