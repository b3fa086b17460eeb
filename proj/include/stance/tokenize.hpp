#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stance {

enum class TokenKind { Word, Hashtag, Mention, Url, Emoticon, Punct, Number };

std::string_view to_string(TokenKind k);

struct Token {
  // Lowercased for words; as written for every other kind.
  std::string surface;
  TokenKind kind = TokenKind::Word;
  // The characters exactly as they appeared in the text.
  std::string raw;

  friend bool operator==(const Token&, const Token&) = default;
};

class EmoticonInventory {
 public:
  EmoticonInventory() = default;
  EmoticonInventory(std::vector<std::string> positive, std::vector<std::string> negative);

  // Western-style inventory compiled into the library; the shipped
  // data/emoticons_{pos,neg}.txt files hold the same lists.
  static const EmoticonInventory& builtin();
  // One surface per line; blank lines ignored.
  static EmoticonInventory load(std::istream& positive, std::istream& negative);
  static EmoticonInventory load_files(const std::string& positive_path,
                                      const std::string& negative_path);

  bool is_positive(std::string_view s) const { return positive_.count(std::string(s)) != 0; }
  bool is_negative(std::string_view s) const { return negative_.count(std::string(s)) != 0; }
  // Longest inventory entry that is a prefix of `s`, or 0.
  std::size_t match_length(std::string_view s) const;

 private:
  std::set<std::string> positive_;
  std::set<std::string> negative_;
  std::size_t longest_ = 0;
};

class Tokenizer {
 public:
  Tokenizer() : emoticons_(&EmoticonInventory::builtin()) {}
  explicit Tokenizer(const EmoticonInventory& emoticons) : emoticons_(&emoticons) {}

  // Hashtags, mentions, URLs and emoticons stay atomic; everything else splits
  // at whitespace and punctuation. Runs of one repeated punctuation mark
  // ("!!!", "...") form a single token.
  std::vector<Token> tokenize(std::string_view text) const;

  const EmoticonInventory& emoticons() const { return *emoticons_; }

 private:
  const EmoticonInventory* emoticons_;
};

// Tokenizes with the builtin emoticon inventory.
std::vector<Token> tokenize(std::string_view text);

// Surfaces used for word n-grams and word-level statistics: URLs become
// "URL", mentions "@USER".
std::vector<std::string> gram_surfaces(const std::vector<Token>& tokens);

// Space-joined contiguous sequences of `order` gram surfaces.
std::set<std::string> word_ngrams(const std::vector<Token>& tokens, int order);

// Lowercased text with whitespace runs collapsed to one space and trimmed.
std::string normalize_for_char_ngrams(std::string_view text);

// Windows of `order` characters (UTF-8 code points) over the normalized text.
std::set<std::string> char_ngrams(std::string_view text, int order);

struct SurfaceEncodings {
  bool pos_emoticon = false;
  bool neg_emoticon = false;
  bool has_hashtag = false;
  bool has_allcaps_word = false;
  bool has_elongated = false;
  bool has_exclamation = false;
  bool has_question = false;

  friend bool operator==(const SurfaceEncodings&, const SurfaceEncodings&) = default;
};

// Flags are computed from tokens so URLs and mentions never trigger them.
SurfaceEncodings surface_encodings(const std::vector<Token>& tokens,
                                   const EmoticonInventory& emoticons = EmoticonInventory::builtin());

}  // namespace stance
