#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace statetrack {

/// One token of a sentence, with character offsets into the original text.
struct Token {
  std::string surface;
  std::string lower;
  std::size_t start_char = 0;  // inclusive
  std::size_t end_char = 0;    // exclusive

  bool operator==(const Token&) const = default;
};

inline bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

inline bool is_ascii_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Whitespace split with leading/trailing ASCII punctuation peeled off into
// their own tokens. Lossless: every token's [start_char, end_char) slice of
// the input equals its surface, and everything between tokens is whitespace.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  auto emit = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    std::string surface(text.substr(begin, end - begin));
    tokens.push_back(Token{surface, to_lower(surface), begin, end});
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_ascii_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t chunk_begin = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    std::size_t chunk_end = i;
    // Leading punctuation: one token per character.
    std::size_t body_begin = chunk_begin;
    while (body_begin < chunk_end && is_ascii_punct(text[body_begin])) {
      emit(body_begin, body_begin + 1);
      ++body_begin;
    }
    // Trailing punctuation: peel from the right, emit in order afterwards.
    std::size_t body_end = chunk_end;
    while (body_end > body_begin && is_ascii_punct(text[body_end - 1])) --body_end;
    emit(body_begin, body_end);
    for (std::size_t p = body_end; p < chunk_end; ++p) emit(p, p + 1);
  }
  return tokens;
}

inline bool is_punct_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_ascii_punct);
}

inline bool is_number_token(std::string_view s) {
  if (s.empty()) return false;
  bool digit_seen = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit_seen = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit_seen;
}

/// Stopword list shared by location normalization and span extraction.
inline bool is_stopword(std::string_view w) {
  static constexpr std::array<std::string_view, 14> kStop = {
      "the", "a", "an", "of", "in", "on", "at", "from", "to", "into", "by", "for", "with", "and"};
  return std::find(kStop.begin(), kStop.end(), w) != kStop.end();
}

// Deterministic suffix lemmatizer. Irregulars first, then one suffix rule:
// -ies -> y, -es -> (drop) with stem >= 3 chars, -s -> (drop) with stem >= 3.
// Intentionally tool-free; verbs in lexicon files must already be in this
// lemma form (e.g. "produc" for "produces").
inline std::string lemmatize(std::string_view word) {
  struct Irregular {
    std::string_view from, to;
  };
  static constexpr std::array<Irregular, 3> kIrregular = {
      Irregular{"leaves", "leaf"}, Irregular{"feet", "foot"}, Irregular{"mice", "mouse"}};
  for (const auto& ir : kIrregular) {
    if (word == ir.from) return std::string(ir.to);
  }
  auto ends_with = [&](std::string_view suffix) {
    return word.size() >= suffix.size() &&
           word.substr(word.size() - suffix.size()) == suffix;
  };
  if (ends_with("ies")) return std::string(word.substr(0, word.size() - 3)) + "y";
  if (ends_with("es") && word.size() - 2 >= 3) return std::string(word.substr(0, word.size() - 2));
  if (ends_with("s") && word.size() - 1 >= 3) return std::string(word.substr(0, word.size() - 1));
  return std::string(word);
}

// Canonical form of a location string: lowercase tokens, punctuation-only
// tokens and stopwords dropped, each word lemmatized. "the Leaf." and
// "leaves" both normalize to ["leaf"].
inline std::vector<std::string> normalize_location(std::string_view s) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(s)) {
    if (is_punct_token(t.lower) || is_stopword(t.lower)) continue;
    out.push_back(lemmatize(t.lower));
  }
  return out;
}

/// True iff the two location strings normalize to the same token sequence.
inline bool location_equal(std::string_view a, std::string_view b) {
  return normalize_location(a) == normalize_location(b);
}

// Sub-phrase match: predicted is correct if its normalized tokens equal the
// gold ones or form a contiguous subsequence of them. Empty-after-
// normalization predictions only match an equally empty gold.
inline bool location_match(std::string_view predicted, std::string_view gold) {
  std::vector<std::string> p = normalize_location(predicted);
  std::vector<std::string> g = normalize_location(gold);
  if (p.empty()) return g.empty();
  if (p.size() > g.size()) return false;
  for (std::size_t i = 0; i + p.size() <= g.size(); ++i) {
    if (std::equal(p.begin(), p.end(), g.begin() + i)) return true;
  }
  return false;
}

// All start indices where `phrase` occurs in `tokens` as a contiguous
// case-insensitive token subsequence ("carbon dioxide" -> two-token match).
inline std::vector<std::size_t> find_occurrences(const std::vector<Token>& tokens,
                                                 std::string_view phrase) {
  std::vector<Token> phrase_tokens = tokenize(phrase);
  std::vector<std::size_t> hits;
  if (phrase_tokens.empty() || phrase_tokens.size() > tokens.size()) return hits;
  for (std::size_t i = 0; i + phrase_tokens.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < phrase_tokens.size(); ++k) {
      if (tokens[i + k].lower != phrase_tokens[k].lower) {
        match = false;
        break;
      }
    }
    if (match) hits.push_back(i);
  }
  return hits;
}

inline std::string join_tokens(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace statetrack
