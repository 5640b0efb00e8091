#include "statetrack/text.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace statetrack;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("tokenize splits whitespace and edge punctuation") {
  auto tokens = tokenize("Roots absorb water from the soil.");
  CHECK(surfaces(tokens) ==
        std::vector<std::string>{"Roots", "absorb", "water", "from", "the", "soil", "."});
  CHECK(tokens[0].lower == "roots");

  CHECK(surfaces(tokenize("(water)")) == std::vector<std::string>{"(", "water", ")"});
  CHECK(surfaces(tokenize("Rains.")) == std::vector<std::string>{"Rains", "."});
  // interior punctuation stays attached
  CHECK(surfaces(tokenize("carbon-dioxide isn't split")) ==
        std::vector<std::string>{"carbon-dioxide", "isn't", "split"});
  CHECK(tokenize("   ").empty());
}

TEST_CASE("tokenize is lossless against offsets") {
  const std::string text = "  The mixture, (once formed), forms sugar!  ";
  auto tokens = tokenize(text);
  std::size_t cursor = 0;
  for (const auto& t : tokens) {
    REQUIRE(t.start_char < t.end_char);
    REQUIRE(t.start_char >= cursor);
    // gap before the token is whitespace only
    for (std::size_t i = cursor; i < t.start_char; ++i) CHECK(is_ascii_space(text[i]));
    CHECK(text.substr(t.start_char, t.end_char - t.start_char) == t.surface);
    cursor = t.end_char;
  }
  for (std::size_t i = cursor; i < text.size(); ++i) CHECK(is_ascii_space(text[i]));
}

TEST_CASE("lemmatizer applies suffix rules and irregulars") {
  CHECK(lemmatize("leaves") == "leaf");
  CHECK(lemmatize("feet") == "foot");
  CHECK(lemmatize("mice") == "mouse");
  CHECK(lemmatize("babies") == "baby");
  CHECK(lemmatize("gases") == "gas");
  CHECK(lemmatize("produces") == "produc");  // -es rule, by design
  CHECK(lemmatize("absorbs") == "absorb");
  CHECK(lemmatize("is") == "is");  // stem too short for the -s rule
  CHECK(lemmatize("soil") == "soil");
}

TEST_CASE("location normalization drops stopwords and punctuation") {
  CHECK(normalize_location("the Leaf.") == std::vector<std::string>{"leaf"});
  CHECK(normalize_location("from the soil") == std::vector<std::string>{"soil"});
  CHECK(normalize_location("the a an") == std::vector<std::string>{});
  CHECK(location_equal("the leaf", "leaf"));
  CHECK(location_equal("leaves", "leaf"));
  CHECK_FALSE(location_equal("stem", "leaf"));
}

TEST_CASE("location_match accepts sub-phrases after normalization") {
  CHECK(location_match("leaf", "the leaf"));
  CHECK(location_match("leaves", "leaf"));
  CHECK_FALSE(location_match("stem", "leaf"));
  CHECK(location_match("ocean floor", "the deep ocean floor"));
  CHECK_FALSE(location_match("the deep ocean floor", "ocean floor"));  // not symmetric
  CHECK_FALSE(location_match("the", "leaf"));  // empty after normalization
  CHECK(location_match("the", "a"));           // both empty
}

TEST_CASE("location_match is reflexive and stopword-insensitive in gold") {
  const char* samples[] = {"leaf", "ocean floor", "the soil", "carbon dioxide"};
  for (const char* s : samples) {
    CHECK(location_match(s, s));
    CHECK(location_match(s, std::string("the ") + s));
  }
}

TEST_CASE("find_occurrences matches token subsequences case-insensitively") {
  auto tokens = tokenize("Carbon dioxide enters the leaf; carbon dioxide stays.");
  CHECK(find_occurrences(tokens, "carbon dioxide") == std::vector<std::size_t>{0, 6});
  CHECK(find_occurrences(tokens, "Leaf") == std::vector<std::size_t>{4});
  CHECK(find_occurrences(tokens, "water").empty());
  CHECK(find_occurrences(tokens, "").empty());
}
