#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubsc/pieces.hpp"
#include "piece_oracle.hpp"

using namespace cubsc;

namespace {

Presentation genus2() {
  return Presentation::classical({'a', 'b', 'c', 'd'}, {"abABcdCD"});
}

std::set<std::string> maximal_words(const PieceSet& ps) {
  std::set<std::string> out;
  for (const auto& piece : ps.maximal) out.insert(piece.word);
  return out;
}

std::string random_cyclically_reduced(std::mt19937& rng, int len) {
  const std::string letters = "abAB";
  while (true) {
    std::string w;
    for (int i = 0; i < len; ++i) w.push_back(letters[rng() % 4]);
    if (is_cyclically_reduced(w)) return w;
  }
}

// Exhaustive minimal decomposition count, implementation-independent.
int brute_piece_length(const std::string& w, const PieceSet& ps, int j = 0) {
  if (j == static_cast<int>(w.size())) return 0;
  int best = 1 << 20;
  for (int k = j + 1; k <= static_cast<int>(w.size()); ++k) {
    if (k - j > 1 && !ps.is_piece_word(w.substr(j, k - j))) continue;
    best = std::min(best, 1 + brute_piece_length(w, ps, k));
  }
  return best;
}

}  // namespace

TEST_CASE("free presentation has no pieces") {
  auto p = Presentation::classical({'a', 'b'}, {});
  auto ps = enumerate_pieces(p);
  CHECK(ps.maximal.empty());
  CHECK(ps.max_diameter() == 0);
}

TEST_CASE("a^(n-1) is a piece of <a,b | a^n w>") {
  auto p = Presentation::classical({'a', 'b'}, {"aaaaabaabb"});  // a^5 b aabb
  auto ps = enumerate_pieces(p);
  CHECK(ps.is_piece_word("aaaa"));
  CHECK(!ps.is_piece_word("aaaaa"));
  CHECK(ps.piece_length_word("aaaa") == 1);
}

TEST_CASE("torus maximal pieces are exactly the 1-letter words") {
  auto p = Presentation::classical({'a', 'b'}, {"abAB"});
  auto ps = enumerate_pieces(p);
  CHECK(maximal_words(ps) ==
        std::set<std::string>{"a", "A", "b", "B"});
  CHECK(ps.max_diameter() == 1);
}

TEST_CASE("genus-2 pieces have diameter 1 and the relator is not a piece") {
  auto p = genus2();
  auto ps = enumerate_pieces(p);
  CHECK(ps.max_diameter() == 1);
  CHECK(!ps.is_piece_word("ab"));
  CHECK(!ps.is_piece_word("abABcdCD"));
  CHECK(ps.is_piece_word("a"));
  CHECK(ps.piece_length_word("abABcdCD") == 8);
  CHECK(ps.piece_length_word("") == 0);
}

TEST_CASE("subpath closure of pieces") {
  auto p = Presentation::classical({'a', 'b'}, {"aaaaabaabb"});
  auto ps = enumerate_pieces(p);
  for (const auto& piece : ps.maximal) {
    const std::string& w = piece.word;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j <= w.size(); ++j)
        CHECK(ps.is_piece_word(w.substr(i, j - i)));
  }
}

TEST_CASE("piece_length matches the brute-force decomposition search") {
  auto p = Presentation::classical({'a', 'b'}, {"aaaaabaabb"});
  auto ps = enumerate_pieces(p);
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    std::string w = random_cyclically_reduced(rng, 2 + rng() % 6);
    CHECK(ps.piece_length_word(w) == brute_piece_length(w, ps));
  }
  CHECK(ps.piece_length_word("aaaa") == 1);
}

TEST_CASE("piece_length is subadditive under concatenation") {
  auto p = genus2();
  auto ps = enumerate_pieces(p);
  std::mt19937 rng(5);
  const std::string letters = "abABcdCD";
  for (int t = 0; t < 40; ++t) {
    std::string u, v;
    for (int i = 0; i < static_cast<int>(1 + rng() % 4); ++i)
      u.push_back(letters[rng() % 8]);
    for (int i = 0; i < static_cast<int>(1 + rng() % 4); ++i)
      v.push_back(letters[rng() % 8]);
    CHECK(ps.piece_length_word(u + v) <=
          ps.piece_length_word(u) + ps.piece_length_word(v));
  }
}

TEST_CASE("oracle equivalence on random classical presentations") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    int n_rel = 1 + rng() % 3;
    std::vector<std::string> rels;
    int total = 0;
    for (int i = 0; i < n_rel && total < 20; ++i) {
      int len = 2 + rng() % 8;
      rels.push_back(random_cyclically_reduced(rng, len));
      total += len;
    }
    auto p = Presentation::classical({'a', 'b'}, rels);
    auto ps = enumerate_pieces(p);
    auto oracle = cubsc_test::brute_force_maximal_pieces(rels);
    CHECK(maximal_words(ps) == oracle);
  }
}

TEST_CASE("wall pieces are empty for classical presentations") {
  auto p = genus2();
  auto ps = enumerate_wall_pieces(p);
  CHECK(ps.maximal.empty());
}

TEST_CASE("torus square complex with an a-cycle cone has wall pieces") {
  const char* text =
      "[complex X]\n"
      "vertices 1\n"
      "edge 0 0\n"
      "edge 0 0\n"
      "square 0 2 1 3\n"
      "[cone Y1]\n"
      "vertices 1\n"
      "edge 0 0\n"
      "[map Y1]\n"
      "vertex 0 0\n"
      "dart 0 0\n";
  auto p = parse_presentation(text);
  auto walls = enumerate_wall_pieces(p);
  // The a-cycle lies inside the b-hyperplane carrier: a cyclic (hence
  // unbounded) wall overlap, plus the degenerate a-hyperplane component.
  CHECK(!walls.maximal.empty());
  CHECK(walls.unbounded);
  CHECK(walls.any_wall);
  // The a-loop is a wall piece of every length.
  CHECK(walls.is_piece_path(0, {0}));
  CHECK(walls.is_piece_path(0, {0, 0}));
}

TEST_CASE("piece image paths are deduped subwords") {
  auto p = Presentation::classical({'a', 'b'}, {"aaaaabaabb"});
  auto ps = enumerate_pieces(p);
  auto paths = ps.piece_image_paths();
  CHECK(!paths.empty());
  std::set<std::vector<int>> dedup(paths.begin(), paths.end());
  CHECK(dedup.size() == paths.size());
  // a^4 is maximal, so a, aa, aaa, aaaa all appear.
  std::vector<int> a1 = p.word_to_base_path("a");
  std::vector<int> a4 = p.word_to_base_path("aaaa");
  CHECK(dedup.count(a1));
  CHECK(dedup.count(a4));
}
