#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubsc/word.hpp"

using namespace cubsc;

TEST_CASE("free reduction") {
  CHECK(free_reduce("") == "");
  CHECK(free_reduce("aA") == "");
  CHECK(free_reduce("abBA") == "");
  CHECK(free_reduce("abAB") == "abAB");
  CHECK(free_reduce("aabAAbb") == "aabAAbb");
  CHECK(free_reduce("baBAab") == "bb");
  CHECK(is_freely_reduced("abAB"));
  CHECK(!is_freely_reduced("abBA"));
}

TEST_CASE("cyclic reduction predicate") {
  CHECK(is_cyclically_reduced("abAB"));
  CHECK(is_cyclically_reduced("aba"));
  CHECK(is_cyclically_reduced("a"));
  CHECK(!is_cyclically_reduced("abA"));
  CHECK(!is_cyclically_reduced("aAb"));
}

TEST_CASE("inverse and rotation") {
  CHECK(inverse_word("abAB") == "baBA");
  CHECK(rotate_word("abcd", 1) == "bcda");
  CHECK(rotate_word("abcd", 4) == "abcd");
  CHECK(least_rotation("bca") == "abc");
  CHECK(cyclic_canonical("abAB") == cyclic_canonical("BabA"));
  CHECK(cyclic_canonical("abAB") == cyclic_canonical(inverse_word("abAB")));
}

TEST_CASE("symmetrized set indexes all shifts of both orientations") {
  auto occ = symmetrized_set({"abAB"});
  CHECK(occ.size() == 8);
  // Distinct (relator, orientation, shift) triples, words per position.
  bool found = false;
  for (auto& o : occ)
    if (!o.inverted && o.shift == 1) {
      CHECK(o.word == "bABa");
      found = true;
    }
  CHECK(found);
}
