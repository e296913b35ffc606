#pragma once

#include <string>
#include <vector>

// Classical words: lowercase letters are generators, uppercase their
// inverses. The empty word is the identity.

namespace cubsc {

inline char inv_letter(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A')
                                : static_cast<char>(c - 'A' + 'a');
}

bool is_word(const std::string& w);

std::string inverse_word(const std::string& w);

// Removes xX / Xx pairs until none remain.
std::string free_reduce(const std::string& w);

bool is_freely_reduced(const std::string& w);

// Freely reduced and first/last letters are not inverse to each other.
bool is_cyclically_reduced(const std::string& w);

std::string rotate_word(const std::string& w, std::size_t shift);

// Least rotation of w in lexicographic order.
std::string least_rotation(const std::string& w);

// Canonical form of a cyclic word up to rotation and inversion.
std::string cyclic_canonical(const std::string& w);

// All distinct occurrences of cyclic rotations of the relators and their
// inverses, indexed by (relator, orientation, shift). Rotation words are
// kept per occurrence: identical words at distinct positions count as
// different places.
struct SymmetrizedOccurrence {
  int relator = 0;
  bool inverted = false;
  int shift = 0;
  std::string word;
};

std::vector<SymmetrizedOccurrence> symmetrized_set(
    const std::vector<std::string>& relators);

// Letter of the cyclic word w at position i (i may exceed |w|).
inline char cyclic_at(const std::string& w, std::size_t i) {
  return w[i % w.size()];
}

}  // namespace cubsc
