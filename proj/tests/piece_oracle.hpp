#pragma once

// Brute-force common-subword piece oracle, independent of the library's
// pairwise-overlap enumeration: read every word at every position of the
// symmetrized set, count distinct positions, keep subword-maximal hits.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cubsc/word.hpp"

namespace cubsc_test {

inline std::set<std::string> brute_force_maximal_pieces(
    const std::vector<std::string>& relators) {
  using namespace cubsc;
  auto occ = symmetrized_set(relators);
  int maxlen = 0;
  for (const auto& r : relators) maxlen = std::max(maxlen, (int)r.size());
  std::map<std::string, std::set<std::vector<int>>> positions;
  for (const auto& o : occ) {
    int cap = static_cast<int>(o.word.size()) + maxlen;
    std::string w;
    for (int len = 1; len <= cap; ++len) {
      w.push_back(cyclic_at(o.word, len - 1));
      positions[w].insert({o.relator, o.inverted ? 1 : 0, o.shift});
    }
  }
  // A word is a piece if it is readable at two distinct positions whose
  // relator lengths can carry it (overlaps longer than n_i + n_j wrap
  // both cycles forever and are capped there, cf. Fine and Wilf).
  std::set<std::string> pieces;
  for (auto& [w, pos] : positions) {
    if (pos.size() < 2) continue;
    std::vector<int> lens;
    for (const auto& t : pos)
      lens.push_back(static_cast<int>(relators[t[0]].size()));
    std::sort(lens.rbegin(), lens.rend());
    if (static_cast<int>(w.size()) <= lens[0] + lens[1]) pieces.insert(w);
  }
  std::set<std::string> maximal;
  for (const auto& w : pieces) {
    bool contained = false;
    for (const auto& z : pieces)
      if (z.size() > w.size() && z.find(w) != std::string::npos) {
        contained = true;
        break;
      }
    if (!contained) maximal.insert(w);
  }
  return maximal;
}

}  // namespace cubsc_test
