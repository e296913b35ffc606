#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cubsc/complex.hpp"

namespace cubsc {

enum class Tri { True, False, Unknown };

// One rewriting move on a dart path. Flips replace two consecutive darts
// running along a square by the complementary two darts.
struct RewriteStep {
  enum Kind { FreeReduce, SquareFlip } kind;
  int pos = 0;
  int square = -1;
  std::array<int, 2> removed{-1, -1};
  std::array<int, 2> inserted{-1, -1};  // flips only
};

// Budgeted nonincreasing rewriting over a square complex: free reduction
// shortens, square flips preserve length. In an NPC complex this closure
// reaches every geodesic representative of a path's homotopy class, so
// the lexicographically least shortest word is a canonical form.
class PathRewriter {
 public:
  explicit PathRewriter(const SquareComplex& c, int budget_factor = 4,
                        int min_budget = 256);

  // Lex-least shortest equivalent dart word; nullopt on budget exhaustion.
  std::optional<std::vector<int>> canonical(const std::vector<int>& darts) const;

  // Closed paths only: reduces to the empty path iff null-homotopic.
  Tri null_homotopic(const std::vector<int>& darts) const;

  // Moves taking the path to the empty word, if the search finds them.
  std::optional<std::vector<RewriteStep>> trivializing_trace(
      const std::vector<int>& darts) const;

  const SquareComplex& complex() const { return *complex_; }

 private:
  struct Closure {
    bool exhausted = false;          // full closure computed within budget
    std::vector<int> best;           // lex-least shortest visited
    bool found_empty = false;
    std::vector<RewriteStep> trace;  // to the empty word when found
  };
  Closure close(const std::vector<int>& darts, bool want_trace) const;

  const SquareComplex* complex_;
  int budget_factor_;
  int min_budget_;
  // (a, b) -> list of (square, c, d) flip replacements.
  std::map<std::pair<int, int>, std::vector<std::array<int, 3>>> flips_;
};

// Replays a trace against a dart word; used to re-validate certificates.
std::vector<int> replay_rewrites(const std::vector<int>& darts,
                                 const std::vector<RewriteStep>& steps);

}  // namespace cubsc
