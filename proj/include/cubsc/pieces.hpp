#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cubsc/presentation.hpp"

namespace cubsc {

// A stored maximal piece. Classical pieces are words; square-class pieces
// are dart paths in a cone with their images in the base.
struct Piece {
  enum Kind { Cone, Wall };
  Kind kind = Cone;
  std::string word;  // classical
  int relator_a = -1, shift_a = 0;
  bool inv_a = false;
  int relator_b = -1, shift_b = 0;
  bool inv_b = false;
  bool capped = false;  // overlap ran around both cycles (proper powers)

  int cone = -1;  // square class: the Y_i carrying the piece
  int other = -1;            // j for cone pieces, hyperplane id for wall pieces
  int component = -1;
  std::vector<int> cone_darts;   // a longest path in the component
  std::vector<int> image_darts;  // its image in the base
  bool cyclic_component = false;

  int diameter() const {
    if (!word.empty()) return static_cast<int>(word.size());
    return static_cast<int>(cone_darts.size());
  }
};

// Component of a fiber product, kept as an automaton for membership
// queries over square-class presentations.
struct PieceSource {
  Piece::Kind kind = Piece::Cone;
  int cone = -1;
  int other = -1;
  int component = -1;
  int n_vertices = 0;
  struct Edge {
    int from, to;
    int cone_dart;
    int image_dart;
  };
  std::vector<Edge> edges;  // both dart directions
  bool cyclic = false;
  int diameter = 0;  // longest path when acyclic
};

class PieceSet {
 public:
  PresentationClass cls = PresentationClass::Classical;
  const Presentation* presentation = nullptr;

  std::vector<Piece> maximal;        // deduped, sorted by (length, word)
  std::vector<PieceSource> sources;  // square class only
  bool unbounded = false;            // some overlap has no length bound
  bool any_wall = false;             // wall pieces present (over-approximated)

  // M: 0 when empty; meaningful only when !unbounded.
  int max_diameter() const;

  bool is_piece_word(const std::string& w, bool cone_only = false) const;
  bool is_piece_path(int cone, const std::vector<int>& darts,
                     bool cone_only = false) const;

  // Minimal decomposition into 1-cubes and pieces; 0 only for the empty
  // path. Classical paths are words.
  int piece_length_word(const std::string& w, bool cone_only = false) const;
  int piece_length_path(int cone, const std::vector<int>& darts,
                        bool cone_only = false) const;
  // Decomposition witness: segment boundaries of one minimal splitting.
  std::vector<int> decompose_word(const std::string& w,
                                  bool cone_only = false) const;

  // Distinct image dart paths of all pieces (all subpaths of maximal
  // pieces), for lifting into cover balls. Sorted by (length, lex).
  std::vector<std::vector<int>> piece_image_paths() const;

  // Deterministic listing, one maximal piece per line.
  std::vector<std::string> listing() const;
};

PieceSet enumerate_cone_pieces(const Presentation& p);
PieceSet enumerate_wall_pieces(const Presentation& p);
// Both kinds merged; the form the rest of the library consumes.
PieceSet enumerate_pieces(const Presentation& p);

}  // namespace cubsc
