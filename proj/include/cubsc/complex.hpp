#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

// Square complexes are stored combinatorially: darts come in opposite
// pairs (2k, 2k+1), squares are closed dart paths of length 4.

namespace cubsc {

struct SquareComplex {
  int n_vertices = 0;
  std::vector<int> dart_from;               // origin vertex per dart
  std::vector<std::array<int, 4>> squares;  // attaching paths

  int n_darts() const { return static_cast<int>(dart_from.size()); }
  int n_edges() const { return n_darts() / 2; }
  static int opposite(int d) { return d ^ 1; }
  int from(int d) const { return dart_from[d]; }
  int to(int d) const { return dart_from[d ^ 1]; }

  int add_vertex() { return n_vertices++; }
  // Returns the forward dart u -> v; the opposite dart is forward^1.
  int add_edge(int u, int v) {
    int d = n_darts();
    dart_from.push_back(u);
    dart_from.push_back(v);
    return d;
  }
  void add_square(const std::array<int, 4>& path) { squares.push_back(path); }

  bool is_closed_path(const std::vector<int>& darts) const;
  // Darts at a vertex, sorted.
  std::vector<int> darts_at(int v) const;

  // Structural well-formedness: dart indices in range, squares are
  // closed length-4 paths.
  std::optional<std::string> structural_error() const;

  bool connected() const;
};

struct ComplexMorphism {
  const SquareComplex* source = nullptr;
  const SquareComplex* target = nullptr;
  std::vector<int> vertex_map;
  std::vector<int> dart_map;    // must commute with opposite
  std::vector<int> square_map;  // source square -> target square

  int map_dart(int d) const { return dart_map[d]; }
  std::optional<std::string> structural_error() const;
};

struct Verdict {
  bool ok = true;
  std::vector<std::string> violations;
};

// Gromov link condition for square complexes: every vertex link is a
// simple graph of girth >= 4.
Verdict check_npc(const SquareComplex& c);

// Locally injective + the square-completion condition: whenever the
// image of a concatenable dart pair runs along a square of the target,
// the pair runs along a square of the source.
Verdict check_local_isometry(const ComplexMorphism& m);

// True iff (a, b) appears as a consecutive dart pair in the attaching
// path of some square, read in either direction.
bool pair_in_some_square(const SquareComplex& c, int a, int b);

// Hyperplanes: edge classes under the opposite-side-of-a-square relation.
struct Hyperplanes {
  std::vector<int> edge_class;  // per edge (dart/2)
  int count = 0;
};
Hyperplanes hyperplanes_of(const SquareComplex& c);

// Carrier of a hyperplane as a subcomplex with its inclusion data:
// vertex/dart lists index into the ambient complex.
struct Subcomplex {
  SquareComplex complex;
  std::vector<int> vertex_in_ambient;
  std::vector<int> dart_in_ambient;
};
Subcomplex hyperplane_carrier(const SquareComplex& c, const Hyperplanes& h,
                              int hyperplane_id);

// Fiber product of two morphisms into the same target, 1-skeleton only.
// Vertex (a, b) with f(a) = g(b); darts likewise.
struct FiberProduct {
  std::vector<std::pair<int, int>> vertices;
  std::vector<int> dart_from;  // product darts, opposite = d ^ 1
  std::vector<std::pair<int, int>> dart_pair;
  std::vector<int> component;  // per product vertex
  int n_components = 0;

  int n_darts() const { return static_cast<int>(dart_from.size()); }
};
FiberProduct fiber_product(const ComplexMorphism& f, const ComplexMorphism& g);

}  // namespace cubsc
