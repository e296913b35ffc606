#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "cubsc/complex.hpp"
#include "cubsc/presentation.hpp"

using namespace cubsc;

namespace {

// One vertex, loops a (darts 0,1) and b (darts 2,3), square abAB.
SquareComplex torus_complex() {
  SquareComplex c;
  c.add_vertex();
  c.add_edge(0, 0);
  c.add_edge(0, 0);
  c.add_square({0, 2, 1, 3});
  return c;
}

SquareComplex relabeled(const SquareComplex& c, std::mt19937& rng) {
  std::vector<int> vperm(c.n_vertices);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::vector<int> eperm(c.n_edges());
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  std::vector<int> dperm(c.n_darts());
  for (int e = 0; e < c.n_edges(); ++e) {
    bool flip = rng() & 1;
    dperm[2 * e] = 2 * eperm[e] + (flip ? 1 : 0);
    dperm[2 * e + 1] = 2 * eperm[e] + (flip ? 0 : 1);
  }
  SquareComplex out;
  out.n_vertices = c.n_vertices;
  out.dart_from.assign(c.n_darts(), -1);
  for (int d = 0; d < c.n_darts(); ++d)
    out.dart_from[dperm[d]] = vperm[c.from(d)];
  for (const auto& q : c.squares)
    out.add_square({dperm[q[0]], dperm[q[1]], dperm[q[2]], dperm[q[3]]});
  return out;
}

}  // namespace

TEST_CASE("torus complex is NPC") {
  auto c = torus_complex();
  REQUIRE(!c.structural_error());
  CHECK(check_npc(c).ok);
}

TEST_CASE("graphs are vacuously NPC") {
  SquareComplex g;
  g.add_vertex();
  g.add_edge(0, 0);
  CHECK(check_npc(g).ok);
}

TEST_CASE("two squares sharing two consecutive edges violate the link condition") {
  // Wedge of six loops; both squares start with the corner ab.
  SquareComplex c;
  c.add_vertex();
  int a = c.add_edge(0, 0);
  int b = c.add_edge(0, 0);
  int x = c.add_edge(0, 0);
  int y = c.add_edge(0, 0);
  int z = c.add_edge(0, 0);
  int w = c.add_edge(0, 0);
  c.add_square({a, b, x, y});
  c.add_square({a, b, z, w});
  auto v = check_npc(c);
  CHECK(!v.ok);
  bool has_bigon = false;
  for (auto& s : v.violations)
    if (s.find("bigon") != std::string::npos) has_bigon = true;
  CHECK(has_bigon);
}

TEST_CASE("NPC verdict is invariant under relabeling") {
  std::mt19937 rng(7);
  auto c = torus_complex();
  for (int trial = 0; trial < 20; ++trial) {
    auto d = relabeled(c, rng);
    CHECK(check_npc(d).ok == check_npc(c).ok);
  }
}

TEST_CASE("cyclically reduced relator cycle maps by a local isometry") {
  auto p = Presentation::classical({'a', 'b'}, {"abAB"});
  CHECK(check_local_isometry(p.cone_map(0)).ok);
}

TEST_CASE("a folded cycle is rejected") {
  // Cycle reading abAa contains the backtrack Aa.
  CHECK_THROWS_AS(Presentation::classical({'a', 'b'}, {"abAa"}),
                  ParseError);
}

TEST_CASE("square-completion violation: diagonal cycle in the torus") {
  // Y is a 2-cycle reading ab; X the torus complex with square abAB.
  SquareComplex X = torus_complex();
  SquareComplex Y;
  Y.add_vertex();
  Y.add_vertex();
  Y.add_edge(0, 1);
  Y.add_edge(1, 0);
  ComplexMorphism m;
  m.source = &Y;
  m.target = &X;
  m.vertex_map = {0, 0};
  m.dart_map = {0, 1, 2, 3};  // first edge -> a, second -> b
  auto v = check_local_isometry(m);
  CHECK(!v.ok);
  bool missing_square = false;
  for (auto& s : v.violations)
    if (s.find("missing square") != std::string::npos) missing_square = true;
  CHECK(missing_square);
}

TEST_CASE("hyperplanes of the torus complex") {
  auto c = torus_complex();
  auto h = hyperplanes_of(c);
  CHECK(h.count == 2);
  CHECK(h.edge_class[0] != h.edge_class[1]);
  auto carrier = hyperplane_carrier(c, h, h.edge_class[1]);
  // The b-hyperplane carrier contains the square, so both edges.
  CHECK(carrier.complex.n_edges() == 2);
  CHECK(carrier.complex.squares.size() == 1);
}

TEST_CASE("fiber product of two relator cycles over the wedge") {
  auto p = Presentation::classical({'a', 'b'}, {"ab", "ab"});
  auto fp = fiber_product(p.cone_map(0), p.cone_map(1));
  // Both cycles read ab: the product is the shared cycle (as the
  // diagonal-like component) plus two isolated mismatched vertices.
  CHECK(fp.vertices.size() == 4);
  CHECK(fp.n_components == 3);
  int diag_size = 0;
  for (std::size_t v = 0; v < fp.vertices.size(); ++v)
    if (fp.component[v] == fp.component[0]) ++diag_size;
  CHECK(diag_size == 2);
}
