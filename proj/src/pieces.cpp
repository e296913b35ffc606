#include "cubsc/pieces.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace cubsc {

namespace {

bool piece_order(const Piece& a, const Piece& b) {
  if (a.diameter() != b.diameter()) return a.diameter() < b.diameter();
  if (a.word != b.word) return a.word < b.word;
  if (a.cone != b.cone) return a.cone < b.cone;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.other != b.other) return a.other < b.other;
  return a.cone_darts < b.cone_darts;
}

// Longest common prefix of two periodic expansions, capped.
int periodic_lcp(const std::string& u, const std::string& v, int cap) {
  for (int k = 0; k < cap; ++k)
    if (cyclic_at(u, k) != cyclic_at(v, k)) return k;
  return cap;
}

void enumerate_classical_cone_pieces(const Presentation& p, PieceSet& out) {
  auto occ = symmetrized_set(p.relators);
  std::map<std::string, Piece> best;  // word -> provenance witness
  for (std::size_t a = 0; a < occ.size(); ++a) {
    for (std::size_t b = a + 1; b < occ.size(); ++b) {
      int cap = static_cast<int>(occ[a].word.size() + occ[b].word.size());
      int lcp = periodic_lcp(occ[a].word, occ[b].word, cap);
      if (lcp == 0) continue;
      std::string w;
      for (int k = 0; k < lcp; ++k) w.push_back(cyclic_at(occ[a].word, k));
      Piece piece;
      piece.kind = Piece::Cone;
      piece.word = w;
      piece.relator_a = occ[a].relator;
      piece.shift_a = occ[a].shift;
      piece.inv_a = occ[a].inverted;
      piece.relator_b = occ[b].relator;
      piece.shift_b = occ[b].shift;
      piece.inv_b = occ[b].inverted;
      piece.capped = (lcp == cap);
      if (piece.capped) out.unbounded = true;
      auto it = best.find(w);
      if (it == best.end()) best.emplace(std::move(w), std::move(piece));
    }
  }
  // Keep only subword-maximal words.
  std::vector<Piece> all;
  for (auto& [w, piece] : best) all.push_back(piece);
  for (auto& piece : all) {
    bool contained = false;
    for (auto& other : all) {
      if (other.word.size() <= piece.word.size()) continue;
      if (other.word.find(piece.word) != std::string::npos) {
        contained = true;
        break;
      }
    }
    if (!contained) out.maximal.push_back(piece);
  }
  std::sort(out.maximal.begin(), out.maximal.end(), piece_order);
}

// Longest simple path in an acyclic component together with endpoints.
struct ComponentGraph {
  int n = 0;
  std::vector<PieceSource::Edge> edges;
  std::vector<std::vector<int>> adj;  // edge indices per vertex
};

std::pair<int, std::vector<int>> longest_path(const ComponentGraph& g) {
  // Double sweep works on trees; our acyclic components are forests per
  // connected component, i.e. trees.
  auto bfs = [&](int src) {
    std::vector<int> dist(g.n, -1), via(g.n, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    int far = src;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (dist[v] > dist[far]) far = v;
      for (int e : g.adj[v]) {
        int w = g.edges[e].to;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          via[w] = e;
          q.push(w);
        }
      }
    }
    return std::tuple<int, std::vector<int>, std::vector<int>>(far, dist, via);
  };
  auto [far1, d1, via1] = bfs(0);
  auto [far2, d2, via2] = bfs(far1);
  std::vector<int> path_edges;
  for (int v = far2; via2[v] >= 0; v = g.edges[via2[v]].from)
    path_edges.push_back(via2[v]);
  std::reverse(path_edges.begin(), path_edges.end());
  return {d2[far2], path_edges};
}

void add_square_sources(const ComplexMorphism& f,
                        const ComplexMorphism& g, Piece::Kind kind, int cone,
                        int other, bool exclude_diagonal, PieceSet& out) {
  FiberProduct fp = fiber_product(f, g);
  int diag_component = -1;
  if (exclude_diagonal) {
    for (std::size_t v = 0; v < fp.vertices.size(); ++v)
      if (fp.vertices[v].first == fp.vertices[v].second) {
        diag_component = fp.component[v];
        break;
      }
  }
  for (int comp = 0; comp < fp.n_components; ++comp) {
    if (comp == diag_component) continue;
    // Collect the component's vertices and edges.
    std::vector<int> vmap(fp.vertices.size(), -1);
    ComponentGraph cg;
    for (std::size_t v = 0; v < fp.vertices.size(); ++v)
      if (fp.component[v] == comp) vmap[v] = cg.n++;
    int edge_pairs = 0;
    cg.adj.resize(cg.n);
    for (int d = 0; d < fp.n_darts(); ++d) {
      int u = fp.dart_from[d], v = fp.dart_from[d ^ 1];
      if (fp.component[u] != comp) continue;
      PieceSource::Edge e;
      e.from = vmap[u];
      e.to = vmap[v];
      e.cone_dart = fp.dart_pair[d].first;
      e.image_dart = f.dart_map[fp.dart_pair[d].first];
      cg.adj[e.from].push_back(static_cast<int>(cg.edges.size()));
      cg.edges.push_back(e);
      if ((d & 1) == 0) ++edge_pairs;
    }
    if (cg.n <= 1 && edge_pairs == 0) continue;  // diameter-0 pieces discarded
    PieceSource src;
    src.kind = kind;
    src.cone = cone;
    src.other = other;
    src.component = comp;
    src.n_vertices = cg.n;
    src.edges = cg.edges;
    src.cyclic = (edge_pairs >= cg.n);  // connected: tree iff E = V - 1
    Piece piece;
    piece.kind = kind;
    piece.cone = cone;
    piece.other = other;
    piece.component = comp;
    piece.cyclic_component = src.cyclic;
    if (src.cyclic) {
      out.unbounded = true;
      src.diameter = -1;
    } else {
      auto [diam, path_edges] = longest_path(cg);
      src.diameter = diam;
      for (int e : path_edges) {
        piece.cone_darts.push_back(cg.edges[e].cone_dart);
        piece.image_darts.push_back(cg.edges[e].image_dart);
      }
    }
    if (kind == Piece::Wall) out.any_wall = true;
    out.sources.push_back(std::move(src));
    out.maximal.push_back(std::move(piece));
  }
}

void enumerate_square_cone_pieces(const Presentation& p, PieceSet& out) {
  for (int i = 0; i < p.n_cones(); ++i)
    for (int j = 0; j < p.n_cones(); ++j)
      add_square_sources(p.cone_map(i), p.cone_map(j), Piece::Cone, i, j,
                         /*exclude_diagonal=*/i == j, out);
  std::sort(out.maximal.begin(), out.maximal.end(), piece_order);
}

void enumerate_square_wall_pieces(const Presentation& p, PieceSet& out) {
  Hyperplanes h = hyperplanes_of(p.base());
  std::vector<Subcomplex> carriers;
  for (int hp = 0; hp < h.count; ++hp)
    carriers.push_back(hyperplane_carrier(p.base(), h, hp));
  for (int i = 0; i < p.n_cones(); ++i) {
    for (int hp = 0; hp < h.count; ++hp) {
      const Subcomplex& carrier = carriers[hp];
      ComplexMorphism inclusion;
      inclusion.source = &carrier.complex;
      inclusion.target = &p.base();
      inclusion.vertex_map = carrier.vertex_in_ambient;
      inclusion.dart_map = carrier.dart_in_ambient;
      inclusion.square_map.assign(carrier.complex.squares.size(), 0);
      add_square_sources(p.cone_map(i), inclusion, Piece::Wall, i, hp,
                         /*exclude_diagonal=*/false, out);
    }
  }
  std::sort(out.maximal.begin(), out.maximal.end(), piece_order);
}

}  // namespace

PieceSet enumerate_cone_pieces(const Presentation& p) {
  PieceSet out;
  out.cls = p.cls;
  out.presentation = &p;
  if (p.cls == PresentationClass::Classical)
    enumerate_classical_cone_pieces(p, out);
  else
    enumerate_square_cone_pieces(p, out);
  return out;
}

PieceSet enumerate_wall_pieces(const Presentation& p) {
  PieceSet out;
  out.cls = p.cls;
  out.presentation = &p;
  // Classical carriers are single edges, so wall pieces are vertices and
  // are discarded.
  if (p.cls == PresentationClass::Square) enumerate_square_wall_pieces(p, out);
  return out;
}

PieceSet enumerate_pieces(const Presentation& p) {
  PieceSet cone = enumerate_cone_pieces(p);
  if (p.cls == PresentationClass::Classical) return cone;
  PieceSet wall = enumerate_wall_pieces(p);
  for (auto& piece : wall.maximal) cone.maximal.push_back(piece);
  for (auto& src : wall.sources) cone.sources.push_back(src);
  cone.unbounded = cone.unbounded || wall.unbounded;
  cone.any_wall = wall.any_wall;
  std::sort(cone.maximal.begin(), cone.maximal.end(), piece_order);
  return cone;
}

int PieceSet::max_diameter() const {
  int m = 0;
  for (const auto& piece : maximal) m = std::max(m, piece.diameter());
  return m;
}

bool PieceSet::is_piece_word(const std::string& w, bool cone_only) const {
  if (w.empty()) return false;
  for (const auto& piece : maximal) {
    if (cone_only && piece.kind == Piece::Wall) continue;
    if (!piece.word.empty() && piece.word.find(w) != std::string::npos)
      return true;
  }
  return false;
}

bool PieceSet::is_piece_path(int cone, const std::vector<int>& darts,
                             bool cone_only) const {
  if (darts.empty()) return false;
  if (cls == PresentationClass::Classical) {
    std::string w;
    for (int d : darts) {
      // Dart 2k of cone i reads relator letter k.
      const std::string& r = presentation->relators[cone];
      w.push_back((d & 1) ? inv_letter(r[d / 2]) : r[d / 2]);
    }
    return is_piece_word(w, cone_only);
  }
  // Automaton walk over every source of this cone.
  for (const auto& src : sources) {
    if (src.cone != cone) continue;
    if (cone_only && src.kind == Piece::Wall) continue;
    std::vector<char> state(src.n_vertices, 1);
    bool alive = true;
    for (int d : darts) {
      std::vector<char> next(src.n_vertices, 0);
      alive = false;
      for (const auto& e : src.edges)
        if (e.cone_dart == d && state[e.from]) {
          next[e.to] = 1;
          alive = true;
        }
      state.swap(next);
      if (!alive) break;
    }
    if (alive) return true;
  }
  // Parallelism closure: equal hyperplane signatures. A path whose image
  // signature matches a contiguous piece of the same length is a piece.
  Hyperplanes h = hyperplanes_of(presentation->base());
  std::vector<int> sig;
  for (int d : darts)
    sig.push_back(h.edge_class[presentation->cone_map(cone).dart_map[d] / 2]);
  const int want = static_cast<int>(darts.size());
  for (const auto& src : sources) {
    if (cone_only && src.kind == Piece::Wall) continue;
    // Enumerate length-|darts| walks in the component, bounded.
    std::vector<std::vector<int>> adj(src.n_vertices);
    for (std::size_t e = 0; e < src.edges.size(); ++e)
      adj[src.edges[e].from].push_back(static_cast<int>(e));
    long budget = 20000;
    std::vector<std::pair<int, std::vector<int>>> stack;
    for (int v = 0; v < src.n_vertices; ++v) stack.push_back({v, {}});
    while (!stack.empty()) {
      auto [v, cur] = stack.back();
      stack.pop_back();
      if (static_cast<int>(cur.size()) == want) {
        if (cur == sig) return true;
        continue;
      }
      if (--budget < 0) break;
      for (int e : adj[v]) {
        auto next = cur;
        next.push_back(h.edge_class[src.edges[e].image_dart / 2]);
        stack.push_back({src.edges[e].to, std::move(next)});
      }
    }
  }
  return false;
}

namespace {

int piece_length_dp(int n, const std::function<bool(int, int)>& segment_ok) {
  std::vector<int> dp(n + 1, n + 1);
  dp[0] = 0;
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j < k; ++j) {
      if (dp[j] + 1 >= dp[k]) continue;
      if (k - j == 1 || segment_ok(j, k)) dp[k] = dp[j] + 1;
    }
  return dp[n];
}

}  // namespace

int PieceSet::piece_length_word(const std::string& w, bool cone_only) const {
  return piece_length_dp(static_cast<int>(w.size()), [&](int j, int k) {
    return is_piece_word(w.substr(j, k - j), cone_only);
  });
}

int PieceSet::piece_length_path(int cone, const std::vector<int>& darts,
                                bool cone_only) const {
  return piece_length_dp(static_cast<int>(darts.size()), [&](int j, int k) {
    return is_piece_path(cone, std::vector<int>(darts.begin() + j, darts.begin() + k),
                         cone_only);
  });
}

std::vector<int> PieceSet::decompose_word(const std::string& w,
                                          bool cone_only) const {
  int n = static_cast<int>(w.size());
  std::vector<int> dp(n + 1, n + 1), from(n + 1, -1);
  dp[0] = 0;
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j < k; ++j) {
      if (dp[j] + 1 >= dp[k]) continue;
      if (k - j == 1 || is_piece_word(w.substr(j, k - j), cone_only)) {
        dp[k] = dp[j] + 1;
        from[k] = j;
      }
    }
  std::vector<int> cuts;
  for (int k = n; k > 0; k = from[k]) cuts.push_back(k);
  cuts.push_back(0);
  std::reverse(cuts.begin(), cuts.end());
  return cuts;
}

std::vector<std::vector<int>> PieceSet::piece_image_paths() const {
  std::set<std::vector<int>> seen;
  if (cls == PresentationClass::Classical) {
    for (const auto& piece : maximal) {
      std::vector<int> img = presentation->word_to_base_path(piece.word);
      for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j <= img.size(); ++j)
          seen.insert(std::vector<int>(img.begin() + i, img.begin() + j));
    }
  } else {
    for (const auto& piece : maximal) {
      const auto& img = piece.image_darts;
      for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j <= img.size(); ++j)
          seen.insert(std::vector<int>(img.begin() + i, img.begin() + j));
    }
  }
  std::vector<std::vector<int>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::string> PieceSet::listing() const {
  std::vector<std::string> lines;
  for (const auto& piece : maximal) {
    std::string line;
    if (!piece.word.empty()) {
      line = piece.word;
      line += "\tcone\t";
      line += "r" + std::to_string(piece.relator_a + 1) +
              (piece.inv_a ? "-" : "+") + "@" + std::to_string(piece.shift_a);
      line += "\t";
      line += "r" + std::to_string(piece.relator_b + 1) +
              (piece.inv_b ? "-" : "+") + "@" + std::to_string(piece.shift_b);
      if (piece.capped) line += "\tcapped";
    } else {
      for (std::size_t k = 0; k < piece.cone_darts.size(); ++k) {
        if (k) line += ",";
        line += std::to_string(piece.cone_darts[k]);
      }
      if (piece.cyclic_component) line = "<cyclic>";
      line += piece.kind == Piece::Wall ? "\twall\t" : "\tcone\t";
      line += "Y" + std::to_string(piece.cone + 1);
      line += piece.kind == Piece::Wall
                  ? "\tH" + std::to_string(piece.other)
                  : "\tY" + std::to_string(piece.other + 1);
      line += "\tcomp" + std::to_string(piece.component);
    }
    lines.push_back(line);
  }
  return lines;
}

}  // namespace cubsc
