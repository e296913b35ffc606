#include "cubsc/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace cubsc {

bool SquareComplex::is_closed_path(const std::vector<int>& darts) const {
  if (darts.empty()) return true;
  for (std::size_t i = 0; i + 1 < darts.size(); ++i)
    if (to(darts[i]) != from(darts[i + 1])) return false;
  return to(darts.back()) == from(darts.front());
}

std::vector<int> SquareComplex::darts_at(int v) const {
  std::vector<int> out;
  for (int d = 0; d < n_darts(); ++d)
    if (dart_from[d] == v) out.push_back(d);
  return out;
}

std::optional<std::string> SquareComplex::structural_error() const {
  if (n_darts() % 2 != 0) return "odd dart count";
  for (int d = 0; d < n_darts(); ++d)
    if (dart_from[d] < 0 || dart_from[d] >= n_vertices)
      return "dart origin out of range";
  for (std::size_t s = 0; s < squares.size(); ++s) {
    const auto& q = squares[s];
    for (int d : q)
      if (d < 0 || d >= n_darts()) return "square dart out of range";
    std::vector<int> path(q.begin(), q.end());
    if (!is_closed_path(path)) {
      std::ostringstream os;
      os << "square " << s << " attaching path not closed";
      return os.str();
    }
  }
  return std::nullopt;
}

bool SquareComplex::connected() const {
  if (n_vertices <= 1) return true;
  std::vector<char> seen(n_vertices, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int visited = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int d = 0; d < n_darts(); ++d) {
      if (dart_from[d] != v) continue;
      int w = to(d);
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        q.push(w);
      }
    }
  }
  return visited == n_vertices;
}

std::optional<std::string> ComplexMorphism::structural_error() const {
  if (!source || !target) return "missing source or target";
  if (static_cast<int>(vertex_map.size()) != source->n_vertices)
    return "vertex map size mismatch";
  if (static_cast<int>(dart_map.size()) != source->n_darts())
    return "dart map size mismatch";
  if (square_map.size() != source->squares.size())
    return "square map size mismatch";
  for (int v : vertex_map)
    if (v < 0 || v >= target->n_vertices) return "vertex image out of range";
  for (int d = 0; d < source->n_darts(); ++d) {
    int e = dart_map[d];
    if (e < 0 || e >= target->n_darts()) return "dart image out of range";
    if (dart_map[d ^ 1] != (e ^ 1)) return "dart map does not commute with opposite";
    if (target->from(e) != vertex_map[source->from(d)])
      return "dart map does not commute with endpoints";
  }
  for (std::size_t s = 0; s < square_map.size(); ++s) {
    int t = square_map[s];
    if (t < 0 || t >= static_cast<int>(target->squares.size()))
      return "square image out of range";
    // The image of the attaching path must be a rotation of the target
    // square's path, in either direction.
    std::array<int, 4> img;
    for (int k = 0; k < 4; ++k) img[k] = dart_map[source->squares[s][k]];
    const auto& tq = target->squares[t];
    bool match = false;
    for (int rot = 0; rot < 4 && !match; ++rot) {
      bool fwd = true, bwd = true;
      for (int k = 0; k < 4; ++k) {
        if (img[k] != tq[(rot + k) % 4]) fwd = false;
        if (img[k] != (tq[(rot + 4 - k) % 4] ^ 1)) bwd = false;
      }
      match = fwd || bwd;
    }
    if (!match) {
      std::ostringstream os;
      os << "square " << s << " does not map onto its image square";
      return os.str();
    }
  }
  return std::nullopt;
}

namespace {

// Link of a vertex: nodes are darts based at the vertex, edges are
// square corners. Returns edges as unordered dart pairs.
std::vector<std::pair<int, int>> link_edges(const SquareComplex& c, int v) {
  std::vector<std::pair<int, int>> out;
  for (const auto& q : c.squares) {
    for (int i = 0; i < 4; ++i) {
      int incoming = q[(i + 3) % 4];
      int outgoing = q[i];
      if (c.from(outgoing) != v) continue;
      int a = incoming ^ 1;  // direction back along the incoming edge
      int b = outgoing;
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  return out;
}

}  // namespace

Verdict check_npc(const SquareComplex& c) {
  Verdict verdict;
  if (auto err = c.structural_error()) {
    verdict.ok = false;
    verdict.violations.push_back(*err);
    return verdict;
  }
  for (int v = 0; v < c.n_vertices; ++v) {
    auto edges = link_edges(c, v);
    std::map<std::pair<int, int>, int> mult;
    for (auto& e : edges) ++mult[e];
    for (auto& [e, m] : mult) {
      std::ostringstream os;
      if (e.first == e.second) {
        os << "vertex " << v << ": link loop at dart " << e.first;
        verdict.violations.push_back(os.str());
      } else if (m > 1) {
        os << "vertex " << v << ": link bigon between darts " << e.first
           << " and " << e.second;
        verdict.violations.push_back(os.str());
      }
    }
    // Triangles in the (now simple) link graph.
    std::map<int, std::set<int>> adj;
    for (auto& [e, m] : mult) {
      if (e.first == e.second) continue;
      adj[e.first].insert(e.second);
      adj[e.second].insert(e.first);
    }
    for (auto& [a, nbrs] : adj)
      for (int b : nbrs)
        for (int x : adj[b])
          if (x > b && b > a && adj[a].count(x)) {
            std::ostringstream os;
            os << "vertex " << v << ": link triangle " << a << "-" << b << "-"
               << x;
            verdict.violations.push_back(os.str());
          }
  }
  verdict.ok = verdict.violations.empty();
  return verdict;
}

bool pair_in_some_square(const SquareComplex& c, int a, int b) {
  for (const auto& q : c.squares) {
    for (int i = 0; i < 4; ++i) {
      int x = q[i], y = q[(i + 1) % 4];
      if (x == a && y == b) return true;
      // Reverse traversal of the square reads opposite darts backwards.
      if ((y ^ 1) == a && (x ^ 1) == b) return true;
    }
  }
  return false;
}

Verdict check_local_isometry(const ComplexMorphism& m) {
  Verdict verdict;
  if (auto err = m.structural_error()) {
    verdict.ok = false;
    verdict.violations.push_back(*err);
    return verdict;
  }
  const SquareComplex& Y = *m.source;
  const SquareComplex& X = *m.target;
  // Local injectivity on darts at each vertex.
  for (int v = 0; v < Y.n_vertices; ++v) {
    auto darts = Y.darts_at(v);
    std::map<int, int> image_of;
    for (int d : darts) {
      auto [it, inserted] = image_of.emplace(m.dart_map[d], d);
      if (!inserted) {
        std::ostringstream os;
        os << "fold at vertex " << v << ": darts " << it->second << " and " << d
           << " share image " << m.dart_map[d];
        verdict.violations.push_back(os.str());
      }
    }
  }
  // Square completion.
  for (int a = 0; a < Y.n_darts(); ++a) {
    for (int b = 0; b < Y.n_darts(); ++b) {
      if (Y.to(a) != Y.from(b)) continue;
      if (!pair_in_some_square(X, m.dart_map[a], m.dart_map[b])) continue;
      if (!pair_in_some_square(Y, a, b)) {
        std::ostringstream os;
        os << "missing square: darts " << a << "," << b
           << " map into a square of the target";
        verdict.violations.push_back(os.str());
      }
    }
  }
  verdict.ok = verdict.violations.empty();
  return verdict;
}

Hyperplanes hyperplanes_of(const SquareComplex& c) {
  int n = c.n_edges();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int>* p = &parent;
  auto find = [p](int x) {
    while ((*p)[x] != x) x = (*p)[x] = (*p)[(*p)[x]];
    return x;
  };
  for (const auto& q : c.squares) {
    parent[find(q[0] / 2)] = find(q[2] / 2);
    parent[find(q[1] / 2)] = find(q[3] / 2);
  }
  Hyperplanes h;
  h.edge_class.assign(n, -1);
  std::map<int, int> renumber;
  for (int e = 0; e < n; ++e) {
    int r = find(e);
    auto [it, inserted] = renumber.emplace(r, h.count);
    if (inserted) ++h.count;
    h.edge_class[e] = it->second;
  }
  return h;
}

Subcomplex hyperplane_carrier(const SquareComplex& c, const Hyperplanes& h,
                              int hyperplane_id) {
  Subcomplex sub;
  std::vector<char> square_in(c.squares.size(), 0);
  std::vector<char> edge_in(c.n_edges(), 0);
  for (int e = 0; e < c.n_edges(); ++e)
    if (h.edge_class[e] == hyperplane_id) edge_in[e] = 1;
  for (std::size_t s = 0; s < c.squares.size(); ++s) {
    const auto& q = c.squares[s];
    for (int d : q)
      if (h.edge_class[d / 2] == hyperplane_id) square_in[s] = 1;
    if (square_in[s])
      for (int d : q) edge_in[d / 2] = 1;
  }
  std::vector<int> vertex_new(c.n_vertices, -1);
  std::vector<int> edge_new(c.n_edges(), -1);
  auto ensure_vertex = [&](int v) {
    if (vertex_new[v] < 0) {
      vertex_new[v] = sub.complex.add_vertex();
      sub.vertex_in_ambient.push_back(v);
    }
    return vertex_new[v];
  };
  for (int e = 0; e < c.n_edges(); ++e) {
    if (!edge_in[e]) continue;
    int u = ensure_vertex(c.from(2 * e));
    int v = ensure_vertex(c.to(2 * e));
    edge_new[e] = sub.complex.add_edge(u, v);
    sub.dart_in_ambient.push_back(2 * e);
    sub.dart_in_ambient.push_back(2 * e + 1);
  }
  for (std::size_t s = 0; s < c.squares.size(); ++s) {
    if (!square_in[s]) continue;
    std::array<int, 4> path;
    for (int k = 0; k < 4; ++k) {
      int d = c.squares[s][k];
      path[k] = edge_new[d / 2] | (d & 1);
    }
    sub.complex.add_square(path);
  }
  return sub;
}

FiberProduct fiber_product(const ComplexMorphism& f, const ComplexMorphism& g) {
  FiberProduct fp;
  const SquareComplex& A = *f.source;
  const SquareComplex& B = *g.source;
  std::map<std::pair<int, int>, int> vid;
  for (int a = 0; a < A.n_vertices; ++a)
    for (int b = 0; b < B.n_vertices; ++b)
      if (f.vertex_map[a] == g.vertex_map[b]) {
        vid[{a, b}] = static_cast<int>(fp.vertices.size());
        fp.vertices.emplace_back(a, b);
      }
  for (int da = 0; da < A.n_darts(); da += 2)
    for (int db = 0; db < B.n_darts(); ++db) {
      if (f.dart_map[da] != g.dart_map[db]) continue;
      int u = vid.at({A.from(da), B.from(db)});
      int v = vid.at({A.to(da), B.to(db)});
      fp.dart_from.push_back(u);
      fp.dart_from.push_back(v);
      fp.dart_pair.emplace_back(da, db);
      fp.dart_pair.emplace_back(da ^ 1, db ^ 1);
    }
  // Components over the 1-skeleton.
  fp.component.assign(fp.vertices.size(), -1);
  for (std::size_t start = 0; start < fp.vertices.size(); ++start) {
    if (fp.component[start] >= 0) continue;
    int id = fp.n_components++;
    std::queue<int> q;
    q.push(static_cast<int>(start));
    fp.component[start] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int d = 0; d < fp.n_darts(); ++d) {
        if (fp.dart_from[d] != v) continue;
        int w = fp.dart_from[d ^ 1];
        if (fp.component[w] < 0) {
          fp.component[w] = id;
          q.push(w);
        }
      }
    }
  }
  return fp;
}

}  // namespace cubsc
