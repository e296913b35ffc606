#include "cubsc/cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>

namespace cubsc {

long CoverBall::n_edges() const {
  long twice = 0;
  for (const auto& a : adj) twice += static_cast<long>(a.size());
  return twice / 2;
}

int CoverBall::step(int vertex, int dart) const {
  for (auto [d, w] : adj[vertex])
    if (d == dart) return w;
  return -1;
}

std::optional<int> CoverBall::walk(int vertex, const std::vector<int>& darts) const {
  int v = vertex;
  for (int d : darts) {
    v = step(v, d);
    if (v < 0) return std::nullopt;
  }
  return v;
}

const std::vector<int>& CoverBall::dist_row(int v) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = dist_cache_.find(v);
  if (it != dist_cache_.end()) return it->second;
  std::vector<int> row(n_vertices(), -1);
  std::deque<int> q;
  row[v] = 0;
  q.push_back(v);
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [d, w] : adj[x])
      if (row[w] < 0) {
        row[w] = row[x] + 1;
        q.push_back(w);
      }
  }
  return dist_cache_.emplace(v, std::move(row)).first->second;
}

int CoverBall::dist(int u, int v) const { return dist_row(u)[v]; }

bool CoverBall::pair_interior(int u, int v) const {
  int d = dist(u, v);
  if (d < 0) return false;
  return std::min(layer[u], layer[v]) + d <= radius;
}

bool CoverBall::pair_exact(int u, int v) const {
  int d = dist(u, v);
  if (d < 0) return false;
  return d <= (radius - layer[u]) + (radius - layer[v]) + 1;
}

bool CoverBall::pair_geodesics_complete(int u, int v) const {
  int d = dist(u, v);
  if (d < 0) return false;
  // A path leaving the ball has length >= (R+1-du) + (R+1-dv).
  return d < (radius - layer[u]) + (radius - layer[v]) + 2;
}

AbelianReducer::AbelianReducer(const Presentation& p) {
  n_ = static_cast<int>(p.generators.size());
  std::vector<std::vector<long>> rows;
  for (const auto& r : p.relators) {
    std::vector<long> v(n_, 0);
    for (char c : r) {
      int g = p.dart_of_letter(c) / 2;
      v[g] += (c >= 'a' && c <= 'z') ? 1 : -1;
    }
    rows.push_back(std::move(v));
  }
  // Integer row echelon form of the lattice basis.
  for (int col = 0; col < n_; ++col) {
    // Euclid over the remaining rows' entries in this column.
    while (true) {
      int best = -1;
      for (std::size_t i = rows_.size(); i < rows.size(); ++i)
        if (rows[i][col] != 0 &&
            (best < 0 || std::abs(rows[i][col]) < std::abs(rows[best][col])))
          best = static_cast<int>(i);
      if (best < 0) break;
      std::swap(rows[rows_.size()], rows[best]);
      auto& pivot = rows[rows_.size()];
      bool clean = true;
      for (std::size_t i = rows_.size() + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        long q = rows[i][col] / pivot[col];
        for (int k = 0; k < n_; ++k) rows[i][k] -= q * pivot[k];
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) {
        if (pivot[col] < 0)
          for (long& x : pivot) x = -x;
        rows_.push_back(pivot);
        pivot_col_.push_back(col);
        break;
      }
    }
  }
  // Reduce entries above each pivot so coset reduction is canonical.
  for (int i = static_cast<int>(rows_.size()) - 1; i >= 0; --i) {
    long m = rows_[i][pivot_col_[i]];
    for (int k = 0; k < i; ++k) {
      long q = rows_[k][pivot_col_[i]] / m;
      if (rows_[k][pivot_col_[i]] - q * m < 0) --q;
      for (int j = 0; j < n_; ++j) rows_[k][j] -= q * rows_[i][j];
    }
  }
}

std::vector<long> AbelianReducer::residue(std::vector<long> v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    long m = rows_[i][pivot_col_[i]];
    long q = v[pivot_col_[i]] / m;
    if (v[pivot_col_[i]] - q * m < 0) --q;
    for (int j = 0; j < n_; ++j) v[j] -= q * rows_[i][j];
  }
  return v;
}

bool AbelianReducer::in_lattice(const std::vector<long>& v) const {
  auto r = residue(v);
  return std::all_of(r.begin(), r.end(), [](long x) { return x == 0; });
}

std::vector<long> AbelianReducer::exponents(const std::string& word,
                                            const Presentation& p) const {
  std::vector<long> v(n_, 0);
  for (char c : word) {
    int g = p.dart_of_letter(c) / 2;
    v[g] += (c >= 'a' && c <= 'z') ? 1 : -1;
  }
  return v;
}

namespace {

// Universal cover BFS; canonical labels are freely reduced dart paths for
// graphs, and PathRewriter normal forms when squares are present.
CoverBall universal_ball(const Presentation& p, const SquareComplex& c,
                         CoverKind kind, int cone_index, int radius,
                         const BallOptions& opt, int basepoint = 0) {
  if (!c.squares.empty()) {
    Verdict npc = check_npc(c);
    if (!npc.ok)
      throw std::invalid_argument(
          "universal cover requires an NPC complex: " + npc.violations.front());
  }
  CoverBall ball;
  ball.kind = kind;
  ball.cone_index = cone_index;
  ball.radius = radius;
  ball.covered = &c;
  ball.presentation = &p;

  PathRewriter rewriter(c, opt.nf_budget_factor);
  // Darts at each covered vertex, sorted: fixes BFS order.
  std::vector<std::vector<int>> darts_at(c.n_vertices);
  for (int d = 0; d < c.n_darts(); ++d) darts_at[c.from(d)].push_back(d);

  std::map<std::vector<int>, int> id_of;
  auto add_vertex = [&](const std::vector<int>& label, int fiber_vertex,
                        int lay) {
    int id = ball.n_vertices();
    ball.fiber.push_back(fiber_vertex);
    ball.labels.push_back(label);
    ball.layer.push_back(lay);
    ball.adj.emplace_back();
    id_of.emplace(label, id);
    return id;
  };
  add_vertex({}, basepoint, 0);

  auto canonical = [&](std::vector<int> w) {
    if (c.squares.empty()) {
      // Free reduction suffices in a graph.
      std::vector<int> out;
      for (int d : w) {
        if (!out.empty() && out.back() == (d ^ 1))
          out.pop_back();
        else
          out.push_back(d);
      }
      return out;
    }
    auto nf = rewriter.canonical(w);
    if (!nf)
      throw BallError(BallError::Overflow,
                      "normal form budget exhausted during ball construction");
    return *nf;
  };

  for (int head = 0; head < ball.n_vertices(); ++head) {
    if (ball.layer[head] == radius) continue;  // no new vertices beyond R
    for (int d : darts_at[ball.fiber[head]]) {
      if (ball.step(head, d) >= 0) continue;
      std::vector<int> w = ball.labels[head];
      w.push_back(d);
      std::vector<int> nf = canonical(std::move(w));
      auto it = id_of.find(nf);
      int target;
      if (it != id_of.end()) {
        target = it->second;
      } else {
        int lay = static_cast<int>(nf.size());
        if (lay != ball.layer[head] + 1)
          throw std::logic_error("universal ball: unexpected layer jump");
        if (lay > radius) continue;
        if (ball.n_vertices() >= opt.max_vertices)
          throw BallError(BallError::Overflow, "ball vertex budget exceeded");
        target = add_vertex(nf, c.to(d), lay);
      }
      ball.adj[head].emplace_back(d, target);
      if (target != head || (d ^ 1) != d)
        ball.adj[target].emplace_back(d ^ 1, head);
    }
  }
  // Edges between two radius-R vertices were skipped above (the head loop
  // does not expand layer-R vertices); recover them via label walks.
  for (int v = 0; v < ball.n_vertices(); ++v) {
    if (ball.layer[v] != radius) continue;
    for (int d : darts_at[ball.fiber[v]]) {
      if (ball.step(v, d) >= 0) continue;
      std::vector<int> w = ball.labels[v];
      w.push_back(d);
      std::vector<int> nf = canonical(std::move(w));
      auto it = id_of.find(nf);
      if (it == id_of.end()) continue;
      ball.adj[v].emplace_back(d, it->second);
      ball.adj[it->second].emplace_back(d ^ 1, v);
    }
  }
  for (auto& a : ball.adj) std::sort(a.begin(), a.end());
  return ball;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // keep the smaller (earlier BFS) id as representative
    return true;
  }
};

struct FoldResult {
  // Quotient graph over tree classes reachable at distance <= R.
  std::vector<int> cls_of_tree;  // tree vertex -> class id, -1 if unused
  std::vector<std::vector<int>> cls_adj;  // class x dart -> class
  int n_classes = 0;
};

// Free-group tree ball of the classical base, radius 'rad'.
struct FreeTree {
  // vertex 0 is the root; children[v][dart] or -1
  std::vector<std::vector<int>> children;  // indexed by dart of the wedge
  std::vector<int> parent, parent_dart, depth;
  int n() const { return static_cast<int>(parent.size()); }
};

FreeTree build_free_tree(int n_darts, int rad, long max_vertices) {
  FreeTree t;
  auto add = [&](int par, int d) {
    t.children.emplace_back(n_darts, -1);
    t.parent.push_back(par);
    t.parent_dart.push_back(d);
    t.depth.push_back(par < 0 ? 0 : t.depth[par] + 1);
    if (par >= 0) t.children[par][d] = t.n() - 1;
    return t.n() - 1;
  };
  add(-1, -1);
  for (int v = 0; v < t.n(); ++v) {
    if (t.depth[v] == rad) continue;
    for (int d = 0; d < n_darts; ++d) {
      if (v != 0 && (d ^ 1) == t.parent_dart[v]) continue;  // freely reduced
      if (t.n() >= max_vertices)
        throw BallError(BallError::Overflow,
                        "fold tree budget exceeded; raise max_vertices or "
                        "lower the pad");
      add(v, d);
    }
  }
  return t;
}

int tree_step(const FreeTree& t, int v, int d) {
  if (v != 0 && t.parent_dart[v] == (d ^ 1)) return t.parent[v];
  return t.children[v][d];
}

// Stallings folding of the padded tree against the relator walks.
FoldResult fold_tree(const Presentation& p, const FreeTree& tree) {
  const int n_darts = p.base().n_darts();
  UnionFind uf(tree.n());
  std::vector<std::vector<int>> relator_paths;
  for (const auto& occ : symmetrized_set(p.relators))
    relator_paths.push_back(p.word_to_base_path(occ.word));

  bool changed = true;
  while (changed) {
    changed = false;
    // Determinism folding: a class with two distinct dart-d neighbors
    // forces those neighbors equal.
    bool folded = true;
    while (folded) {
      folded = false;
      std::map<std::pair<int, int>, int> slot;  // (class, dart) -> neighbor class
      for (int v = 0; v < tree.n(); ++v) {
        int cv = uf.find(v);
        for (int d = 0; d < n_darts; ++d) {
          int w = tree_step(tree, v, d);
          if (w < 0) continue;
          int cw = uf.find(w);
          auto [it, inserted] = slot.emplace(std::make_pair(cv, d), cw);
          if (!inserted && uf.find(it->second) != cw) {
            uf.unite(uf.find(it->second), cw);
            folded = true;
            changed = true;
          }
        }
      }
    }
    // Relator walks on the quotient: endpoints of a full relator loop
    // from any vertex coincide.
    std::map<std::pair<int, int>, int> slot;
    for (int v = 0; v < tree.n(); ++v) {
      int cv = uf.find(v);
      for (int d = 0; d < n_darts; ++d) {
        int w = tree_step(tree, v, d);
        if (w >= 0) slot[{cv, d}] = uf.find(w);
      }
    }
    auto quotient_step = [&](int cls, int d) -> int {
      auto it = slot.find({cls, d});
      return it == slot.end() ? -1 : uf.find(it->second);
    };
    for (int v = 0; v < tree.n(); ++v) {
      if (uf.find(v) != v) continue;  // walk from representatives only
      for (const auto& path : relator_paths) {
        int x = v;
        bool ok = true;
        for (int d : path) {
          x = quotient_step(x, d);
          if (x < 0) {
            ok = false;
            break;
          }
        }
        if (ok && uf.unite(v, x)) changed = true;
      }
    }
  }

  FoldResult out;
  out.cls_of_tree.assign(tree.n(), -1);
  std::map<int, int> renumber;
  for (int v = 0; v < tree.n(); ++v) {
    int r = uf.find(v);
    auto [it, inserted] = renumber.emplace(r, out.n_classes);
    if (inserted) ++out.n_classes;
    out.cls_of_tree[v] = it->second;
  }
  out.cls_adj.assign(out.n_classes, std::vector<int>(n_darts, -1));
  for (int v = 0; v < tree.n(); ++v)
    for (int d = 0; d < n_darts; ++d) {
      int w = tree_step(tree, v, d);
      if (w >= 0) out.cls_adj[out.cls_of_tree[v]][d] = out.cls_of_tree[w];
    }
  return out;
}

// BFS over a deterministic class graph, emitting the ball structure.
CoverBall ball_from_class_graph(const Presentation& p, int radius,
                                const std::vector<std::vector<int>>& cls_adj,
                                int root) {
  CoverBall ball;
  ball.kind = CoverKind::Quotient;
  ball.radius = radius;
  ball.covered = &p.base();
  ball.presentation = &p;
  const int n_darts = p.base().n_darts();

  std::map<int, int> id_of;  // class -> ball id
  auto add = [&](int cls, std::vector<int> label, int lay) {
    ball.fiber.push_back(0);
    ball.labels.push_back(std::move(label));
    ball.layer.push_back(lay);
    ball.adj.emplace_back();
    id_of.emplace(cls, ball.n_vertices() - 1);
    return ball.n_vertices() - 1;
  };
  std::vector<int> cls_of_ball;
  add(root, {}, 0);
  cls_of_ball.push_back(root);
  for (int head = 0; head < ball.n_vertices(); ++head) {
    for (int d = 0; d < n_darts; ++d) {
      int target_cls = cls_adj[cls_of_ball[head]][d];
      if (target_cls < 0) continue;
      auto it = id_of.find(target_cls);
      int target;
      if (it != id_of.end()) {
        target = it->second;
      } else {
        if (ball.layer[head] + 1 > radius) continue;
        std::vector<int> label = ball.labels[head];
        label.push_back(d);
        target = add(target_cls, std::move(label), ball.layer[head] + 1);
        cls_of_ball.push_back(target_cls);
      }
      // Record this directed step once per (vertex, dart).
      if (ball.step(head, d) < 0) ball.adj[head].emplace_back(d, target);
    }
  }
  for (auto& a : ball.adj) std::sort(a.begin(), a.end());
  return ball;
}

CoverBall quotient_ball_fold(const Presentation& p, int radius,
                             const BallOptions& opt) {
  // One-relator shortcut: the girth of a one-relator Cayley graph is the
  // relator length, so a ball that cannot see a cycle of that length is
  // the tree ball.
  if (p.relators.size() == 1 &&
      2 * radius + 1 < static_cast<int>(p.relators[0].size())) {
    CoverBall ball = universal_ball(p, p.base(), CoverKind::Quotient, -1,
                                    radius, opt);
    return ball;
  }
  std::size_t maxrel = 0;
  for (const auto& r : p.relators) maxrel = std::max(maxrel, r.size());
  int pad = opt.fold_pad >= 0
                ? opt.fold_pad
                : std::max<int>(2, static_cast<int>(maxrel) / 2 + 2);
  auto build_at = [&](int pd) {
    FreeTree tree =
        build_free_tree(p.base().n_darts(), radius + pd, opt.max_vertices);
    return fold_tree(p, tree);
  };
  FoldResult fr = build_at(pad);
  CoverBall ball = ball_from_class_graph(p, radius, fr.cls_adj, fr.cls_of_tree[0]);
  // Pad-stability self-check: a larger pad must not discover new merges
  // inside the ball.
  FoldResult fr2 = build_at(pad + 2);
  CoverBall ball2 =
      ball_from_class_graph(p, radius, fr2.cls_adj, fr2.cls_of_tree[0]);
  if (ball.labels != ball2.labels || ball.adj != ball2.adj)
    throw BallError(BallError::OracleUnknown,
                    "fold pad unstable: quotient ball undecided at this budget");
  return ball2;
}

CoverBall quotient_ball_oracle(const Presentation& p, int radius,
                               const BallOptions& opt) {
  const WordOracle& oracle = *opt.oracle;
  const int n_darts = p.base().n_darts();
  CoverBall ball;
  ball.kind = CoverKind::Quotient;
  ball.radius = radius;
  ball.covered = &p.base();
  ball.presentation = &p;

  auto word_of = [&](const std::vector<int>& darts) {
    return p.base_path_to_word(darts);
  };
  auto add = [&](std::vector<int> label, int lay) {
    ball.fiber.push_back(0);
    ball.labels.push_back(std::move(label));
    ball.layer.push_back(lay);
    ball.adj.emplace_back();
    return ball.n_vertices() - 1;
  };
  add({}, 0);
  // Equal group elements have abelianizations congruent modulo the
  // relator lattice; bucketing by the residue keeps oracle calls rare.
  const AbelianReducer ab_reducer(p);
  auto ab_of = [&](const std::vector<int>& darts) {
    std::vector<long> ab(n_darts / 2, 0);
    for (int d : darts) ab[d / 2] += (d & 1) ? -1 : 1;
    return ab_reducer.residue(ab);
  };
  std::map<std::vector<long>, std::vector<int>> bucket;
  bucket[ab_of({})].push_back(0);

  for (int head = 0; head < ball.n_vertices(); ++head) {
    for (int d = 0; d < n_darts; ++d) {
      if (ball.step(head, d) >= 0) continue;
      std::vector<int> w = ball.labels[head];
      w.push_back(d);
      std::string cand = free_reduce(word_of(w));
      int target = -1;
      auto it = bucket.find(ab_of(w));
      if (it != bucket.end()) {
        for (int z : it->second) {
          if (std::abs(ball.layer[z] - ball.layer[head]) > 1) continue;
          std::string test =
              free_reduce(inverse_word(word_of(ball.labels[z])) + cand);
          Tri verdict = oracle.is_trivial(test);
          if (verdict == Tri::Unknown)
            throw BallError(BallError::OracleUnknown,
                            "word oracle undecided on " + test);
          if (verdict == Tri::True) {
            target = z;
            break;
          }
        }
      }
      if (target < 0) {
        int lay = ball.layer[head] + 1;
        if (lay > radius) continue;
        if (ball.n_vertices() >= opt.max_vertices)
          throw BallError(BallError::Overflow, "ball vertex budget exceeded");
        std::vector<long> ab = ab_of(w);
        target = add(std::move(w), lay);
        bucket[ab].push_back(target);
      }
      ball.adj[head].emplace_back(d, target);
      if (target != head) ball.adj[target].emplace_back(d ^ 1, head);
    }
  }
  for (auto& a : ball.adj) std::sort(a.begin(), a.end());
  return ball;
}

}  // namespace

CoverBall build_ball(const Presentation& p, CoverSelector sel, int radius,
                     const BallOptions& options) {
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
  switch (sel.kind) {
    case CoverKind::UniversalBase:
      return universal_ball(p, p.base(), sel.kind, -1, radius, options,
                            sel.basepoint);
    case CoverKind::UniversalCone:
      if (sel.cone_index < 0 || sel.cone_index >= p.n_cones())
        throw std::invalid_argument("cone index out of range");
      return universal_ball(p, p.cone(sel.cone_index), sel.kind,
                            sel.cone_index, radius, options, sel.basepoint);
    case CoverKind::Quotient: {
      if (p.cls != PresentationClass::Classical)
        throw std::invalid_argument("quotient balls require a classical presentation");
      if (options.strategy == BallOptions::Oracle) {
        if (!options.oracle)
          throw std::invalid_argument("oracle strategy requires an oracle");
        return quotient_ball_oracle(p, radius, options);
      }
      if (p.relators.empty())
        return universal_ball(p, p.base(), CoverKind::Quotient, -1, radius,
                              options);
      if (options.strategy == BallOptions::Auto && options.oracle)
        return quotient_ball_oracle(p, radius, options);
      return quotient_ball_fold(p, radius, options);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace cubsc
