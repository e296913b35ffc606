#include "cubsc/normal_form.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace cubsc {

PathRewriter::PathRewriter(const SquareComplex& c, int budget_factor,
                           int min_budget)
    : complex_(&c), budget_factor_(budget_factor), min_budget_(min_budget) {
  for (std::size_t s = 0; s < c.squares.size(); ++s) {
    const auto& q = c.squares[s];
    for (int r = 0; r < 4; ++r) {
      int a = q[r], b = q[(r + 1) % 4];
      int cc = q[(r + 3) % 4] ^ 1, dd = q[(r + 2) % 4] ^ 1;
      flips_[{a, b}].push_back({static_cast<int>(s), cc, dd});
      // The same relation read against the reversed traversal.
      flips_[{b ^ 1, a ^ 1}].push_back(
          {static_cast<int>(s), q[(r + 2) % 4], q[(r + 3) % 4]});
    }
  }
}

PathRewriter::Closure PathRewriter::close(const std::vector<int>& darts,
                                          bool want_trace) const {
  Closure out;
  const int n = static_cast<int>(darts.size());
  const long budget =
      std::max<long>(min_budget_, static_cast<long>(budget_factor_) * n * n);

  struct Node {
    std::vector<int> word;
    int parent = -1;
    RewriteStep step;
  };
  std::vector<Node> nodes;
  std::set<std::vector<int>> seen;
  std::deque<int> queue;

  nodes.push_back({darts, -1, {}});
  seen.insert(darts);
  queue.push_back(0);
  out.best = darts;
  if (darts.empty()) {
    out.exhausted = true;
    out.found_empty = true;
    return out;
  }
  long expanded = 0;
  int empty_node = -1;

  auto consider = [&](std::vector<int>&& w, int parent, const RewriteStep& st) {
    if (seen.count(w)) return;
    seen.insert(w);
    if (w.size() < out.best.size() ||
        (w.size() == out.best.size() && w < out.best))
      out.best = w;
    nodes.push_back({std::move(w), parent, st});
    int id = static_cast<int>(nodes.size()) - 1;
    if (nodes[id].word.empty() && empty_node < 0) empty_node = id;
    queue.push_back(id);
  };

  while (!queue.empty() && empty_node < 0) {
    if (++expanded > budget) {
      out.exhausted = false;
      return out;
    }
    int cur = queue.front();
    queue.pop_front();
    const std::vector<int> w = nodes[cur].word;
    for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i) {
      if (w[i + 1] == (w[i] ^ 1)) {
        std::vector<int> next(w.begin(), w.begin() + i);
        next.insert(next.end(), w.begin() + i + 2, w.end());
        RewriteStep st{RewriteStep::FreeReduce, i, -1, {w[i], w[i + 1]}, {-1, -1}};
        consider(std::move(next), cur, st);
      }
      auto it = flips_.find({w[i], w[i + 1]});
      if (it == flips_.end()) continue;
      for (const auto& [sq, c1, c2] : it->second) {
        std::vector<int> next = w;
        next[i] = c1;
        next[i + 1] = c2;
        RewriteStep st{RewriteStep::SquareFlip, i, sq, {w[i], w[i + 1]}, {c1, c2}};
        consider(std::move(next), cur, st);
      }
    }
  }
  out.exhausted = (empty_node >= 0) ? false : true;
  if (empty_node >= 0) {
    out.found_empty = true;
    out.best.clear();
    if (want_trace) {
      std::vector<RewriteStep> rev;
      for (int x = empty_node; nodes[x].parent >= 0; x = nodes[x].parent)
        rev.push_back(nodes[x].step);
      out.trace.assign(rev.rbegin(), rev.rend());
    }
  }
  return out;
}

std::optional<std::vector<int>> PathRewriter::canonical(
    const std::vector<int>& darts) const {
  // The closure must run to exhaustion: early exit on the empty word is
  // fine since nothing beats it.
  Closure c = close(darts, false);
  if (c.found_empty) return std::vector<int>{};
  if (!c.exhausted) return std::nullopt;
  return c.best;
}

Tri PathRewriter::null_homotopic(const std::vector<int>& darts) const {
  if (!darts.empty() && !complex_->is_closed_path(darts))
    throw std::invalid_argument("null_homotopic: path is not closed");
  Closure c = close(darts, false);
  if (c.found_empty) return Tri::True;
  if (c.exhausted) return Tri::False;
  return Tri::Unknown;
}

std::optional<std::vector<RewriteStep>> PathRewriter::trivializing_trace(
    const std::vector<int>& darts) const {
  Closure c = close(darts, true);
  if (!c.found_empty) return std::nullopt;
  return c.trace;
}

std::vector<int> replay_rewrites(const std::vector<int>& darts,
                                 const std::vector<RewriteStep>& steps) {
  std::vector<int> w = darts;
  for (const auto& st : steps) {
    if (st.pos < 0 || st.pos + 1 >= static_cast<int>(w.size()) + 1)
      throw std::invalid_argument("replay: bad position");
    if (st.kind == RewriteStep::FreeReduce) {
      if (st.pos + 1 >= static_cast<int>(w.size()) ||
          w[st.pos] != st.removed[0] || w[st.pos + 1] != st.removed[1] ||
          w[st.pos + 1] != (w[st.pos] ^ 1))
        throw std::invalid_argument("replay: bad free reduction");
      w.erase(w.begin() + st.pos, w.begin() + st.pos + 2);
    } else {
      if (st.pos + 1 >= static_cast<int>(w.size()) ||
          w[st.pos] != st.removed[0] || w[st.pos + 1] != st.removed[1])
        throw std::invalid_argument("replay: bad flip");
      w[st.pos] = st.inserted[0];
      w[st.pos + 1] = st.inserted[1];
    }
  }
  return w;
}

}  // namespace cubsc
