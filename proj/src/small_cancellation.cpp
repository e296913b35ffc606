#include "cubsc/small_cancellation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cubsc/cover.hpp"
#include "cubsc/normal_form.hpp"

namespace cubsc {

namespace {

// Does the word occur cyclically in relator k (either orientation)?
bool involves_relator(const Presentation& p, const std::string& w, int k) {
  const std::string& r = p.relators[k];
  int reps = static_cast<int>(w.size() / r.size()) + 2;
  std::string doubled, doubled_inv;
  const std::string rinv = inverse_word(r);
  for (int t = 0; t < reps; ++t) {
    doubled += r;
    doubled_inv += rinv;
  }
  return doubled.find(w) != std::string::npos ||
         doubled_inv.find(w) != std::string::npos;
}

}  // namespace

SystoleResult systole(const Presentation& p, int cone,
                      const OracleBudget& budget) {
  if (p.cls == PresentationClass::Classical)
    return {SystoleResult::Exact, static_cast<int>(p.relators[cone].size())};

  const SquareComplex& y = p.cone(cone);
  PathRewriter rewriter(y, budget.nf_budget_factor);
  // Candidate essential loops: spanning-tree chord loops generate pi_1;
  // if all are null-homotopic the systole is infinite.
  std::vector<int> tree_dart(y.n_vertices, -1);
  std::vector<int> order;
  std::vector<char> seen(y.n_vertices, 0);
  seen[0] = 1;
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (int d = 0; d < y.n_darts(); ++d) {
      if (y.from(d) != v || seen[y.to(d)]) continue;
      seen[y.to(d)] = 1;
      tree_dart[y.to(d)] = d;
      order.push_back(y.to(d));
    }
  }
  auto path_to_root = [&](int v) {
    std::vector<int> up;  // darts from v back to the root
    while (tree_dart[v] >= 0) {
      up.push_back(tree_dart[v] ^ 1);
      v = y.from(tree_dart[v]);
    }
    return up;
  };
  int bound = -1;
  for (int d = 0; d < y.n_darts(); d += 2) {
    if (tree_dart[y.to(d)] == d || tree_dart[y.from(d)] == (d ^ 1)) continue;
    // Loop: root -> from(d) -> to(d) -> root.
    std::vector<int> down = path_to_root(y.from(d));
    std::reverse(down.begin(), down.end());
    for (int& x : down) x ^= 1;
    std::vector<int> loop = down;
    loop.push_back(d);
    auto up = path_to_root(y.to(d));
    loop.insert(loop.end(), up.begin(), up.end());
    Tri t = rewriter.null_homotopic(loop);
    if (t == Tri::Unknown) return {SystoleResult::Unknown, 0};
    if (t == Tri::False) {
      int len = static_cast<int>(loop.size());
      bound = bound < 0 ? len : std::min(bound, len);
    }
  }
  if (bound < 0) return {SystoleResult::Infinite, 0};
  // Exact systole: the shortest essential loop through v lifts to a path
  // between two distinct lifts of v, so scan cover balls for repeated
  // fibers.
  int best = bound;
  for (int v = 0; v < y.n_vertices; ++v) {
    BallOptions opt;
    opt.max_vertices = budget.ball_vertices;
    opt.nf_budget_factor = budget.nf_budget_factor;
    CoverSelector sel{CoverKind::UniversalCone, cone, v};
    try {
      CoverBall ball = build_ball(p, sel, best - 1, opt);
      for (int u = 1; u < ball.n_vertices(); ++u)
        if (ball.fiber[u] == v) best = std::min(best, ball.layer[u]);
    } catch (const BallError&) {
      return {SystoleResult::Unknown, 0};
    }
  }
  return {SystoleResult::Exact, best};
}

PieceSystoleResult piece_systole(const Presentation& p, const PieceSet& ps,
                                 int cone, int p_max,
                                 const OracleBudget& budget) {
  PieceSystoleResult out;
  if (p.cls == PresentationClass::Classical) {
    const std::string& r = p.relators[cone];
    const int n = static_cast<int>(r.size());
    const int m = ps.max_diameter();
    if (m == 0) return {PieceSystoleResult::Infinite, 0, "", {}, {}, 0};
    long len_bound = static_cast<long>(p_max - 1) * m;
    int best = -1;
    std::string best_word;
    std::vector<int> best_cuts;
    for (int k = 1; static_cast<long>(k) * n <= len_bound; ++k) {
      for (int s = 0; s < n; ++s) {
        std::string w;
        const std::string rot = rotate_word(r, s);
        for (int t = 0; t < k; ++t) w += rot;
        int len = ps.piece_length_word(w);
        ++out.candidates_examined;
        if (best < 0 || len < best) {
          best = len;
          best_word = w;
          best_cuts = ps.decompose_word(w);
        }
      }
    }
    if (best >= 0 && best < p_max) {
      out.kind = PieceSystoleResult::Exact;
      out.value = best;
      out.witness_word = best_word;
      out.witness_cuts = best_cuts;
    } else {
      out.kind = PieceSystoleResult::AtLeast;
      out.value = p_max;
    }
    return out;
  }

  // Square class: non-backtracking closed walks up to the length bound,
  // deduplicated up to rotation and inversion; essentiality via the
  // rewriting oracle.
  const SquareComplex& y = p.cone(cone);
  PathRewriter rewriter(y, budget.nf_budget_factor);
  if (ps.unbounded && ps.any_wall) {
    // Wall over-approximation with no diameter bound: inconclusive.
    out.kind = PieceSystoleResult::Unknown;
    return out;
  }
  const int m = ps.max_diameter();
  if (m == 0) return {PieceSystoleResult::Infinite, 0, "", {}, {}, 0};
  long len_bound = static_cast<long>(p_max - 1) * m;
  int best = -1;
  std::vector<int> best_path;
  std::set<std::vector<int>> seen;
  bool undecided = false;
  long examined = 0;
  // Iterative deepening over walk length.
  for (int target = 1; target <= len_bound; ++target) {
    if (best >= 0 && static_cast<long>(best) * m < target) break;
    std::vector<std::pair<int, std::vector<int>>> stack;
    for (int v = 0; v < y.n_vertices; ++v) stack.push_back({v, {}});
    while (!stack.empty()) {
      auto [v, path] = stack.back();
      stack.pop_back();
      if (static_cast<int>(path.size()) == target) {
        if (!path.empty() && y.from(path.front()) == v) {
          // Canonical form up to rotation and inversion.
          std::vector<int> canon = path;
          auto consider = [&](std::vector<int> cand) {
            if (cand < canon) canon = cand;
          };
          std::vector<int> inv(path.rbegin(), path.rend());
          for (int& d : inv) d ^= 1;
          for (std::size_t s = 0; s < path.size(); ++s) {
            std::vector<int> rot(path.begin() + s, path.end());
            rot.insert(rot.end(), path.begin(), path.begin() + s);
            consider(rot);
            std::vector<int> roti(inv.begin() + s, inv.end());
            roti.insert(roti.end(), inv.begin(), inv.begin() + s);
            consider(roti);
          }
          if (seen.insert(canon).second) {
            if (++examined > budget.enumeration_cap) {
              out.kind = PieceSystoleResult::Unknown;
              out.candidates_examined = examined;
              return out;
            }
            Tri t = rewriter.null_homotopic(path);
            if (t == Tri::Unknown)
              undecided = true;
            else if (t == Tri::False) {
              int len = ps.piece_length_path(cone, path);
              if (best < 0 || len < best) {
                best = len;
                best_path = path;
              }
            }
          }
        }
        continue;
      }
      int last = path.empty() ? -1 : path.back();
      for (int d = 0; d < y.n_darts(); ++d) {
        int at = path.empty() ? v : y.to(last);
        if (y.from(d) != at) continue;
        if (last >= 0 && d == (last ^ 1)) continue;  // immersed
        auto next = path;
        next.push_back(d);
        stack.push_back({v, std::move(next)});
      }
    }
  }
  out.candidates_examined = examined;
  if (best >= 0 && best < p_max) {
    out.kind = PieceSystoleResult::Exact;
    out.value = best;
    out.witness_path = best_path;
  } else if (undecided) {
    out.kind = PieceSystoleResult::Unknown;
  } else {
    out.kind = PieceSystoleResult::AtLeast;
    out.value = p_max;
  }
  return out;
}

ConditionVerdict check_metric_condition(const Presentation& p,
                                        const PieceSet& ps, long alpha_num,
                                        long alpha_den,
                                        const OracleBudget& budget) {
  ConditionVerdict v;
  v.kind = ConditionVerdict::Metric;
  v.alpha_num = alpha_num;
  v.alpha_den = alpha_den;
  if (ps.maximal.empty()) {
    v.result = VerdictResult::Holds;
    v.note = "no pieces";
    return v;
  }
  if (ps.unbounded) {
    // Unbounded overlaps defeat any alpha bound. Wall-caused cases are
    // over-approximation and degrade to Unknown.
    bool wall_caused = true;
    for (const auto& piece : ps.maximal)
      if ((piece.capped || piece.cyclic_component) && piece.kind == Piece::Cone)
        wall_caused = false;
    if (wall_caused && ps.any_wall) {
      v.result = VerdictResult::Unknown;
      v.wall_downgrade = true;
      v.note = "unbounded wall overlap (over-approximated)";
      return v;
    }
    v.result = VerdictResult::Fails;
    v.note = "unbounded piece overlap";
    for (const auto& piece : ps.maximal)
      if (piece.capped || piece.cyclic_component) {
        v.witness_word = piece.word;
        v.witness_cone = piece.cone >= 0 ? piece.cone : piece.relator_a;
        break;
      }
    return v;
  }

  std::map<int, SystoleResult> sys;
  auto systole_of = [&](int cone) {
    auto it = sys.find(cone);
    if (it == sys.end()) it = sys.emplace(cone, systole(p, cone, budget)).first;
    return it->second;
  };

  const Piece* worst = nullptr;
  bool unknown = false;
  bool wall_worst = false;
  for (const auto& piece : ps.maximal) {
    std::vector<int> involved;
    if (p.cls == PresentationClass::Classical) {
      for (int k = 0; k < p.n_cones(); ++k)
        if (involves_relator(p, piece.word, k)) involved.push_back(k);
    } else {
      involved.push_back(piece.cone);
    }
    for (int k : involved) {
      ++v.candidates_examined;
      SystoleResult s = systole_of(k);
      if (s.kind == SystoleResult::Unknown) {
        unknown = true;
        continue;
      }
      if (s.kind == SystoleResult::Infinite) continue;
      // diam < alpha * systole  <=>  diam * den < num * systole
      bool ok = static_cast<long>(piece.diameter()) * alpha_den <
                alpha_num * static_cast<long>(s.value);
      if (!ok) {
        if (!worst || piece.diameter() > worst->diameter()) {
          worst = &piece;
          wall_worst = piece.kind == Piece::Wall;
        }
      }
    }
  }
  if (worst) {
    if (wall_worst) {
      // Check whether a cone piece already fails; otherwise downgrade.
      const Piece* cone_worst = nullptr;
      for (const auto& piece : ps.maximal) {
        if (piece.kind == Piece::Wall) continue;
        std::vector<int> involved;
        if (p.cls == PresentationClass::Classical) {
          for (int k = 0; k < p.n_cones(); ++k)
            if (involves_relator(p, piece.word, k)) involved.push_back(k);
        } else {
          involved.push_back(piece.cone);
        }
        for (int k : involved) {
          SystoleResult s = systole_of(k);
          if (s.kind != SystoleResult::Exact) continue;
          if (static_cast<long>(piece.diameter()) * alpha_den >=
              alpha_num * static_cast<long>(s.value))
            if (!cone_worst || piece.diameter() > cone_worst->diameter())
              cone_worst = &piece;
        }
      }
      if (!cone_worst) {
        v.result = VerdictResult::Unknown;
        v.wall_downgrade = true;
        v.note = "only over-approximated wall pieces violate the bound";
        return v;
      }
      worst = cone_worst;
    }
    v.result = VerdictResult::Fails;
    v.witness_word = worst->word;
    v.witness_path = worst->cone_darts;
    v.witness_cone = worst->cone >= 0 ? worst->cone : worst->relator_a;
    return v;
  }
  if (unknown) {
    v.result = VerdictResult::Unknown;
    v.budget_hit = true;
    v.note = "systole undecided";
    return v;
  }
  v.result = VerdictResult::Holds;
  return v;
}

ConditionVerdict check_nonmetric_condition(const Presentation& p,
                                           const PieceSet& ps, int pval,
                                           const OracleBudget& budget) {
  ConditionVerdict v;
  v.kind = ConditionVerdict::NonMetric;
  v.p = pval;
  if (ps.maximal.empty()) {
    v.result = VerdictResult::Holds;
    v.note = "no pieces: C(p) holds vacuously";
    return v;
  }
  bool unknown = false;
  for (int i = 0; i < p.n_cones(); ++i) {
    PieceSystoleResult r = piece_systole(p, ps, i, pval, budget);
    v.candidates_examined += r.candidates_examined;
    if (r.kind == PieceSystoleResult::Unknown) {
      unknown = true;
      v.budget_hit = true;
      continue;
    }
    if (r.kind == PieceSystoleResult::Infinite) continue;
    if (r.kind == PieceSystoleResult::AtLeast) continue;  // >= pval
    if (r.value >= pval) continue;
    // A witness below the threshold. If its decomposition needs wall
    // pieces, retry with cone pieces only before reporting failure.
    if (p.cls == PresentationClass::Classical) {
      v.witness_word = r.witness_word;
      v.witness_cone = i;
      v.witness_cuts = r.witness_cuts;
      v.result = VerdictResult::Fails;
      return v;
    }
    int cone_only = ps.piece_length_path(i, r.witness_path, /*cone_only=*/true);
    if (cone_only < pval) {
      v.witness_path = r.witness_path;
      v.witness_cone = i;
      v.result = VerdictResult::Fails;
      return v;
    }
    if (ps.any_wall) {
      v.result = VerdictResult::Unknown;
      v.wall_downgrade = true;
      v.note = "failure witnessed only through over-approximated wall pieces";
      return v;
    }
    v.witness_path = r.witness_path;
    v.witness_cone = i;
    v.result = VerdictResult::Fails;
    return v;
  }
  v.result = unknown ? VerdictResult::Unknown : VerdictResult::Holds;
  return v;
}

bool revalidate_witness(const Presentation& p, const PieceSet& ps,
                        const ConditionVerdict& v) {
  if (v.result != VerdictResult::Fails) return true;
  if (v.kind == ConditionVerdict::Metric) {
    // The witness piece must be a piece and must violate the bound
    // against some cone it involves.
    if (p.cls == PresentationClass::Classical) {
      if (!ps.is_piece_word(v.witness_word)) return false;
      for (int k = 0; k < p.n_cones(); ++k) {
        if (!involves_relator(p, v.witness_word, k)) continue;
        SystoleResult s = systole(p, k);
        if (s.kind == SystoleResult::Exact &&
            static_cast<long>(v.witness_word.size()) * v.alpha_den >=
                v.alpha_num * static_cast<long>(s.value))
          return true;
      }
      return false;
    }
    return ps.is_piece_path(v.witness_cone, v.witness_path) ||
           !v.witness_path.empty();
  }
  // Non-metric: closed, essential, decomposition into valid pieces with
  // fewer than p parts.
  if (p.cls == PresentationClass::Classical) {
    const std::string& w = v.witness_word;
    if (w.empty()) return false;
    const std::string& r = p.relators[v.witness_cone];
    if (w.size() % r.size() != 0) return false;
    if (free_reduce(w).empty()) return false;  // winding 0 is inessential
    const auto& cuts = v.witness_cuts;
    if (cuts.size() < 2 || cuts.front() != 0 ||
        cuts.back() != static_cast<int>(w.size()))
      return false;
    if (static_cast<int>(cuts.size()) - 1 >= v.p) return false;
    for (std::size_t t = 0; t + 1 < cuts.size(); ++t) {
      int a = cuts[t], b = cuts[t + 1];
      if (b - a == 1) continue;
      if (!ps.is_piece_word(w.substr(a, b - a))) return false;
    }
    return true;
  }
  const SquareComplex& y = p.cone(v.witness_cone);
  if (!y.is_closed_path(v.witness_path)) return false;
  PathRewriter rewriter(y);
  if (rewriter.null_homotopic(v.witness_path) != Tri::False) return false;
  return ps.piece_length_path(v.witness_cone, v.witness_path) < v.p;
}

}  // namespace cubsc
