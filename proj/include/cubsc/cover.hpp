#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubsc/normal_form.hpp"
#include "cubsc/presentation.hpp"

namespace cubsc {

enum class CoverKind {
  UniversalBase,  // X~
  UniversalCone,  // Y~_i
  Quotient,       // X^ (classical only)
};

struct CoverSelector {
  CoverKind kind = CoverKind::UniversalBase;
  int cone_index = -1;
  int basepoint = 0;  // vertex of the covered complex under ball vertex 0
};

struct BallError : std::runtime_error {
  enum Kind { Overflow, OracleUnknown } kind;
  BallError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Equality oracle for quotient-cover construction; implementations live
// with the word-problem machinery.
struct WordOracle {
  virtual ~WordOracle() = default;
  virtual Tri is_trivial(const std::string& word) const = 0;
};

// Exponent vectors modulo the relator lattice, via Hermite normal form.
// residue() is a canonical coset representative, so words equal in the
// quotient group always share a residue; a nonzero residue certifies
// nontriviality.
class AbelianReducer {
 public:
  explicit AbelianReducer(const Presentation& p);
  std::vector<long> residue(std::vector<long> v) const;
  bool in_lattice(const std::vector<long>& v) const;
  std::vector<long> exponents(const std::string& word,
                              const Presentation& p) const;

 private:
  int n_ = 0;
  std::vector<std::vector<long>> rows_;  // echelon lattice basis
  std::vector<int> pivot_col_;
};

struct BallOptions {
  long max_vertices = 2000000;
  int nf_budget_factor = 8;
  enum Strategy { Auto, Fold, Oracle } strategy = Auto;
  int fold_pad = -1;  // -1: max(2, max relator length / 2 + 2)
  const WordOracle* oracle = nullptr;
};

// A radius-R ball around a basepoint in a cover's 0-skeleton. Vertex 0 is
// the basepoint; vertices carry canonical path labels (dart sequences in
// the covered complex) and BFS layers. Distances are breadth-first in the
// induced subgraph; pair_exact certifies agreement with the full cover.
class CoverBall {
 public:
  CoverKind kind = CoverKind::UniversalBase;
  int cone_index = -1;
  int radius = 0;
  const SquareComplex* covered = nullptr;
  const Presentation* presentation = nullptr;

  std::vector<int> fiber;                 // covered-complex vertex per ball vertex
  std::vector<std::vector<int>> labels;   // canonical dart path from basepoint
  std::vector<int> layer;                 // distance from basepoint
  std::vector<std::vector<std::pair<int, int>>> adj;  // (dart, neighbor), sorted

  int n_vertices() const { return static_cast<int>(fiber.size()); }
  long n_edges() const;

  // -1 when the walk leaves the ball.
  int step(int vertex, int dart) const;
  std::optional<int> walk(int vertex, const std::vector<int>& darts) const;
  std::optional<int> vertex_by_label(const std::vector<int>& darts) const {
    return walk(0, darts);
  }

  const std::vector<int>& dist_row(int v) const;
  int dist(int u, int v) const;

  // Conservative interior flag from the spec's ball contract.
  bool pair_interior(int u, int v) const;
  // In-ball distance equals the cover distance: no shorter path can leave
  // the ball. Certificate: d(u,v) <= (R - du) + (R - dv) + 1.
  bool pair_exact(int u, int v) const;
  // Strict version: every cover geodesic between u and v stays in the ball.
  bool pair_geodesics_complete(int u, int v) const;

 private:
  mutable std::map<int, std::vector<int>> dist_cache_;
  mutable std::mutex cache_mutex_;
  friend CoverBall build_ball(const Presentation&, CoverSelector, int,
                              const BallOptions&);

 public:
  CoverBall() = default;
  CoverBall(CoverBall&& o) noexcept { *this = std::move(o); }
  CoverBall& operator=(CoverBall&& o) noexcept {
    kind = o.kind;
    cone_index = o.cone_index;
    radius = o.radius;
    covered = o.covered;
    presentation = o.presentation;
    fiber = std::move(o.fiber);
    labels = std::move(o.labels);
    layer = std::move(o.layer);
    adj = std::move(o.adj);
    dist_cache_ = std::move(o.dist_cache_);
    return *this;
  }
  CoverBall(const CoverBall&) = delete;
  CoverBall& operator=(const CoverBall&) = delete;
};

// Universal covers for either class; quotient covers for classical
// presentations. Quotient strategy Auto: with no relators the tree ball;
// otherwise Stallings folding of a padded tree ball, with a pad-stability
// self-check (failure raises OracleUnknown rather than emitting a
// possibly-wrong ball). Strategy Oracle uses BallOptions::oracle.
CoverBall build_ball(const Presentation& p, CoverSelector sel, int radius,
                     const BallOptions& options = {});

}  // namespace cubsc
