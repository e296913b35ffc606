#pragma once

#include <string>
#include <vector>

#include "cubsc/pieces.hpp"

namespace cubsc {

enum class VerdictResult { Holds, Fails, Unknown };

struct ConditionVerdict {
  enum Kind { NonMetric, Metric } kind = NonMetric;
  int p = 0;                           // C(p)
  long alpha_num = 0, alpha_den = 1;   // C'(num/den)
  VerdictResult result = VerdictResult::Unknown;

  // Metric failures: the offending piece. Non-metric failures: an
  // essential closed path with its < p piece decomposition.
  std::string witness_word;
  std::vector<int> witness_path;  // square class, darts in the witness cone
  int witness_cone = -1;
  std::vector<int> witness_cuts;  // decomposition boundaries
  std::string note;

  long candidates_examined = 0;
  bool budget_hit = false;
  bool wall_downgrade = false;
};

struct SystoleResult {
  enum Kind { Exact, Infinite, Unknown } kind = Unknown;
  int value = 0;
};

struct PieceSystoleResult {
  enum Kind { Exact, AtLeast, Infinite, Unknown } kind = Unknown;
  int value = 0;  // Exact: the minimum; AtLeast: the conclusive bound
  std::string witness_word;
  std::vector<int> witness_path;
  std::vector<int> witness_cuts;
  long candidates_examined = 0;
};

struct OracleBudget {
  int nf_budget_factor = 4;
  long enumeration_cap = 200000;
  long ball_vertices = 200000;
};

// Length of the shortest essential closed path in Y_i.
SystoleResult systole(const Presentation& p, int cone,
                      const OracleBudget& budget = {});

// Minimum piece length over essential closed paths in Y_i, enumerated up
// to piece length < p_max; AtLeast(p_max) when the bound is conclusive.
PieceSystoleResult piece_systole(const Presentation& p, const PieceSet& ps,
                                 int cone, int p_max = 16,
                                 const OracleBudget& budget = {});

// C'(alpha): diam(P) < alpha * systole(Y_i) for every piece P against
// every cone it involves, strict rational comparison.
ConditionVerdict check_metric_condition(const Presentation& p,
                                        const PieceSet& ps, long alpha_num,
                                        long alpha_den,
                                        const OracleBudget& budget = {});

// C(p): no essential closed path in any Y_i is a concatenation of fewer
// than p pieces.
ConditionVerdict check_nonmetric_condition(const Presentation& p,
                                           const PieceSet& ps, int pval,
                                           const OracleBudget& budget = {});

// Independent re-validation of a FAILS witness using only is_piece and
// the essentiality oracle.
bool revalidate_witness(const Presentation& p, const PieceSet& ps,
                        const ConditionVerdict& v);

}  // namespace cubsc
