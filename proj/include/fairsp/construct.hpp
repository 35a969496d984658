#ifndef FAIRSP_CONSTRUCT_HPP
#define FAIRSP_CONSTRUCT_HPP

#include "fairsp/groups.hpp"
#include "fairsp/rules.hpp"

namespace fairsp {

enum class LadderScheme {
  Constant,    // all interior parameters at the same alternative
  Descending,  // interior parameters step down as the counts grow
};

struct Construction {
  RandomRule rule;
  Rat filler_weight = Rat(0);  // residual mass added to the first component
  int offset = 0;              // chosen spacing offset (second regime only)
};

// Regime 1: quotas sum to at most 1 and every representative range covers
// more than half the line. One component per group, weighted by its quota.
Construction construct_case1(const GroupStructure& groups,
                             LadderScheme ladder = LadderScheme::Constant);

// Regime 2: floor(m / kappa_min) components with interior parameters on an
// arithmetic ladder d, d + kappa_min, ...; each weighted by the largest quota.
// offset -1 picks the largest valid d.
Construction construct_case2(const GroupStructure& groups, int offset = -1);

// Regime 3: quotas at most 1/n, short ranges, top-containing representatives.
// n components, each weight 1/n, parameters split by the total peak count.
Construction construct_case3(const GroupStructure& groups, const Guards& guards = {});

}  // namespace fairsp

#endif
