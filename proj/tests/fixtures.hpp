#ifndef FAIRSP_TESTS_FIXTURES_HPP
#define FAIRSP_TESTS_FIXTURES_HPP

#include <random>

#include "fairsp/groups.hpp"
#include "fairsp/rules.hpp"

namespace fairsp::testfix {

// The running example: four agents with peaks (a1, a3, a2, a3) over three
// alternatives, partitioned into {1} and {2,3,4}.
inline Profile example_profile() {
  return parse_profile("a1>a2>a3;a3>a2>a1;a2>a3>a1;a3>a2>a1", 3);
}

inline GroupStructure groups_1_3(int kappa1 = 1, int kappa2 = 2, Rat eta1 = Rat(1, 3),
                                 Rat eta2 = Rat(2, 5), PsiKind kind = PsiKind::RankAnchored) {
  GroupSpec g1;
  g1.agents = {1};
  g1.kappa = kappa1;
  g1.eta = eta1;
  g1.psi.kind = kind;
  g1.psi.kappa = kappa1;
  GroupSpec g2;
  g2.agents = {2, 3, 4};
  g2.kappa = kappa2;
  g2.eta = eta2;
  g2.psi.kind = kind;
  g2.psi.kappa = kappa2;
  return GroupStructure({g1, g2}, 4, 3);
}

inline Lottery tenths(int a1, int a2, int a3) {
  Lottery l(3);
  l.of(1) = Rat(a1, 10);
  l.of(2) = Rat(a2, 10);
  l.of(3) = Rat(a3, 10);
  return l;
}

// Subset ballots of the worked four-agent example (agent i on bit i-1).
inline SubsetBallots subset_ballots_table() {
  std::vector<Lottery> ballots(16, Lottery(3));
  auto set = [&](std::initializer_list<int> agents, int a1, int a2, int a3) {
    unsigned mask = 0;
    for (int agent : agents) mask |= 1u << (agent - 1);
    ballots[mask] = tenths(a1, a2, a3);
  };
  set({}, 0, 0, 10);
  set({1}, 3, 2, 5);
  set({2}, 1, 5, 4);
  set({3}, 2, 4, 4);
  set({4}, 2, 4, 4);
  set({1, 2}, 4, 3, 3);
  set({1, 3}, 5, 3, 2);
  set({1, 4}, 3, 4, 3);
  set({2, 3}, 4, 3, 3);
  set({2, 4}, 5, 3, 2);
  set({3, 4}, 3, 4, 3);
  set({1, 2, 3}, 8, 2, 0);
  set({1, 2, 4}, 8, 2, 0);
  set({1, 3, 4}, 9, 1, 0);
  set({2, 3, 4}, 9, 1, 0);
  set({1, 2, 3, 4}, 10, 0, 0);
  return SubsetBallots(4, 3, std::move(ballots));
}

// Subset min-max parameters of the worked deterministic example.
inline SubsetMinMax subset_minmax_table() {
  std::vector<Alt> params(16, 0);
  auto set = [&](std::initializer_list<int> agents, Alt a) {
    unsigned mask = 0;
    for (int agent : agents) mask |= 1u << (agent - 1);
    params[mask] = a;
  };
  set({}, 3);
  set({1}, 2);
  set({2}, 2);
  set({3}, 3);
  set({4}, 3);
  set({1, 2}, 1);
  set({1, 3}, 2);
  set({1, 4}, 2);
  set({2, 3}, 2);
  set({2, 4}, 2);
  set({3, 4}, 3);
  set({1, 2, 3}, 1);
  set({1, 2, 4}, 1);
  set({1, 3, 4}, 2);
  set({2, 3, 4}, 2);
  set({1, 2, 3, 4}, 1);
  return SubsetMinMax(4, 3, std::move(params));
}

// Ballot family of the worked group example: groups of sizes (1,3), m = 3.
inline GroupBallots group_ballots_table() {
  GammaLattice lattice({1, 3});
  std::vector<Lottery> ballots(lattice.count(), Lottery(3));
  auto set = [&](int c1, int c2, int a1, int a2, int a3) {
    ballots[lattice.index_of(GroupCounts({c1, c2}))] = tenths(a1, a2, a3);
  };
  set(0, 0, 0, 0, 10);
  set(0, 1, 0, 1, 9);
  set(0, 2, 1, 1, 8);
  set(0, 3, 2, 0, 8);
  set(1, 0, 4, 1, 5);
  set(1, 1, 5, 0, 5);
  set(1, 2, 7, 2, 1);
  set(1, 3, 10, 0, 0);
  return GroupBallots({1, 3}, 3, std::move(ballots));
}

// Parameters of the worked count-indexed min-max example. Note these violate
// dominance monotonicity at (1,1) vs (0,1); evaluation is still well defined.
inline GroupMinMax group_minmax_table() {
  GammaLattice lattice({1, 3});
  std::vector<Alt> params(lattice.count(), 0);
  auto set = [&](int c1, int c2, Alt a) {
    params[lattice.index_of(GroupCounts({c1, c2}))] = a;
  };
  set(0, 0, 3);
  set(0, 1, 2);
  set(0, 2, 2);
  set(0, 3, 1);
  set(1, 0, 3);
  set(1, 1, 3);
  set(1, 2, 3);
  set(1, 3, 1);
  return GroupMinMax({1, 3}, 3, std::move(params));
}

inline MedianRule median_example() { return MedianRule(4, 3, {1, 1, 2, 2, 3}); }

// ---- Random generators for the property sweeps (deterministic seeds).

using Rng = std::mt19937;

inline Rat random_grid_rat(Rng& rng, int denominator, Rat lo, Rat hi) {
  long long lo_ticks = lo.num() * (denominator / lo.den());
  long long hi_ticks = hi.num() * (denominator / hi.den());
  std::uniform_int_distribution<long long> dist(lo_ticks, hi_ticks);
  return Rat(dist(rng), denominator);
}

// Monotone ballot family built by raising prefix vectors over the lattice in
// lexicographic order; every prefix sits on the 1/denominator grid.
inline GroupBallots random_group_ballots(const std::vector<int>& sizes, int m, Rng& rng,
                                         int denominator = 12) {
  GammaLattice lattice(sizes);
  std::vector<std::vector<Rat>> prefixes(lattice.count(), std::vector<Rat>(m, Rat(0)));
  for (long long idx = 0; idx < lattice.count(); ++idx) {
    GroupCounts counts = lattice.counts_of(idx);
    std::vector<Rat> lower_bound(m, Rat(0));
    for (int q = 0; q < lattice.dims(); ++q) {
      if (counts.c[q] == 0) continue;
      GroupCounts below = counts;
      --below.c[q];
      const auto& prev = prefixes[lattice.index_of(below)];
      for (int t = 0; t < m; ++t) lower_bound[t] = std::max(lower_bound[t], prev[t]);
    }
    auto& prefix = prefixes[idx];
    if (counts == lattice.bottom()) {
      for (int t = 0; t < m - 1; ++t) prefix[t] = Rat(0);
    } else if (counts == lattice.top()) {
      for (int t = 0; t < m; ++t) prefix[t] = Rat(1);
    } else {
      Rat running(0);
      for (int t = 0; t < m - 1; ++t) {
        Rat lo = std::max(running, lower_bound[t]);
        prefix[t] = random_grid_rat(rng, denominator, lo, Rat(1));
        running = prefix[t];
      }
    }
    prefix[m - 1] = Rat(1);
  }
  std::vector<Lottery> ballots(lattice.count(), Lottery(m));
  for (long long idx = 0; idx < lattice.count(); ++idx) {
    Rat previous(0);
    for (int t = 1; t <= m; ++t) {
      ballots[idx].of(t) = prefixes[idx][t - 1] - previous;
      previous = prefixes[idx][t - 1];
    }
  }
  return GroupBallots(sizes, m, std::move(ballots));
}

// Monotone parameter assignment over the lattice in lexicographic order.
inline GroupMinMax random_group_minmax(const std::vector<int>& sizes, int m, Rng& rng) {
  GammaLattice lattice(sizes);
  std::vector<Alt> params(lattice.count(), 0);
  for (long long idx = 0; idx < lattice.count(); ++idx) {
    GroupCounts counts = lattice.counts_of(idx);
    if (counts == lattice.bottom()) {
      params[idx] = m;
      continue;
    }
    if (counts == lattice.top()) {
      params[idx] = 1;
      continue;
    }
    Alt cap = m;
    for (int q = 0; q < lattice.dims(); ++q) {
      if (counts.c[q] == 0) continue;
      GroupCounts below = counts;
      --below.c[q];
      cap = std::min(cap, params[lattice.index_of(below)]);
    }
    std::uniform_int_distribution<int> dist(1, cap);
    params[idx] = dist(rng);
  }
  return GroupMinMax(sizes, m, std::move(params));
}

inline MedianRule random_median(int n, int m, Rng& rng) {
  std::vector<Alt> params(n + 1);
  params[0] = 1;
  params[n] = m;
  std::uniform_int_distribution<int> dist(1, m);
  for (int i = 1; i < n; ++i) params[i] = dist(rng);
  std::sort(params.begin(), params.end());
  return MedianRule(n, m, std::move(params));
}

// Random convex weights on the 1/denominator grid, exactly summing to 1.
inline std::vector<Rat> random_weights(int count, Rng& rng, int denominator = 12) {
  std::vector<long long> ticks(count, 1);
  long long remaining = denominator - count;
  std::uniform_int_distribution<int> pick(0, count - 1);
  while (remaining > 0) {
    ++ticks[pick(rng)];
    --remaining;
  }
  std::vector<Rat> weights;
  weights.reserve(count);
  for (long long t : ticks) weights.push_back(Rat(t, denominator));
  return weights;
}

inline RandomRule random_minmax_mixture(const std::vector<int>& sizes, int m, int count,
                                        Rng& rng) {
  auto weights = random_weights(count, rng);
  std::vector<RandomComponent> components;
  for (int w = 0; w < count; ++w)
    components.push_back({weights[w], random_group_minmax(sizes, m, rng)});
  return RandomRule(std::move(components)).normalized();
}

inline RandomRule random_median_mixture(int n, int m, int count, Rng& rng) {
  auto weights = random_weights(count, rng);
  std::vector<RandomComponent> components;
  for (int w = 0; w < count; ++w) components.push_back({weights[w], random_median(n, m, rng)});
  return RandomRule(std::move(components)).normalized();
}

}  // namespace fairsp::testfix

#endif
