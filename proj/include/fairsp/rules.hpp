#ifndef FAIRSP_RULES_HPP
#define FAIRSP_RULES_HPP

#include <functional>
#include <variant>
#include <vector>

#include "fairsp/domain.hpp"
#include "fairsp/groups.hpp"

namespace fairsp {

struct ValidationIssue {
  std::string kind;    // "ballot-unanimity", "monotonicity", "not-a-lottery", ...
  std::string detail;  // human-readable, includes the offending (gamma, gamma', t)
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;

  void add(std::string kind, std::string detail) {
    ok = false;
    issues.push_back({std::move(kind), std::move(detail)});
  }
};

// Probabilistic ballots indexed by per-group peak counts. Evaluation takes
// prefix differences of the ballots selected by the profile's counts.
class GroupBallots {
 public:
  GroupBallots(std::vector<int> group_sizes, int m, std::vector<Lottery> ballots);

  const GammaLattice& lattice() const { return lattice_; }
  int m() const { return m_; }
  int n() const;
  const Lottery& ballot(const GroupCounts& counts) const;
  const Lottery& ballot_by_index(long long idx) const { return ballots_[idx]; }
  const std::vector<Lottery>& ballots() const { return ballots_; }

  // Ballot unanimity and dominance monotonicity; exact comparisons.
  ValidationReport validate() const;
  void ensure_valid() const;  // throws InvalidBallotFamily with the first issue

  Lottery evaluate(const Profile& profile, const GroupStructure& groups) const;

  bool operator==(const GroupBallots& o) const;

 private:
  GammaLattice lattice_;
  int m_;
  std::vector<Lottery> ballots_;
};

// Subset-indexed probabilistic ballots (each group a single agent).
class SubsetBallots {
 public:
  SubsetBallots(int n, int m, std::vector<Lottery> ballots, const Guards& guards = {});

  int n() const { return n_; }
  int m() const { return m_; }
  const Lottery& ballot(unsigned mask) const { return ballots_[mask]; }

  ValidationReport validate() const;
  void ensure_valid() const;
  Lottery evaluate(const Profile& profile) const;

 private:
  int n_;
  int m_;
  std::vector<Lottery> ballots_;
};

// Deterministic rule: minimum over count vectors of the maximum of ordered
// group peaks and a fixed parameter.
class GroupMinMax {
 public:
  GroupMinMax(std::vector<int> group_sizes, int m, std::vector<Alt> params);

  const GammaLattice& lattice() const { return lattice_; }
  int m() const { return m_; }
  Alt param(const GroupCounts& counts) const { return params_[lattice_.index_of(counts)]; }
  Alt param_by_index(long long idx) const { return params_[idx]; }
  const std::vector<Alt>& params() const { return params_; }

  ValidationReport validate() const;
  void ensure_valid() const;  // throws InvalidParameters
  Alt evaluate(const Profile& profile, const GroupStructure& groups) const;

  bool operator==(const GroupMinMax& o) const;
  bool operator<(const GroupMinMax& o) const;

 private:
  GammaLattice lattice_;
  int m_;
  std::vector<Alt> params_;
};

// Subset-indexed min-max rule.
class SubsetMinMax {
 public:
  SubsetMinMax(int n, int m, std::vector<Alt> params, const Guards& guards = {});

  int n() const { return n_; }
  int m() const { return m_; }
  Alt param(unsigned mask) const { return params_[mask]; }
  const std::vector<Alt>& params() const { return params_; }

  ValidationReport validate() const;
  void ensure_valid() const;
  Alt evaluate(const Profile& profile) const;

  // Dictatorship of the given agent expressed with subset parameters.
  static SubsetMinMax dictatorship(int n, int m, int agent, const Guards& guards = {});

  bool operator==(const SubsetMinMax& o) const;
  bool operator<(const SubsetMinMax& o) const;

 private:
  int n_;
  int m_;
  std::vector<Alt> params_;
};

// Median of the n peaks and n+1 fixed parameters.
class MedianRule {
 public:
  MedianRule(int n, int m, std::vector<Alt> params);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<Alt>& params() const { return params_; }

  ValidationReport validate() const;
  void ensure_valid() const;
  Alt evaluate(const Profile& profile) const;

  bool operator==(const MedianRule& o) const;
  bool operator<(const MedianRule& o) const;

 private:
  int n_;
  int m_;
  std::vector<Alt> params_;
};

using DetRule = std::variant<GroupMinMax, SubsetMinMax, MedianRule>;

Alt evaluate_det(const DetRule& rule, const Profile& profile, const GroupStructure* groups);

struct RandomComponent {
  Rat weight;
  DetRule rule;
};

// Convex combination of deterministic rules with exact rational weights.
class RandomRule {
 public:
  RandomRule() = default;
  explicit RandomRule(std::vector<RandomComponent> components);

  const std::vector<RandomComponent>& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }

  bool all_group_minmax() const;
  bool all_median() const;
  bool all_subset_minmax() const;
  const GroupMinMax& group_minmax(int w) const;
  const SubsetMinMax& subset_minmax(int w) const;
  const MedianRule& median(int w) const;

  ValidationReport validate() const;
  void ensure_valid() const;

  // groups may be null when no component needs a group structure.
  Lottery evaluate(const Profile& profile, const GroupStructure* groups) const;

  // Merge identical components and order them canonically.
  RandomRule normalized() const;

 private:
  std::vector<RandomComponent> components_;
};

// Quantile coupling of a valid ballot family into deterministic components:
// shared thresholds u over (0,1], one component per breakpoint interval, each
// parameter the first alternative whose ballot prefix reaches the threshold.
RandomRule decompose_group_ballots(const GroupBallots& ballots);

// Exact inverse direction: ballot prefix = total weight of components whose
// parameter lies in the prefix.
GroupBallots group_ballots_from_mixture(const RandomRule& mixture);

// Single-group correspondence with median rules (parameters reversed).
GroupMinMax group_minmax_from_median(const MedianRule& rule);

// Singleton-group bijection: subset S <-> 0/1 count vector.
GroupBallots group_ballots_from_subset(const SubsetBallots& ballots);
SubsetBallots subset_ballots_from_group(const GroupBallots& ballots, const Guards& guards = {});
GroupMinMax group_minmax_from_subset(const SubsetMinMax& rule);
SubsetMinMax subset_minmax_from_group(const GroupMinMax& rule, const Guards& guards = {});

// Trivial group structure used when evaluating purely count-indexed rules:
// agents 1..n split by the given sizes, in order.
GroupStructure plain_groups(const std::vector<int>& sizes, int m);

using AnyRule =
    std::variant<GroupBallots, SubsetBallots, GroupMinMax, SubsetMinMax, MedianRule, RandomRule>;

Lottery evaluate_any(const AnyRule& rule, const Profile& profile, const GroupStructure* groups);
ValidationReport validate_any(const AnyRule& rule);

// Profile -> Lottery closure over a fixed rule (used by the audit checkers).
using RuleEval = std::function<Lottery(const Profile&)>;
RuleEval make_eval(const AnyRule& rule, const GroupStructure* groups);

}  // namespace fairsp

#endif
