#ifndef FAIRSP_REPRESENTATIVES_HPP
#define FAIRSP_REPRESENTATIVES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairsp/domain.hpp"

namespace fairsp {

// A contiguous block of alternatives [start, start + len - 1].
struct AltInterval {
  Alt start = 1;
  int len = 1;

  Alt end() const { return start + len - 1; }
  bool contains(Alt a) const { return start <= a && a <= end(); }
  std::vector<Alt> alts() const;
  std::string str() const;

  bool operator==(const AltInterval& o) const { return start == o.start && len == o.len; }
  bool operator!=(const AltInterval& o) const { return !(*this == o); }
};

enum class PsiKind {
  RankAnchored,    // interval starts at the r-th smallest peak (clamped right)
  PeakCoverage,    // maximizes distinct peaks covered, smallest start on ties
  AgentCoverage,   // maximizes agents with peak inside, smallest start on ties
  PluralityStart,  // starts at the plurality peak (smallest on ties), clamped
  Table,           // explicit lookup over sorted peak multisets
  TopBlock,        // the agent's top-kappa alternatives (singleton groups)
};

std::string psi_kind_name(PsiKind kind);

struct PsiTableEntry {
  std::vector<Alt> peaks;  // sorted, one per group member
  Alt start = 1;
};

// Representative-function specification for a single group.
struct PsiSpec {
  PsiKind kind = PsiKind::RankAnchored;
  int kappa = 1;
  int rank = 1;  // RankAnchored parameter r, 1-based
  std::vector<PsiTableEntry> table;

  // All supported kinds except TopBlock depend only on the multiset of peaks.
  bool tops_only() const { return kind != PsiKind::TopBlock; }
};

// Output interval for tops-only kinds, computed from the sorted peak multiset.
AltInterval apply_psi_peaks(const PsiSpec& spec, const std::vector<Alt>& sorted_peaks, int m);

// Output interval for any kind; TopBlock requires a one-agent profile.
AltInterval apply_psi(const PsiSpec& spec, const std::vector<Preference>& group_profile, int m);

enum class IntervalCmp { Best, LexBest, Worst, LexWorst };
enum class IntervalOrder { FirstBetter, SecondBetter, Equal };

std::string interval_cmp_name(IntervalCmp cmp);

// Compares two equal-sized intervals from one agent's point of view. The
// lexicographic kinds are total on distinct intervals.
IntervalOrder compare_intervals(const Preference& pref, const AltInterval& first,
                                const AltInterval& second, IntervalCmp cmp);

// Positions (1-based ranks) of the interval members in the ranking, ascending.
std::vector<int> interval_ranks(const Preference& pref, const AltInterval& interval);

bool is_top_ranged(const PsiSpec& spec, int group_size, int m, const Guards& guards = {});
bool is_top_containing(const PsiSpec& spec, int group_size, int m, const Guards& guards = {});

// Compliance: top-ranged and the output is always a kappa-sized interval
// inside [a_1, a_m]. Table specs are checked entry by entry.
bool is_compliant(const PsiSpec& spec, int group_size, int m, const Guards& guards = {});

struct ScenarioProperties {
  bool anonymous = false;
  bool top_containing = false;
  bool candidate_monotone = false;
  std::map<IntervalCmp, bool> pareto_efficient;
};

// Decides each property by exhaustive quantifier evaluation over the
// single-peaked domain for the given group size.
ScenarioProperties check_scenario_properties(const PsiSpec& spec, int group_size, int m,
                                             const Guards& guards = {});

// Witness existence for the characterization scans: peak-count patterns the
// representative function can realize together with a given output interval.
class PsiFeasibility {
 public:
  PsiFeasibility(const PsiSpec& spec, int group_size, int m, const Guards& guards = {});

  int kappa() const { return kappa_; }
  int group_size() const { return group_size_; }
  int m() const { return m_; }

  // a_x feasible at (z1, z2): some group profile has output starting at a_x,
  // exactly z1 peaks before the output and group_size - z2 peaks after it.
  bool at(Alt x, int z1, int z2) const;

  // Full pattern: zs[0] peaks strictly before a_x, zs[j] peaks at or before
  // a_{x+j-1} for j = 1..kappa, with the output interval starting at a_x.
  bool set_at(Alt x, const std::vector<int>& zs) const;

  // Witness group profile realizing the pattern, for replay; null if infeasible.
  const Profile* witness_at(Alt x, int z1, int z2) const;
  const Profile* witness_set_at(Alt x, const std::vector<int>& zs) const;

 private:
  int group_size_;
  int m_;
  int kappa_;
  std::map<std::vector<int>, Profile> pairs_;     // key = {x, z1, z2}
  std::map<std::vector<int>, Profile> patterns_;  // key = {x, z_0..z_kappa}
};

// One-shot feasibility queries; the class above amortizes repeated lookups.
bool feasible_at(const PsiSpec& spec, Alt start, int z1, int z2, int group_size, int m,
                 const Guards& guards = {});
bool feasible_set_at(const PsiSpec& spec, Alt start, const std::vector<int>& zs, int group_size,
                     int m, const Guards& guards = {});

// Canonical single-peaked preference with the given peak: descend to a_1
// first, then ascend to a_m.
Preference canonical_pref_with_peak(Alt peak, int m);

// Single-peaked preference whose top-k block equals the given interval
// (peak inside the interval; interval members ranked left-first outward).
Preference pref_with_top_block(Alt peak, const AltInterval& block, int m);

// All sorted peak multisets of the given size over [1, m].
std::vector<std::vector<Alt>> enumerate_peak_multisets(int group_size, int m,
                                                       const Guards& guards = {});

}  // namespace fairsp

#endif
