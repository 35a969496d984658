#ifndef FAIRSP_GROUPS_HPP
#define FAIRSP_GROUPS_HPP

#include <vector>

#include "fairsp/domain.hpp"
#include "fairsp/rational.hpp"
#include "fairsp/representatives.hpp"

namespace fairsp {

// Per-group peak-count vector; component q lies in [0, |N_q|]. These index
// the ballots/parameters of every group-indexed rule.
struct GroupCounts {
  std::vector<int> c;

  GroupCounts() = default;
  explicit GroupCounts(std::vector<int> counts) : c(std::move(counts)) {}

  int dims() const { return static_cast<int>(c.size()); }
  bool operator==(const GroupCounts& o) const { return c == o.c; }
  bool operator<(const GroupCounts& o) const { return c < o.c; }
  std::string str() const;
};

// True iff a_q >= b_q for all q (componentwise dominance).
bool dominates(const GroupCounts& a, const GroupCounts& b);

// True iff each successive vector dominates its predecessor.
bool chains_through(const std::vector<GroupCounts>& chain);

// The count lattice for given group sizes, with the fixed lexicographic
// enumeration order (first all-zeros, last all-maxima) and a flat index.
class GammaLattice {
 public:
  explicit GammaLattice(std::vector<int> group_sizes);

  int dims() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  long long count() const { return count_; }

  long long index_of(const GroupCounts& counts) const;
  GroupCounts counts_of(long long index) const;
  std::vector<GroupCounts> all() const;

  GroupCounts bottom() const;  // all zeros
  GroupCounts top() const;     // all maxima

 private:
  std::vector<int> sizes_;
  std::vector<long long> strides_;
  long long count_;
};

std::vector<GroupCounts> enumerate_group_counts(const std::vector<int>& group_sizes,
                                                const Guards& guards = {});

struct GroupSpec {
  std::vector<int> agents;  // 1-based ids, sorted
  int kappa = 1;
  Rat eta = Rat(0);
  PsiSpec psi;
};

// Partition of the agents with per-group fairness parameters. Group order is
// fixed at construction and defines the component order of every GroupCounts.
class GroupStructure {
 public:
  GroupStructure(std::vector<GroupSpec> specs, int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int group_count() const { return static_cast<int>(specs_.size()); }
  const GroupSpec& group(int q) const { return specs_[q]; }
  int size(int q) const { return static_cast<int>(specs_[q].agents.size()); }
  std::vector<int> sizes() const;
  int group_of(int agent) const;  // 0-based group index
  bool all_singletons() const;

  std::vector<Preference> subprofile(const Profile& profile, int q) const;
  std::vector<Alt> group_peaks_sorted(const Profile& profile, int q) const;

 private:
  std::vector<GroupSpec> specs_;
  std::vector<int> group_of_;  // agent-1 -> group index
  int n_;
  int m_;
};

// Per-group counts of peaks lying at or before a_t; t = 0 gives all zeros.
GroupCounts prefix_peak_counts(const Profile& profile, int t, const GroupStructure& groups);

}  // namespace fairsp

#endif
