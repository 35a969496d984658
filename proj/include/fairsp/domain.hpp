#ifndef FAIRSP_DOMAIN_HPP
#define FAIRSP_DOMAIN_HPP

#include <string>
#include <vector>

#include "fairsp/errors.hpp"
#include "fairsp/rational.hpp"

namespace fairsp {

// Alternatives are 1-based positions in the prior line order a_1 < ... < a_m.
using Alt = int;

// A strict single-peaked ranking of the m alternatives. ranking[k] is the
// alternative in position k+1 (ranking[0] is the peak).
class Preference {
 public:
  // Validates the permutation; throws NotAPermutation / NotSinglePeaked.
  Preference(std::vector<Alt> ranking, int m);

  int m() const { return static_cast<int>(ranking_.size()); }
  Alt peak() const { return ranking_[0]; }
  Alt at(int k) const;               // k-th ranked alternative, 1-based
  int rank_of(Alt a) const;          // 1-based position of a in the ranking
  const std::vector<Alt>& ranking() const { return ranking_; }

  // U(a, P): everything weakly preferred to a. Always a contiguous interval
  // of the line order containing both a and the peak.
  std::vector<Alt> upper_contour(Alt a) const;

  bool operator==(const Preference& o) const { return ranking_ == o.ranking_; }
  bool operator<(const Preference& o) const { return ranking_ < o.ranking_; }

 private:
  std::vector<Alt> ranking_;
  std::vector<int> rank_of_;  // rank_of_[a-1] = 1-based rank of a
};

using Profile = std::vector<Preference>;

// A probability distribution over the m alternatives, exact rationals.
struct Lottery {
  std::vector<Rat> p;  // p[a-1] = probability of alternative a

  Lottery() = default;
  explicit Lottery(int m) : p(m, Rat(0)) {}
  static Lottery point(int m, Alt a);

  int m() const { return static_cast<int>(p.size()); }
  const Rat& of(Alt a) const { return p[a - 1]; }
  Rat& of(Alt a) { return p[a - 1]; }
  Rat prefix(int t) const;  // total mass on [a_1, a_t]; t = 0 gives 0
  Rat mass(const std::vector<Alt>& alts) const;

  // Entries nonnegative and summing to exactly 1.
  bool valid() const;

  bool operator==(const Lottery& o) const { return p == o.p; }
  bool operator!=(const Lottery& o) const { return !(*this == o); }
};

bool is_single_peaked(const std::vector<Alt>& ranking, int m);

// All single-peaked rankings over m alternatives in lexicographic order of
// the ranking sequence. Exactly 2^(m-1) of them.
std::vector<Preference> enumerate_single_peaked(int m, const Guards& guards = {});

// S(t): agents (1-based ids) whose peak lies at or before a_t. Sorted.
std::vector<int> s_set(const Profile& profile, int t);

// t-th smallest peak of the group profile, with repetition; t = 0 gives a_1.
Alt tau(const std::vector<Preference>& group_profile, int t);
Alt tau_of_peaks(const std::vector<Alt>& sorted_peaks, int t);

std::vector<Alt> peaks_of(const Profile& profile);

// Text form used by the CLI: agents separated by ';', each a '>'-separated
// ranking, e.g. "a1>a2>a3;a3>a2>a1".
Profile parse_profile(const std::string& text, int m);
Preference parse_preference(const std::string& text, int m);
std::string format_preference(const Preference& pref);
std::string format_profile(const Profile& profile);

// Iterate over all profiles in D^n, lexicographic in the per-agent domain
// index. Stops early if fn returns false.
template <typename Fn>
void for_each_profile(const std::vector<Preference>& domain, int n, Fn&& fn) {
  std::vector<int> idx(n, 0);
  Profile profile;
  profile.reserve(n);
  for (;;) {
    profile.clear();
    for (int i = 0; i < n; ++i) profile.push_back(domain[idx[i]]);
    if (!fn(const_cast<const Profile&>(profile))) return;
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < static_cast<int>(domain.size())) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

}  // namespace fairsp

#endif
