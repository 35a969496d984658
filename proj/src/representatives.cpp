#include "fairsp/representatives.hpp"

#include <algorithm>
#include <set>

namespace fairsp {

std::vector<Alt> AltInterval::alts() const {
  std::vector<Alt> result(len);
  for (int i = 0; i < len; ++i) result[i] = start + i;
  return result;
}

std::string AltInterval::str() const {
  std::string s = "[a" + std::to_string(start);
  if (len > 1) s += ",a" + std::to_string(end());
  return s + "]";
}

std::string psi_kind_name(PsiKind kind) {
  switch (kind) {
    case PsiKind::RankAnchored: return "R1";
    case PsiKind::PeakCoverage: return "R2";
    case PsiKind::AgentCoverage: return "R3";
    case PsiKind::PluralityStart: return "R4";
    case PsiKind::Table: return "table";
    case PsiKind::TopBlock: return "top";
  }
  return "?";
}

std::string interval_cmp_name(IntervalCmp cmp) {
  switch (cmp) {
    case IntervalCmp::Best: return "best";
    case IntervalCmp::LexBest: return "lex_best";
    case IntervalCmp::Worst: return "worst";
    case IntervalCmp::LexWorst: return "lex_worst";
  }
  return "?";
}

namespace {

AltInterval clamp_to_line(Alt start, int kappa, int m) {
  if (kappa > m) raise(ErrorCode::InvalidSpec, "kappa exceeds m");
  if (start + kappa - 1 > m) start = m - kappa + 1;
  if (start < 1) start = 1;
  return AltInterval{start, kappa};
}

int count_in_window(const std::vector<Alt>& sorted_peaks, Alt lo, Alt hi, bool distinct) {
  int count = 0;
  Alt last = 0;
  for (Alt p : sorted_peaks) {
    if (p < lo || p > hi) continue;
    if (distinct && p == last) continue;
    ++count;
    last = p;
  }
  return count;
}

}  // namespace

AltInterval apply_psi_peaks(const PsiSpec& spec, const std::vector<Alt>& sorted_peaks, int m) {
  if (sorted_peaks.empty()) raise(ErrorCode::InvalidSpec, "empty group profile");
  if (spec.kappa < 1 || spec.kappa > m) raise(ErrorCode::InvalidSpec, "kappa outside [1,m]");
  const int kappa = spec.kappa;
  switch (spec.kind) {
    case PsiKind::RankAnchored: {
      if (spec.rank < 1 || spec.rank > static_cast<int>(sorted_peaks.size()))
        raise(ErrorCode::InvalidSpec, "rank parameter outside [1,group size]");
      return clamp_to_line(sorted_peaks[spec.rank - 1], kappa, m);
    }
    case PsiKind::PeakCoverage:
    case PsiKind::AgentCoverage: {
      bool distinct = spec.kind == PsiKind::PeakCoverage;
      int best_count = -1;
      Alt best_start = 1;
      for (Alt s = 1; s + kappa - 1 <= m; ++s) {
        int count = count_in_window(sorted_peaks, s, s + kappa - 1, distinct);
        if (count > best_count) {
          best_count = count;
          best_start = s;
        }
      }
      return AltInterval{best_start, kappa};
    }
    case PsiKind::PluralityStart: {
      std::vector<int> votes(m, 0);
      for (Alt p : sorted_peaks) ++votes[p - 1];
      Alt winner = 1;
      for (Alt a = 2; a <= m; ++a)
        if (votes[a - 1] > votes[winner - 1]) winner = a;
      return clamp_to_line(winner, kappa, m);
    }
    case PsiKind::Table: {
      for (const auto& entry : spec.table)
        if (entry.peaks == sorted_peaks) return clamp_to_line(entry.start, kappa, m);
      raise(ErrorCode::InvalidSpec, "table has no entry for the given peaks");
    }
    case PsiKind::TopBlock:
      raise(ErrorCode::InvalidSpec, "top-block output needs the full preference");
  }
  raise(ErrorCode::Internal, "unreachable");
}

AltInterval apply_psi(const PsiSpec& spec, const std::vector<Preference>& group_profile, int m) {
  if (group_profile.empty()) raise(ErrorCode::InvalidSpec, "empty group profile");
  if (spec.kind == PsiKind::TopBlock) {
    if (group_profile.size() != 1)
      raise(ErrorCode::RequiresSingletonGroups, "top-block representative needs a singleton group");
    const Preference& pref = group_profile[0];
    auto contour = pref.upper_contour(pref.at(spec.kappa));
    return AltInterval{contour.front(), static_cast<int>(contour.size())};
  }
  std::vector<Alt> peaks;
  peaks.reserve(group_profile.size());
  for (const auto& pref : group_profile) peaks.push_back(pref.peak());
  std::sort(peaks.begin(), peaks.end());
  return apply_psi_peaks(spec, peaks, m);
}

std::vector<int> interval_ranks(const Preference& pref, const AltInterval& interval) {
  std::vector<int> ranks;
  ranks.reserve(interval.len);
  for (Alt a = interval.start; a <= interval.end(); ++a) ranks.push_back(pref.rank_of(a));
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

IntervalOrder compare_intervals(const Preference& pref, const AltInterval& first,
                                const AltInterval& second, IntervalCmp cmp) {
  if (first.len != second.len)
    raise(ErrorCode::SizeMismatch, "intervals of sizes " + std::to_string(first.len) + " vs " +
                                       std::to_string(second.len));
  auto a = interval_ranks(pref, first);
  auto b = interval_ranks(pref, second);
  auto decide = [](int ra, int rb) {
    if (ra == rb) return IntervalOrder::Equal;
    return ra < rb ? IntervalOrder::FirstBetter : IntervalOrder::SecondBetter;
  };
  switch (cmp) {
    case IntervalCmp::Best:
      return decide(a.front(), b.front());
    case IntervalCmp::Worst:
      return decide(a.back(), b.back());
    case IntervalCmp::LexBest: {
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return decide(a[i], b[i]);
      return IntervalOrder::Equal;
    }
    case IntervalCmp::LexWorst: {
      for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return decide(a[i], b[i]);
      return IntervalOrder::Equal;
    }
  }
  raise(ErrorCode::Internal, "unreachable");
}

std::vector<std::vector<Alt>> enumerate_peak_multisets(int group_size, int m,
                                                       const Guards& guards) {
  check_m_guard(m, guards);
  check_n_guard(group_size, guards);
  std::vector<std::vector<Alt>> result;
  std::vector<Alt> current;
  auto recurse = [&](auto&& self, Alt from) -> void {
    if (static_cast<int>(current.size()) == group_size) {
      result.push_back(current);
      return;
    }
    for (Alt a = from; a <= m; ++a) {
      current.push_back(a);
      self(self, a);
      current.pop_back();
    }
  };
  recurse(recurse, 1);
  return result;
}

bool feasible_at(const PsiSpec& spec, Alt start, int z1, int z2, int group_size, int m,
                 const Guards& guards) {
  if (z1 < 0 || z1 > z2 || z2 > group_size)
    raise(ErrorCode::InvalidParameters, "need 0 <= z1 <= z2 <= group size");
  return PsiFeasibility(spec, group_size, m, guards).at(start, z1, z2);
}

bool feasible_set_at(const PsiSpec& spec, Alt start, const std::vector<int>& zs, int group_size,
                     int m, const Guards& guards) {
  for (size_t i = 0; i < zs.size(); ++i) {
    if (zs[i] < 0 || zs[i] > group_size || (i > 0 && zs[i] < zs[i - 1]))
      raise(ErrorCode::InvalidParameters, "pattern must be nondecreasing within [0, group size]");
  }
  return PsiFeasibility(spec, group_size, m, guards).set_at(start, zs);
}

Preference canonical_pref_with_peak(Alt peak, int m) {
  std::vector<Alt> ranking;
  ranking.reserve(m);
  for (Alt a = peak; a >= 1; --a) ranking.push_back(a);
  for (Alt a = peak + 1; a <= m; ++a) ranking.push_back(a);
  return Preference(std::move(ranking), m);
}

Preference pref_with_top_block(Alt peak, const AltInterval& block, int m) {
  if (!block.contains(peak)) raise(ErrorCode::Internal, "peak outside block");
  std::vector<Alt> ranking;
  ranking.reserve(m);
  for (Alt a = peak; a >= block.start; --a) ranking.push_back(a);
  for (Alt a = peak + 1; a <= block.end(); ++a) ranking.push_back(a);
  for (Alt a = block.start - 1; a >= 1; --a) ranking.push_back(a);
  for (Alt a = block.end() + 1; a <= m; ++a) ranking.push_back(a);
  return Preference(std::move(ranking), m);
}

namespace {

// Iterate over all group profiles in D^size.
template <typename Fn>
void for_each_group_profile(int group_size, int m, const Guards& guards, Fn&& fn) {
  auto domain = enumerate_single_peaked(m, guards);
  check_n_guard(group_size, guards);
  for_each_profile(domain, group_size, std::forward<Fn>(fn));
}

}  // namespace

bool is_top_ranged(const PsiSpec& spec, int group_size, int m, const Guards& guards) {
  bool ok = true;
  if (spec.tops_only()) {
    for (const auto& peaks : enumerate_peak_multisets(group_size, m, guards)) {
      auto interval = apply_psi_peaks(spec, peaks, m);
      if (interval.end() < peaks.front() || interval.start > peaks.back()) {
        ok = false;
        break;
      }
    }
    return ok;
  }
  for_each_group_profile(group_size, m, guards, [&](const Profile& profile) {
    auto peaks = peaks_of(profile);
    auto [lo, hi] = std::minmax_element(peaks.begin(), peaks.end());
    auto interval = apply_psi(spec, profile, m);
    if (interval.end() < *lo || interval.start > *hi) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool is_top_containing(const PsiSpec& spec, int group_size, int m, const Guards& guards) {
  bool ok = true;
  for_each_group_profile(group_size, m, guards, [&](const Profile& profile) {
    auto interval = apply_psi(spec, profile, m);
    for (const auto& pref : profile)
      if (interval.contains(pref.peak())) return true;
    ok = false;
    return false;
  });
  return ok;
}

bool is_compliant(const PsiSpec& spec, int group_size, int m, const Guards& guards) {
  if (spec.kappa < 1 || spec.kappa > m) return false;
  if (spec.kind == PsiKind::Table) {
    auto multisets = enumerate_peak_multisets(group_size, m, guards);
    for (const auto& peaks : multisets) {
      bool found = false;
      for (const auto& entry : spec.table)
        if (entry.peaks == peaks) {
          if (entry.start < 1 || entry.start + spec.kappa - 1 > m) return false;
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  bool sized = true;
  for_each_group_profile(group_size, m, guards, [&](const Profile& profile) {
    auto interval = apply_psi(spec, profile, m);
    if (interval.len != spec.kappa || interval.start < 1 || interval.end() > m) {
      sized = false;
      return false;
    }
    return true;
  });
  return sized && is_top_ranged(spec, group_size, m, guards);
}

namespace {

// One-position promotion of alternative a in the ranking; nullopt when a is
// already at the top or the shifted ranking leaves the single-peaked domain.
std::optional<Preference> shift_forward(const Preference& pref, Alt a, int m) {
  int r = pref.rank_of(a);
  if (r == 1) return std::nullopt;
  auto ranking = pref.ranking();
  std::swap(ranking[r - 1], ranking[r - 2]);
  if (!is_single_peaked(ranking, m)) return std::nullopt;
  return Preference(std::move(ranking), m);
}

}  // namespace

ScenarioProperties check_scenario_properties(const PsiSpec& spec, int group_size, int m,
                                             const Guards& guards) {
  ScenarioProperties props;
  props.anonymous = true;
  props.top_containing = true;
  props.candidate_monotone = true;
  for (IntervalCmp cmp : {IntervalCmp::Best, IntervalCmp::LexBest, IntervalCmp::Worst,
                          IntervalCmp::LexWorst})
    props.pareto_efficient[cmp] = true;

  for_each_group_profile(group_size, m, guards, [&](const Profile& profile) {
    auto output = apply_psi(spec, profile, m);

    // Anonymity: sorting the profile is reachable by a permutation, and all
    // permutations of a profile appear in the enumeration.
    Profile sorted_profile = profile;
    std::sort(sorted_profile.begin(), sorted_profile.end());
    if (apply_psi(spec, sorted_profile, m) != output) props.anonymous = false;

    bool contains_peak = false;
    for (const auto& pref : profile)
      if (output.contains(pref.peak())) contains_peak = true;
    if (!contains_peak) props.top_containing = false;

    for (Alt a = output.start; a <= output.end() && props.candidate_monotone; ++a) {
      for (int i = 0; i < group_size; ++i) {
        auto shifted = shift_forward(profile[i], a, m);
        if (!shifted) continue;
        Profile moved = profile;
        moved[i] = *shifted;
        if (!apply_psi(spec, moved, m).contains(a)) {
          props.candidate_monotone = false;
          break;
        }
      }
    }

    for (auto& [cmp, still_ok] : props.pareto_efficient) {
      if (!still_ok) continue;
      for (Alt s = 1; s + spec.kappa - 1 <= m; ++s) {
        AltInterval rival{s, spec.kappa};
        if (rival == output) continue;
        bool weakly_better_for_all = true;
        bool strictly_better_for_some = false;
        for (const auto& pref : profile) {
          auto order = compare_intervals(pref, rival, output, cmp);
          if (order == IntervalOrder::SecondBetter) {
            weakly_better_for_all = false;
            break;
          }
          if (order == IntervalOrder::FirstBetter) strictly_better_for_some = true;
        }
        if (weakly_better_for_all && strictly_better_for_some) {
          still_ok = false;
          break;
        }
      }
    }
    return true;
  });
  return props;
}

PsiFeasibility::PsiFeasibility(const PsiSpec& spec, int group_size, int m, const Guards& guards)
    : group_size_(group_size), m_(m), kappa_(spec.kappa) {
  auto record = [&](const std::vector<Alt>& sorted_peaks, const AltInterval& interval,
                    const Profile& witness) {
    Alt x = interval.start;
    std::vector<int> pattern{x};
    pattern.push_back(static_cast<int>(
        std::count_if(sorted_peaks.begin(), sorted_peaks.end(), [&](Alt p) { return p < x; })));
    for (int j = 1; j <= kappa_; ++j)
      pattern.push_back(static_cast<int>(std::count_if(
          sorted_peaks.begin(), sorted_peaks.end(), [&](Alt p) { return p <= x + j - 1; })));
    patterns_.emplace(pattern, witness);
    pairs_.emplace(std::vector<int>{x, pattern[1], pattern.back()}, witness);
  };

  if (spec.tops_only()) {
    for (const auto& peaks : enumerate_peak_multisets(group_size, m, guards)) {
      auto interval = apply_psi_peaks(spec, peaks, m);
      Profile witness;
      for (Alt p : peaks) witness.push_back(canonical_pref_with_peak(p, m));
      record(peaks, interval, witness);
    }
  } else {
    for_each_group_profile(group_size, m, guards, [&](const Profile& profile) {
      auto interval = apply_psi(spec, profile, m);
      auto peaks = peaks_of(profile);
      std::sort(peaks.begin(), peaks.end());
      record(peaks, interval, profile);
      return true;
    });
  }
}

bool PsiFeasibility::at(Alt x, int z1, int z2) const { return witness_at(x, z1, z2) != nullptr; }

bool PsiFeasibility::set_at(Alt x, const std::vector<int>& zs) const {
  return witness_set_at(x, zs) != nullptr;
}

const Profile* PsiFeasibility::witness_at(Alt x, int z1, int z2) const {
  auto it = pairs_.find({x, z1, z2});
  return it == pairs_.end() ? nullptr : &it->second;
}

const Profile* PsiFeasibility::witness_set_at(Alt x, const std::vector<int>& zs) const {
  if (static_cast<int>(zs.size()) != kappa_ + 1)
    raise(ErrorCode::InvalidParameters, "pattern must have kappa+1 entries");
  std::vector<int> key{x};
  key.insert(key.end(), zs.begin(), zs.end());
  auto it = patterns_.find(key);
  return it == patterns_.end() ? nullptr : &it->second;
}

}  // namespace fairsp
