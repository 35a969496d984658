#include "fairsp/rules.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fairsp {

namespace {

std::string gamma_pair(const GroupCounts& a, const GroupCounts& b, int t) {
  return "(" + a.str() + ") vs (" + b.str() + ") at t=" + std::to_string(t);
}

void throw_first(const ValidationReport& report, ErrorCode code) {
  if (report.ok) return;
  const auto& issue = report.issues.front();
  raise(code, issue.kind + " " + issue.detail);
}

// Covering pairs gamma' = gamma - e_q suffice for monotonicity checks:
// dominance is the transitive closure of the covers.
template <typename Fn>
void for_each_cover(const GammaLattice& lattice, Fn&& fn) {
  for (long long idx = 0; idx < lattice.count(); ++idx) {
    GroupCounts upper = lattice.counts_of(idx);
    for (int q = 0; q < lattice.dims(); ++q) {
      if (upper.c[q] == 0) continue;
      GroupCounts lower = upper;
      --lower.c[q];
      fn(upper, lower);
    }
  }
}

}  // namespace

GroupBallots::GroupBallots(std::vector<int> group_sizes, int m, std::vector<Lottery> ballots)
    : lattice_(std::move(group_sizes)), m_(m), ballots_(std::move(ballots)) {
  if (static_cast<long long>(ballots_.size()) != lattice_.count())
    raise(ErrorCode::MissingBallot,
          std::to_string(ballots_.size()) + " ballots for a lattice of " +
              std::to_string(lattice_.count()));
  for (const auto& ballot : ballots_)
    if (ballot.m() != m_) raise(ErrorCode::DimensionMismatch, "ballot over wrong m");
}

int GroupBallots::n() const {
  int total = 0;
  for (int s : lattice_.sizes()) total += s;
  return total;
}

const Lottery& GroupBallots::ballot(const GroupCounts& counts) const {
  return ballots_[lattice_.index_of(counts)];
}

ValidationReport GroupBallots::validate() const {
  ValidationReport report;
  for (long long idx = 0; idx < lattice_.count(); ++idx)
    if (!ballots_[idx].valid())
      report.add("not-a-lottery", "ballot (" + lattice_.counts_of(idx).str() + ")");
  if (ballot(lattice_.bottom()).of(m_) != Rat(1))
    report.add("ballot-unanimity", "bottom ballot must put mass 1 on a" + std::to_string(m_));
  if (ballot(lattice_.top()).of(1) != Rat(1))
    report.add("ballot-unanimity", "top ballot must put mass 1 on a1");
  for_each_cover(lattice_, [&](const GroupCounts& upper, const GroupCounts& lower) {
    const Lottery& up = ballot(upper);
    const Lottery& lo = ballot(lower);
    Rat up_prefix(0), lo_prefix(0);
    for (int t = 1; t <= m_; ++t) {
      up_prefix += up.of(t);
      lo_prefix += lo.of(t);
      if (up_prefix < lo_prefix) report.add("monotonicity", gamma_pair(upper, lower, t));
    }
  });
  return report;
}

void GroupBallots::ensure_valid() const { throw_first(validate(), ErrorCode::InvalidBallotFamily); }

Lottery GroupBallots::evaluate(const Profile& profile, const GroupStructure& groups) const {
  if (static_cast<int>(profile.size()) != n())
    raise(ErrorCode::DimensionMismatch, "profile size " + std::to_string(profile.size()));
  if (groups.sizes() != lattice_.sizes())
    raise(ErrorCode::DimensionMismatch, "group sizes do not match the ballot family");
  Lottery result(m_);
  Rat previous(0);
  for (int t = 1; t <= m_; ++t) {
    Rat current = ballot(prefix_peak_counts(profile, t, groups)).prefix(t);
    result.of(t) = current - previous;
    previous = current;
  }
  return result;
}

bool GroupBallots::operator==(const GroupBallots& o) const {
  return lattice_.sizes() == o.lattice_.sizes() && m_ == o.m_ && ballots_ == o.ballots_;
}

SubsetBallots::SubsetBallots(int n, int m, std::vector<Lottery> ballots, const Guards& guards)
    : n_(n), m_(m), ballots_(std::move(ballots)) {
  if (n < 1 || n > guards.max_subset_n)
    raise(ErrorCode::SizeGuardExceeded, "subset-indexed rule over n=" + std::to_string(n));
  if (ballots_.size() != (1u << n))
    raise(ErrorCode::MissingBallot, "need one ballot per agent subset");
  for (const auto& ballot : ballots_)
    if (ballot.m() != m_) raise(ErrorCode::DimensionMismatch, "ballot over wrong m");
}

ValidationReport SubsetBallots::validate() const {
  ValidationReport report;
  for (unsigned mask = 0; mask < ballots_.size(); ++mask)
    if (!ballots_[mask].valid())
      report.add("not-a-lottery", "ballot for mask " + std::to_string(mask));
  if (ballots_[0].of(m_) != Rat(1))
    report.add("ballot-unanimity", "empty-set ballot must put mass 1 on a" + std::to_string(m_));
  if (ballots_.back().of(1) != Rat(1))
    report.add("ballot-unanimity", "full-set ballot must put mass 1 on a1");
  for (unsigned mask = 0; mask < ballots_.size(); ++mask) {
    for (int i = 0; i < n_; ++i) {
      if (mask & (1u << i)) continue;
      unsigned larger = mask | (1u << i);
      Rat small_prefix(0), large_prefix(0);
      for (int t = 1; t <= m_; ++t) {
        small_prefix += ballots_[mask].of(t);
        large_prefix += ballots_[larger].of(t);
        if (large_prefix < small_prefix)
          report.add("monotonicity", "masks " + std::to_string(mask) + " subset of " +
                                         std::to_string(larger) + " at t=" + std::to_string(t));
      }
    }
  }
  return report;
}

void SubsetBallots::ensure_valid() const {
  throw_first(validate(), ErrorCode::InvalidBallotFamily);
}

Lottery SubsetBallots::evaluate(const Profile& profile) const {
  if (static_cast<int>(profile.size()) != n_)
    raise(ErrorCode::DimensionMismatch, "profile size " + std::to_string(profile.size()));
  auto mask_at = [&](int t) {
    unsigned mask = 0;
    for (int i = 0; i < n_; ++i)
      if (profile[i].peak() <= t) mask |= 1u << i;
    return mask;
  };
  Lottery result(m_);
  Rat previous(0);
  for (int t = 1; t <= m_; ++t) {
    Rat current = ballots_[mask_at(t)].prefix(t);
    result.of(t) = current - previous;
    previous = current;
  }
  return result;
}

GroupMinMax::GroupMinMax(std::vector<int> group_sizes, int m, std::vector<Alt> params)
    : lattice_(std::move(group_sizes)), m_(m), params_(std::move(params)) {
  if (static_cast<long long>(params_.size()) != lattice_.count())
    raise(ErrorCode::InvalidParameters, "need one parameter per count vector");
  for (Alt a : params_)
    if (a < 1 || a > m_) raise(ErrorCode::InvalidParameters, "parameter out of range");
}

ValidationReport GroupMinMax::validate() const {
  ValidationReport report;
  if (param(lattice_.bottom()) != m_)
    report.add("parameter-unanimity", "bottom parameter must be a" + std::to_string(m_));
  if (param(lattice_.top()) != 1) report.add("parameter-unanimity", "top parameter must be a1");
  for_each_cover(lattice_, [&](const GroupCounts& upper, const GroupCounts& lower) {
    if (param(upper) > param(lower)) report.add("monotonicity", gamma_pair(upper, lower, 0));
  });
  return report;
}

void GroupMinMax::ensure_valid() const { throw_first(validate(), ErrorCode::InvalidParameters); }

Alt GroupMinMax::evaluate(const Profile& profile, const GroupStructure& groups) const {
  if (groups.sizes() != lattice_.sizes())
    raise(ErrorCode::DimensionMismatch, "group sizes do not match the parameters");
  int g = lattice_.dims();
  std::vector<std::vector<Alt>> sorted_peaks(g);
  for (int q = 0; q < g; ++q) sorted_peaks[q] = groups.group_peaks_sorted(profile, q);
  Alt best = m_;
  for (long long idx = 0; idx < lattice_.count(); ++idx) {
    GroupCounts counts = lattice_.counts_of(idx);
    Alt value = params_[idx];
    for (int q = 0; q < g; ++q)
      value = std::max(value, tau_of_peaks(sorted_peaks[q], counts.c[q]));
    best = std::min(best, value);
  }
  return best;
}

bool GroupMinMax::operator==(const GroupMinMax& o) const {
  return lattice_.sizes() == o.lattice_.sizes() && m_ == o.m_ && params_ == o.params_;
}

bool GroupMinMax::operator<(const GroupMinMax& o) const { return params_ < o.params_; }

SubsetMinMax::SubsetMinMax(int n, int m, std::vector<Alt> params, const Guards& guards)
    : n_(n), m_(m), params_(std::move(params)) {
  if (n < 1 || n > guards.max_subset_n)
    raise(ErrorCode::SizeGuardExceeded, "subset-indexed rule over n=" + std::to_string(n));
  if (params_.size() != (1u << n))
    raise(ErrorCode::InvalidParameters, "need one parameter per agent subset");
  for (Alt a : params_)
    if (a < 1 || a > m_) raise(ErrorCode::InvalidParameters, "parameter out of range");
}

ValidationReport SubsetMinMax::validate() const {
  ValidationReport report;
  if (params_[0] != m_)
    report.add("parameter-unanimity", "empty-set parameter must be a" + std::to_string(m_));
  if (params_.back() != 1) report.add("parameter-unanimity", "full-set parameter must be a1");
  for (unsigned mask = 0; mask < params_.size(); ++mask)
    for (int i = 0; i < n_; ++i) {
      if (mask & (1u << i)) continue;
      if (params_[mask | (1u << i)] > params_[mask])
        report.add("monotonicity",
                   "masks " + std::to_string(mask) + " subset of " + std::to_string(mask | (1u << i)));
    }
  return report;
}

void SubsetMinMax::ensure_valid() const { throw_first(validate(), ErrorCode::InvalidParameters); }

Alt SubsetMinMax::evaluate(const Profile& profile) const {
  if (static_cast<int>(profile.size()) != n_)
    raise(ErrorCode::DimensionMismatch, "profile size " + std::to_string(profile.size()));
  Alt best = m_;
  for (unsigned mask = 0; mask < params_.size(); ++mask) {
    Alt value = params_[mask];
    for (int i = 0; i < n_; ++i)
      if (mask & (1u << i)) value = std::max(value, profile[i].peak());
    best = std::min(best, value);
  }
  return best;
}

SubsetMinMax SubsetMinMax::dictatorship(int n, int m, int agent, const Guards& guards) {
  std::vector<Alt> params(1u << n, m);
  for (unsigned mask = 0; mask < params.size(); ++mask)
    if (mask & (1u << (agent - 1))) params[mask] = 1;
  return SubsetMinMax(n, m, std::move(params), guards);
}

bool SubsetMinMax::operator==(const SubsetMinMax& o) const {
  return n_ == o.n_ && m_ == o.m_ && params_ == o.params_;
}

bool SubsetMinMax::operator<(const SubsetMinMax& o) const { return params_ < o.params_; }

MedianRule::MedianRule(int n, int m, std::vector<Alt> params)
    : n_(n), m_(m), params_(std::move(params)) {
  if (static_cast<int>(params_.size()) != n_ + 1)
    raise(ErrorCode::InvalidParameters, "median rule needs n+1 parameters");
  for (Alt a : params_)
    if (a < 1 || a > m_) raise(ErrorCode::InvalidParameters, "parameter out of range");
}

ValidationReport MedianRule::validate() const {
  ValidationReport report;
  if (params_.front() != 1) report.add("parameter-unanimity", "first parameter must be a1");
  if (params_.back() != m_)
    report.add("parameter-unanimity", "last parameter must be a" + std::to_string(m_));
  for (size_t i = 1; i < params_.size(); ++i)
    if (params_[i] < params_[i - 1])
      report.add("monotonicity", "parameters decrease at index " + std::to_string(i));
  return report;
}

void MedianRule::ensure_valid() const { throw_first(validate(), ErrorCode::InvalidParameters); }

Alt MedianRule::evaluate(const Profile& profile) const {
  if (static_cast<int>(profile.size()) != n_)
    raise(ErrorCode::DimensionMismatch, "profile size " + std::to_string(profile.size()));
  std::vector<Alt> values = peaks_of(profile);
  values.insert(values.end(), params_.begin(), params_.end());
  std::nth_element(values.begin(), values.begin() + n_, values.end());
  return values[n_];  // 2n+1 values, median at 0-based position n
}

bool MedianRule::operator==(const MedianRule& o) const {
  return n_ == o.n_ && m_ == o.m_ && params_ == o.params_;
}

bool MedianRule::operator<(const MedianRule& o) const { return params_ < o.params_; }

Alt evaluate_det(const DetRule& rule, const Profile& profile, const GroupStructure* groups) {
  if (const auto* gmm = std::get_if<GroupMinMax>(&rule)) {
    if (!groups) raise(ErrorCode::InvalidParameters, "group structure required");
    return gmm->evaluate(profile, *groups);
  }
  if (const auto* smm = std::get_if<SubsetMinMax>(&rule)) return smm->evaluate(profile);
  return std::get<MedianRule>(rule).evaluate(profile);
}

RandomRule::RandomRule(std::vector<RandomComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) raise(ErrorCode::InvalidParameters, "mixture with no components");
}

bool RandomRule::all_group_minmax() const {
  return std::all_of(components_.begin(), components_.end(), [](const RandomComponent& c) {
    return std::holds_alternative<GroupMinMax>(c.rule);
  });
}

bool RandomRule::all_median() const {
  return std::all_of(components_.begin(), components_.end(), [](const RandomComponent& c) {
    return std::holds_alternative<MedianRule>(c.rule);
  });
}

bool RandomRule::all_subset_minmax() const {
  return std::all_of(components_.begin(), components_.end(), [](const RandomComponent& c) {
    return std::holds_alternative<SubsetMinMax>(c.rule);
  });
}

const GroupMinMax& RandomRule::group_minmax(int w) const {
  if (!std::holds_alternative<GroupMinMax>(components_[w].rule))
    raise(ErrorCode::MixedComponentKinds, "component " + std::to_string(w));
  return std::get<GroupMinMax>(components_[w].rule);
}

const SubsetMinMax& RandomRule::subset_minmax(int w) const {
  if (!std::holds_alternative<SubsetMinMax>(components_[w].rule))
    raise(ErrorCode::MixedComponentKinds, "component " + std::to_string(w));
  return std::get<SubsetMinMax>(components_[w].rule);
}

const MedianRule& RandomRule::median(int w) const {
  if (!std::holds_alternative<MedianRule>(components_[w].rule))
    raise(ErrorCode::MixedComponentKinds, "component " + std::to_string(w));
  return std::get<MedianRule>(components_[w].rule);
}

ValidationReport RandomRule::validate() const {
  ValidationReport report;
  Rat total(0);
  for (const auto& component : components_) {
    if (component.weight <= Rat(0)) report.add("weights", "nonpositive component weight");
    total += component.weight;
    ValidationReport inner = std::visit(
        [](const auto& rule) { return rule.validate(); }, component.rule);
    for (auto& issue : inner.issues) report.add(issue.kind, issue.detail);
  }
  if (total != Rat(1)) report.add("weights", "weights sum to " + total.str());
  return report;
}

void RandomRule::ensure_valid() const { throw_first(validate(), ErrorCode::InvalidParameters); }

Lottery RandomRule::evaluate(const Profile& profile, const GroupStructure* groups) const {
  int m = 0;
  std::visit([&](const auto& rule) { m = rule.m(); }, components_.front().rule);
  Lottery result(m);
  for (const auto& component : components_)
    result.of(evaluate_det(component.rule, profile, groups)) += component.weight;
  return result;
}

RandomRule RandomRule::normalized() const {
  std::map<std::pair<size_t, std::vector<long long>>, Rat> merged;
  auto key_of = [](const DetRule& rule) {
    std::vector<long long> key;
    std::visit(
        [&](const auto& r) {
          for (Alt a : r.params()) key.push_back(a);
        },
        rule);
    return std::make_pair(rule.index(), key);
  };
  for (const auto& component : components_) {
    auto key = key_of(component.rule);
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, component.weight);
    else
      it->second += component.weight;
  }
  std::vector<RandomComponent> out;
  for (const auto& component : components_) {
    auto key = key_of(component.rule);
    auto it = merged.find(key);
    if (it == merged.end()) continue;
    out.push_back({it->second, component.rule});
    merged.erase(it);
  }
  std::sort(out.begin(), out.end(), [&](const RandomComponent& a, const RandomComponent& b) {
    return key_of(a.rule) < key_of(b.rule);
  });
  return RandomRule(std::move(out));
}

RandomRule decompose_group_ballots(const GroupBallots& ballots) {
  ballots.ensure_valid();
  const auto& lattice = ballots.lattice();
  const int m = ballots.m();

  std::set<Rat> thresholds;
  for (long long idx = 0; idx < lattice.count(); ++idx) {
    Rat prefix(0);
    for (int t = 1; t <= m; ++t) {
      prefix += ballots.ballot_by_index(idx).of(t);
      if (prefix > Rat(0)) thresholds.insert(prefix);
    }
  }
  thresholds.insert(Rat(1));

  std::vector<RandomComponent> components;
  Rat previous(0);
  for (const Rat& u : thresholds) {
    std::vector<Alt> params(lattice.count(), m);
    for (long long idx = 0; idx < lattice.count(); ++idx) {
      Rat prefix(0);
      for (int t = 1; t <= m; ++t) {
        prefix += ballots.ballot_by_index(idx).of(t);
        if (prefix >= u) {
          params[idx] = t;
          break;
        }
      }
    }
    components.push_back({u - previous, GroupMinMax(lattice.sizes(), m, std::move(params))});
    previous = u;
  }
  return RandomRule(std::move(components)).normalized();
}

GroupBallots group_ballots_from_mixture(const RandomRule& mixture) {
  if (!mixture.all_group_minmax())
    raise(ErrorCode::MixedComponentKinds, "mixture must consist of count-indexed min-max rules");
  const auto& first = mixture.group_minmax(0);
  const auto sizes = first.lattice().sizes();
  const int m = first.m();
  for (int w = 1; w < mixture.size(); ++w) {
    const auto& rule = mixture.group_minmax(w);
    if (rule.lattice().sizes() != sizes || rule.m() != m)
      raise(ErrorCode::MixedComponentKinds, "components over different lattices");
  }
  GammaLattice lattice(sizes);
  std::vector<Lottery> ballots(lattice.count(), Lottery(m));
  for (long long idx = 0; idx < lattice.count(); ++idx)
    for (int w = 0; w < mixture.size(); ++w)
      ballots[idx].of(mixture.group_minmax(w).param_by_index(idx)) +=
          mixture.components()[w].weight;
  return GroupBallots(sizes, m, std::move(ballots));
}

GroupMinMax group_minmax_from_median(const MedianRule& rule) {
  const int n = rule.n();
  std::vector<Alt> params(n + 1);
  for (int count = 0; count <= n; ++count) params[count] = rule.params()[n - count];
  return GroupMinMax({n}, rule.m(), std::move(params));
}

namespace {

// Count-lattice index of the 0/1 vector matching an agent subset mask.
long long gamma_index_of_mask(const GammaLattice& lattice, unsigned mask, int n) {
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = (mask >> i) & 1;
  return lattice.index_of(GroupCounts(std::move(c)));
}

}  // namespace

GroupBallots group_ballots_from_subset(const SubsetBallots& ballots) {
  const int n = ballots.n();
  std::vector<int> sizes(n, 1);
  GammaLattice lattice(sizes);
  std::vector<Lottery> out(lattice.count(), Lottery(ballots.m()));
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    out[gamma_index_of_mask(lattice, mask, n)] = ballots.ballot(mask);
  return GroupBallots(sizes, ballots.m(), std::move(out));
}

SubsetBallots subset_ballots_from_group(const GroupBallots& ballots, const Guards& guards) {
  const auto& lattice = ballots.lattice();
  for (int s : lattice.sizes())
    if (s != 1) raise(ErrorCode::RequiresSingletonGroups, "group of size " + std::to_string(s));
  const int n = lattice.dims();
  std::vector<Lottery> out(1u << n, Lottery(ballots.m()));
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    out[mask] = ballots.ballot_by_index(gamma_index_of_mask(lattice, mask, n));
  return SubsetBallots(n, ballots.m(), std::move(out), guards);
}

GroupMinMax group_minmax_from_subset(const SubsetMinMax& rule) {
  const int n = rule.n();
  std::vector<int> sizes(n, 1);
  GammaLattice lattice(sizes);
  std::vector<Alt> params(lattice.count(), rule.m());
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    params[gamma_index_of_mask(lattice, mask, n)] = rule.param(mask);
  return GroupMinMax(sizes, rule.m(), std::move(params));
}

SubsetMinMax subset_minmax_from_group(const GroupMinMax& rule, const Guards& guards) {
  const auto& lattice = rule.lattice();
  for (int s : lattice.sizes())
    if (s != 1) raise(ErrorCode::RequiresSingletonGroups, "group of size " + std::to_string(s));
  const int n = lattice.dims();
  std::vector<Alt> params(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    params[mask] = rule.param_by_index(gamma_index_of_mask(lattice, mask, n));
  return SubsetMinMax(n, rule.m(), std::move(params), guards);
}

GroupStructure plain_groups(const std::vector<int>& sizes, int m) {
  std::vector<GroupSpec> specs;
  int agent = 1;
  for (int size : sizes) {
    GroupSpec spec;
    for (int i = 0; i < size; ++i) spec.agents.push_back(agent++);
    spec.kappa = 1;
    spec.psi.kind = PsiKind::RankAnchored;
    spec.psi.kappa = 1;
    specs.push_back(std::move(spec));
  }
  return GroupStructure(std::move(specs), agent - 1, m);
}

Lottery evaluate_any(const AnyRule& rule, const Profile& profile, const GroupStructure* groups) {
  if (const auto* gb = std::get_if<GroupBallots>(&rule)) {
    if (!groups) raise(ErrorCode::InvalidParameters, "group structure required");
    return gb->evaluate(profile, *groups);
  }
  if (const auto* sb = std::get_if<SubsetBallots>(&rule)) return sb->evaluate(profile);
  if (const auto* gmm = std::get_if<GroupMinMax>(&rule)) {
    if (!groups) raise(ErrorCode::InvalidParameters, "group structure required");
    return Lottery::point(gmm->m(), gmm->evaluate(profile, *groups));
  }
  if (const auto* smm = std::get_if<SubsetMinMax>(&rule))
    return Lottery::point(smm->m(), smm->evaluate(profile));
  if (const auto* med = std::get_if<MedianRule>(&rule))
    return Lottery::point(med->m(), med->evaluate(profile));
  return std::get<RandomRule>(rule).evaluate(profile, groups);
}

ValidationReport validate_any(const AnyRule& rule) {
  return std::visit([](const auto& r) { return r.validate(); }, rule);
}

RuleEval make_eval(const AnyRule& rule, const GroupStructure* groups) {
  return [rule, groups](const Profile& profile) { return evaluate_any(rule, profile, groups); };
}

}  // namespace fairsp
