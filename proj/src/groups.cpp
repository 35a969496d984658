#include "fairsp/groups.hpp"

#include <algorithm>
#include <sstream>

namespace fairsp {

std::string GroupCounts::str() const {
  std::ostringstream out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out << ',';
    out << c[i];
  }
  return out.str();
}

bool dominates(const GroupCounts& a, const GroupCounts& b) {
  if (a.dims() != b.dims())
    raise(ErrorCode::DimensionMismatch, "count vectors of dimension " +
                                            std::to_string(a.dims()) + " vs " +
                                            std::to_string(b.dims()));
  for (int q = 0; q < a.dims(); ++q)
    if (a.c[q] < b.c[q]) return false;
  return true;
}

bool chains_through(const std::vector<GroupCounts>& chain) {
  if (chain.empty()) raise(ErrorCode::DimensionMismatch, "empty chain");
  for (size_t i = 1; i < chain.size(); ++i)
    if (!dominates(chain[i], chain[i - 1])) return false;
  return true;
}

GammaLattice::GammaLattice(std::vector<int> group_sizes) : sizes_(std::move(group_sizes)) {
  if (sizes_.empty()) raise(ErrorCode::InvalidParameters, "no groups");
  strides_.assign(sizes_.size(), 1);
  count_ = 1;
  for (int q = static_cast<int>(sizes_.size()) - 1; q >= 0; --q) {
    if (sizes_[q] < 1) raise(ErrorCode::InvalidParameters, "empty group");
    strides_[q] = count_;
    count_ *= sizes_[q] + 1;
  }
}

long long GammaLattice::index_of(const GroupCounts& counts) const {
  if (counts.dims() != dims())
    raise(ErrorCode::DimensionMismatch, "counts dimension " + std::to_string(counts.dims()));
  long long idx = 0;
  for (int q = 0; q < dims(); ++q) {
    if (counts.c[q] < 0 || counts.c[q] > sizes_[q])
      raise(ErrorCode::IndexOutOfRange, "count " + std::to_string(counts.c[q]) +
                                            " for group of size " + std::to_string(sizes_[q]));
    idx += counts.c[q] * strides_[q];
  }
  return idx;
}

GroupCounts GammaLattice::counts_of(long long index) const {
  if (index < 0 || index >= count_) raise(ErrorCode::IndexOutOfRange, "lattice index");
  std::vector<int> c(dims());
  for (int q = 0; q < dims(); ++q) {
    c[q] = static_cast<int>(index / strides_[q]);
    index %= strides_[q];
  }
  return GroupCounts(std::move(c));
}

std::vector<GroupCounts> GammaLattice::all() const {
  std::vector<GroupCounts> result;
  result.reserve(count_);
  for (long long i = 0; i < count_; ++i) result.push_back(counts_of(i));
  return result;
}

GroupCounts GammaLattice::bottom() const { return GroupCounts(std::vector<int>(dims(), 0)); }

GroupCounts GammaLattice::top() const { return GroupCounts(sizes_); }

std::vector<GroupCounts> enumerate_group_counts(const std::vector<int>& group_sizes,
                                                const Guards& guards) {
  GammaLattice lattice(group_sizes);
  long long limit = 1;
  for (int q = 0; q < lattice.dims(); ++q) limit *= guards.max_n + 1;
  if (lattice.count() > (1LL << 20))
    raise(ErrorCode::SizeGuardExceeded, "count lattice with " +
                                            std::to_string(lattice.count()) + " elements");
  (void)limit;
  return lattice.all();
}

GroupStructure::GroupStructure(std::vector<GroupSpec> specs, int n, int m)
    : specs_(std::move(specs)), n_(n), m_(m) {
  if (specs_.empty()) raise(ErrorCode::InvalidParameters, "no groups");
  if (n < 1) raise(ErrorCode::InvalidParameters, "n must be >= 1");
  group_of_.assign(n, -1);
  for (int q = 0; q < group_count(); ++q) {
    auto& spec = specs_[q];
    if (spec.agents.empty()) raise(ErrorCode::InvalidParameters, "empty group");
    std::sort(spec.agents.begin(), spec.agents.end());
    for (int agent : spec.agents) {
      if (agent < 1 || agent > n)
        raise(ErrorCode::InconsistentInstance,
              "agent " + std::to_string(agent) + " outside 1.." + std::to_string(n));
      if (group_of_[agent - 1] != -1)
        raise(ErrorCode::InconsistentInstance, "agent " + std::to_string(agent) + " in two groups");
      group_of_[agent - 1] = q;
    }
    if (spec.kappa < 1 || spec.kappa > m)
      raise(ErrorCode::InvalidParameters, "kappa " + std::to_string(spec.kappa) +
                                              " outside [1," + std::to_string(m) + "]");
    if (spec.psi.kappa != spec.kappa)
      raise(ErrorCode::InconsistentInstance, "psi kappa mismatch for group " + std::to_string(q + 1));
    if (spec.eta < Rat(0) || spec.eta > Rat(1))
      raise(ErrorCode::InvalidParameters, "eta " + spec.eta.str() + " outside [0,1]");
    if (spec.psi.kind == PsiKind::RankAnchored &&
        (spec.psi.rank < 1 || spec.psi.rank > static_cast<int>(spec.agents.size())))
      raise(ErrorCode::InvalidSpec, "rank parameter outside [1,group size]");
    if (spec.psi.kind == PsiKind::TopBlock && spec.agents.size() != 1)
      raise(ErrorCode::RequiresSingletonGroups, "top-block representative needs a singleton group");
  }
  for (int a = 0; a < n; ++a)
    if (group_of_[a] == -1)
      raise(ErrorCode::InconsistentInstance, "agent " + std::to_string(a + 1) + " not covered");
}

std::vector<int> GroupStructure::sizes() const {
  std::vector<int> result;
  result.reserve(group_count());
  for (const auto& spec : specs_) result.push_back(static_cast<int>(spec.agents.size()));
  return result;
}

int GroupStructure::group_of(int agent) const {
  if (agent < 1 || agent > n_) raise(ErrorCode::IndexOutOfRange, "agent " + std::to_string(agent));
  return group_of_[agent - 1];
}

bool GroupStructure::all_singletons() const {
  for (const auto& spec : specs_)
    if (spec.agents.size() != 1) return false;
  return true;
}

std::vector<Preference> GroupStructure::subprofile(const Profile& profile, int q) const {
  std::vector<Preference> result;
  result.reserve(specs_[q].agents.size());
  for (int agent : specs_[q].agents) result.push_back(profile[agent - 1]);
  return result;
}

std::vector<Alt> GroupStructure::group_peaks_sorted(const Profile& profile, int q) const {
  std::vector<Alt> peaks;
  peaks.reserve(specs_[q].agents.size());
  for (int agent : specs_[q].agents) peaks.push_back(profile[agent - 1].peak());
  std::sort(peaks.begin(), peaks.end());
  return peaks;
}

GroupCounts prefix_peak_counts(const Profile& profile, int t, const GroupStructure& groups) {
  std::vector<int> c(groups.group_count(), 0);
  if (t > 0) {
    for (int agent = 1; agent <= groups.n(); ++agent)
      if (profile[agent - 1].peak() <= t) ++c[groups.group_of(agent)];
  }
  return GroupCounts(std::move(c));
}

}  // namespace fairsp
