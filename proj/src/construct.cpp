#include "fairsp/construct.hpp"

#include <algorithm>

namespace fairsp {

namespace {

int kappa_min(const GroupStructure& groups) {
  int k = groups.group(0).kappa;
  for (int q = 1; q < groups.group_count(); ++q) k = std::min(k, groups.group(q).kappa);
  return k;
}

Rat eta_max(const GroupStructure& groups) {
  Rat e = groups.group(0).eta;
  for (int q = 1; q < groups.group_count(); ++q) e = std::max(e, groups.group(q).eta);
  return e;
}

int counts_total(const GroupCounts& counts) {
  int total = 0;
  for (int v : counts.c) total += v;
  return total;
}

// Interior parameters as a function of the total count keep dominance
// monotonicity automatically.
GroupMinMax ladder_rule(const GammaLattice& lattice, int m,
                        const std::function<Alt(int)>& interior_of_total) {
  std::vector<Alt> params(lattice.count());
  for (long long idx = 0; idx < lattice.count(); ++idx) {
    GroupCounts counts = lattice.counts_of(idx);
    if (counts == lattice.bottom())
      params[idx] = m;
    else if (counts == lattice.top())
      params[idx] = 1;
    else
      params[idx] = interior_of_total(counts_total(counts));
  }
  return GroupMinMax(lattice.sizes(), m, std::move(params));
}

Construction finish(std::vector<RandomComponent> components, Rat residual, int offset) {
  if (residual < Rat(0)) raise(ErrorCode::Internal, "negative residual weight");
  if (residual > Rat(0)) components.front().weight += residual;
  Construction result;
  result.rule = RandomRule(std::move(components)).normalized();
  result.filler_weight = residual;
  result.offset = offset;
  return result;
}

}  // namespace

Construction construct_case1(const GroupStructure& groups, LadderScheme ladder) {
  const int m = groups.m();
  const int kmin = kappa_min(groups);
  Rat quota_sum(0);
  for (int q = 0; q < groups.group_count(); ++q) quota_sum += groups.group(q).eta;
  if (quota_sum > Rat(1))
    raise(ErrorCode::PreconditionViolated, "quota sum " + quota_sum.str() + " exceeds 1");
  if (2 * kmin < m + 1)
    raise(ErrorCode::PreconditionViolated,
          "kappa_min=" + std::to_string(kmin) + " below (m+1)/2 for m=" + std::to_string(m));

  GammaLattice lattice(groups.sizes());
  std::vector<RandomComponent> components;
  for (int q = 0; q < groups.group_count(); ++q) {
    if (groups.group(q).eta == Rat(0)) continue;
    const int kq = groups.group(q).kappa;
    const Alt hi = kq;            // a_{kappa_q}
    const Alt lo = m - kq + 1;    // a_{m-kappa_q+1} <= hi under the precondition
    std::function<Alt(int)> interior;
    if (ladder == LadderScheme::Constant) {
      interior = [kmin](int) { return kmin; };
    } else {
      interior = [hi, lo](int total) { return std::max(lo, hi - (total - 1)); };
    }
    components.push_back({groups.group(q).eta, ladder_rule(lattice, m, interior)});
  }
  if (components.empty())
    components.push_back(
        {Rat(0), ladder_rule(lattice, m, [kmin](int) { return kmin; })});
  return finish(std::move(components), Rat(1) - quota_sum, 0);
}

Construction construct_case2(const GroupStructure& groups, int offset) {
  const int m = groups.m();
  const int kmin = kappa_min(groups);
  const int pieces = m / kmin;
  const Rat emax = eta_max(groups);
  if (Rat(pieces) * emax > Rat(1))
    raise(ErrorCode::PreconditionViolated,
          std::to_string(pieces) + " * " + emax.str() + " exceeds 1");
  const int remainder = m - kmin * pieces;
  // The ladder d, d+kmin, ... must meet every kappa_min-window of the line,
  // which pins d to [remainder+1, kmin].
  const int d_lo = remainder + 1;
  const int d_hi = kmin;
  if (offset == -1) offset = d_hi;
  if (offset < d_lo || offset > d_hi)
    raise(ErrorCode::InvalidOffset, "d=" + std::to_string(offset) + " outside [" +
                                        std::to_string(d_lo) + "," + std::to_string(d_hi) + "]");

  GammaLattice lattice(groups.sizes());
  std::vector<RandomComponent> components;
  for (int i = 0; i < pieces; ++i) {
    Alt rung = offset + i * kmin;
    components.push_back({emax, ladder_rule(lattice, m, [rung](int) { return rung; })});
  }
  return finish(std::move(components), Rat(1) - Rat(pieces) * emax, offset);
}

Construction construct_case3(const GroupStructure& groups, const Guards& guards) {
  const int m = groups.m();
  const int n = groups.n();
  const int kmin = kappa_min(groups);
  const Rat emax = eta_max(groups);
  if (emax > Rat(1, n))
    raise(ErrorCode::PreconditionViolated, "eta_max " + emax.str() + " exceeds 1/n");
  if (2 * kmin >= m + 1)
    raise(ErrorCode::PreconditionViolated, "kappa_min not below (m+1)/2");
  for (int q = 0; q < groups.group_count(); ++q)
    if (!is_top_containing(groups.group(q).psi, groups.size(q), m, guards))
      raise(ErrorCode::NotTopContaining,
            "representative function of group " + std::to_string(q + 1));

  GammaLattice lattice(groups.sizes());
  const Alt low_rung = kmin;
  const Alt high_rung = m - kmin + 1;
  std::vector<RandomComponent> components;
  for (int i = 1; i <= n; ++i) {
    auto interior = [low_rung, high_rung, i](int total) {
      return total >= i ? low_rung : high_rung;
    };
    components.push_back({Rat(1, n), ladder_rule(lattice, m, interior)});
  }
  return finish(std::move(components), Rat(0), 0);
}

}  // namespace fairsp
