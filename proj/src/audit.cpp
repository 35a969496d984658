#include "fairsp/audit.hpp"

#include <algorithm>
#include <map>

namespace fairsp {

namespace {

constexpr size_t kWitnessCap = 8;

std::string condition_detail(int q, const std::string& rest) {
  return "group " + std::to_string(q + 1) + ", " + rest;
}

// All profiles of D^n as lotteries of the rule, indexed by the odometer code
// sum idx_i * |D|^(n-1-i).
std::vector<Lottery> tabulate(const RuleEval& rule, const std::vector<Preference>& domain,
                              int n) {
  size_t total = 1;
  for (int i = 0; i < n; ++i) total *= domain.size();
  std::vector<Lottery> out;
  out.reserve(total);
  for_each_profile(domain, n, [&](const Profile& profile) {
    out.push_back(rule(profile));
    return true;
  });
  return out;
}

// Nondecreasing tuples of the given length over [0, limit].
void nondecreasing_tuples(int length, int limit, std::vector<std::vector<int>>& out) {
  std::vector<int> current;
  auto recurse = [&](auto&& self, int from) -> void {
    if (static_cast<int>(current.size()) == length) {
      out.push_back(current);
      return;
    }
    for (int v = from; v <= limit; ++v) {
      current.push_back(v);
      self(self, v);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
}

// All dominance chains gamma^0 << ... << gamma^len-1 in the lattice, built as
// the product of per-component nondecreasing paths.
std::vector<std::vector<GroupCounts>> dominance_chains(const GammaLattice& lattice, int length) {
  std::vector<std::vector<std::vector<int>>> per_component(lattice.dims());
  for (int q = 0; q < lattice.dims(); ++q)
    nondecreasing_tuples(length, lattice.sizes()[q], per_component[q]);
  std::vector<std::vector<GroupCounts>> chains;
  std::vector<int> pick(lattice.dims(), 0);
  for (;;) {
    std::vector<GroupCounts> chain(length, GroupCounts(std::vector<int>(lattice.dims(), 0)));
    for (int q = 0; q < lattice.dims(); ++q)
      for (int j = 0; j < length; ++j) chain[j].c[q] = per_component[q][pick[q]][j];
    chains.push_back(std::move(chain));
    int pos = lattice.dims() - 1;
    while (pos >= 0) {
      if (++pick[pos] < static_cast<int>(per_component[pos].size())) break;
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return chains;
}

void require_compliant(const GroupStructure& groups, const Guards& guards) {
  for (int q = 0; q < groups.group_count(); ++q)
    if (!is_compliant(groups.group(q).psi, groups.size(q), groups.m(), guards))
      raise(ErrorCode::NonCompliantScenario,
            "representative function of group " + std::to_string(q + 1));
}

std::vector<int> agents_of_mask(unsigned mask, int n) {
  std::vector<int> agents;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) agents.push_back(i + 1);
  return agents;
}

std::string mask_str(unsigned mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int agent : agents_of_mask(mask, n)) {
    if (!first) s += ",";
    s += std::to_string(agent);
    first = false;
  }
  return s + "}";
}

}  // namespace

void AuditReport::fail(std::string kind, std::string detail) {
  verdict = false;
  if (witnesses.size() < kWitnessCap) witnesses.push_back({std::move(kind), std::move(detail)});
}

AuditReport check_unanimity(const RuleEval& rule, int m, int n, const Guards& guards) {
  AuditReport report{"unanimity", "semantic"};
  auto domain = enumerate_single_peaked(m, guards);
  check_n_guard(n, guards);
  for (Alt a = 1; a <= m; ++a) {
    std::vector<Preference> peaked;
    for (const auto& pref : domain)
      if (pref.peak() == a) peaked.push_back(pref);
    for_each_profile(peaked, n, [&](const Profile& profile) {
      ++report.checked;
      if (rule(profile) != Lottery::point(m, a))
        report.fail("profile", format_profile(profile));
      return true;
    });
  }
  return report;
}

AuditReport check_strategy_proofness(const RuleEval& rule, int m, int n, const Guards& guards) {
  AuditReport report{"strategy-proofness", "semantic"};
  auto domain = enumerate_single_peaked(m, guards);
  check_n_guard(n, guards);
  auto lotteries = tabulate(rule, domain, n);
  const size_t d = domain.size();

  std::vector<size_t> code_stride(n, 1);
  for (int i = n - 2; i >= 0; --i) code_stride[i] = code_stride[i + 1] * d;

  std::vector<int> idx(n, 0);
  size_t code = 0;
  for (;;) {
    Profile profile;
    for (int i = 0; i < n; ++i) profile.push_back(domain[idx[i]]);
    for (int i = 0; i < n; ++i) {
      const size_t base = code - idx[i] * code_stride[i];
      for (size_t alt_pref = 0; alt_pref < d; ++alt_pref) {
        if (alt_pref == static_cast<size_t>(idx[i])) continue;
        size_t deviated = base + alt_pref * code_stride[i];
        for (Alt a = 1; a <= m; ++a) {
          ++report.checked;
          auto contour = profile[i].upper_contour(a);
          if (lotteries[code].mass(contour) < lotteries[deviated].mass(contour)) {
            report.fail("profile", format_profile(profile) + " | agent " + std::to_string(i + 1) +
                                       " gains at a" + std::to_string(a) + " via " +
                                       format_preference(domain[alt_pref]));
          }
        }
      }
    }
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < static_cast<int>(d)) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    code = 0;
    for (int i = 0; i < n; ++i) code += idx[i] * code_stride[i];
  }
  return report;
}

AuditReport check_group_anonymity(const RuleEval& rule, const GroupStructure& groups,
                                  const Guards& guards) {
  AuditReport report{"group-anonymity", "semantic"};
  auto domain = enumerate_single_peaked(groups.m(), guards);
  check_n_guard(groups.n(), guards);
  // Sorting each group's preferences is reachable by a group-preserving
  // permutation; agreement with the sorted profile for every profile is
  // equivalent to agreement across all group-preserving permutations.
  for_each_profile(domain, groups.n(), [&](const Profile& profile) {
    ++report.checked;
    Profile canonical = profile;
    for (int q = 0; q < groups.group_count(); ++q) {
      auto block = groups.subprofile(profile, q);
      std::sort(block.begin(), block.end());
      const auto& agents = groups.group(q).agents;
      for (size_t i = 0; i < agents.size(); ++i) canonical[agents[i] - 1] = block[i];
    }
    if (rule(profile) != rule(canonical))
      report.fail("profile", format_profile(profile));
    return true;
  });
  return report;
}

AuditReport check_weak_fair_semantic(const RuleEval& rule, const GroupStructure& groups,
                                     const Guards& guards) {
  AuditReport report{"weak", "semantic"};
  require_compliant(groups, guards);
  auto domain = enumerate_single_peaked(groups.m(), guards);
  check_n_guard(groups.n(), guards);
  for_each_profile(domain, groups.n(), [&](const Profile& profile) {
    Lottery lottery = rule(profile);
    for (int q = 0; q < groups.group_count(); ++q) {
      ++report.checked;
      auto interval = apply_psi(groups.group(q).psi, groups.subprofile(profile, q), groups.m());
      if (lottery.mass(interval.alts()) < groups.group(q).eta)
        report.fail("profile", format_profile(profile) + " | group " + std::to_string(q + 1) +
                                   " gets " + lottery.mass(interval.alts()).str() + " on " +
                                   interval.str());
    }
    return true;
  });
  return report;
}

AuditReport check_strong_fair_semantic(const RuleEval& rule, const GroupStructure& groups,
                                       const Guards& guards) {
  AuditReport report{"strong", "semantic"};
  require_compliant(groups, guards);
  auto domain = enumerate_single_peaked(groups.m(), guards);
  check_n_guard(groups.n(), guards);
  for_each_profile(domain, groups.n(), [&](const Profile& profile) {
    Lottery lottery = rule(profile);
    for (int q = 0; q < groups.group_count(); ++q) {
      ++report.checked;
      auto interval = apply_psi(groups.group(q).psi, groups.subprofile(profile, q), groups.m());
      bool covered = false;
      for (Alt a = interval.start; a <= interval.end(); ++a)
        if (lottery.of(a) >= groups.group(q).eta) covered = true;
      if (!covered)
        report.fail("profile", format_profile(profile) + " | group " + std::to_string(q + 1) +
                                   " has no representative in " + interval.str() + " with mass >= " +
                                   groups.group(q).eta.str());
    }
    return true;
  });
  return report;
}

ScenarioFeasibility::ScenarioFeasibility(const GroupStructure& groups, const Guards& guards) {
  for (int q = 0; q < groups.group_count(); ++q)
    tables_.emplace_back(groups.group(q).psi, groups.size(q), groups.m(), guards);
}

AuditReport check_dc_weak(const GroupBallots& ballots, const GroupStructure& groups,
                          const Guards& guards) {
  return check_dc_weak(ballots, groups, ScenarioFeasibility(groups, guards));
}

AuditReport check_dc_weak(const GroupBallots& ballots, const GroupStructure& groups,
                          const ScenarioFeasibility& feasibility) {
  AuditReport report{"weak", "dc"};
  ballots.ensure_valid();
  const auto& lattice = ballots.lattice();
  const int m = ballots.m();
  auto gammas = lattice.all();
  for (int q = 0; q < groups.group_count(); ++q) {
    const int kappa = groups.group(q).kappa;
    const Rat& eta = groups.group(q).eta;
    for (const auto& upper : gammas) {
      for (const auto& lower : gammas) {
        if (!dominates(upper, lower)) continue;
        for (Alt x = 1; x + kappa - 1 <= m; ++x) {
          if (!feasibility.group(q).at(x, lower.c[q], upper.c[q])) continue;
          ++report.checked;
          Rat diff = ballots.ballot(upper).prefix(x + kappa - 1) - ballots.ballot(lower).prefix(x - 1);
          if (diff < eta)
            report.fail("condition",
                        condition_detail(q, "gamma=(" + upper.str() + ") gamma'=(" + lower.str() +
                                                ") x=" + std::to_string(x) + " gives " + diff.str()));
        }
      }
    }
  }
  return report;
}

AuditReport check_dc_strong(const GroupBallots& ballots, const GroupStructure& groups,
                            const Guards& guards) {
  return check_dc_strong(ballots, groups, ScenarioFeasibility(groups, guards));
}

AuditReport check_dc_strong(const GroupBallots& ballots, const GroupStructure& groups,
                            const ScenarioFeasibility& feasibility) {
  AuditReport report{"strong", "dc"};
  ballots.ensure_valid();
  const auto& lattice = ballots.lattice();
  const int m = ballots.m();
  for (int q = 0; q < groups.group_count(); ++q) {
    const int kappa = groups.group(q).kappa;
    const Rat& eta = groups.group(q).eta;
    auto chains = dominance_chains(lattice, kappa + 1);
    std::vector<int> pattern(kappa + 1);
    for (const auto& chain : chains) {
      for (int j = 0; j <= kappa; ++j) pattern[j] = chain[j].c[q];
      for (Alt x = 1; x + kappa - 1 <= m; ++x) {
        if (!feasibility.group(q).set_at(x, pattern)) continue;
        ++report.checked;
        bool satisfied = false;
        for (int t = 0; t < kappa && !satisfied; ++t) {
          Rat diff =
              ballots.ballot(chain[t + 1]).prefix(x + t) - ballots.ballot(chain[t]).prefix(x + t - 1);
          if (diff >= eta) satisfied = true;
        }
        if (!satisfied) {
          std::string desc = "chain";
          for (const auto& counts : chain) desc += " (" + counts.str() + ")";
          report.fail("condition", condition_detail(q, desc + " x=" + std::to_string(x)));
        }
      }
    }
  }
  return report;
}

namespace {

void require_group_minmax_mixture(const RandomRule& mixture, const GroupStructure& groups) {
  if (!mixture.all_group_minmax())
    raise(ErrorCode::MixedComponentKinds, "mixture must consist of count-indexed min-max rules");
  mixture.ensure_valid();
  for (int w = 0; w < mixture.size(); ++w)
    if (mixture.group_minmax(w).lattice().sizes() != groups.sizes())
      raise(ErrorCode::DimensionMismatch, "component over wrong group sizes");
}

}  // namespace

AuditReport check_ep_weak(const RandomRule& mixture, const GroupStructure& groups,
                          const Guards& guards) {
  return check_ep_weak(mixture, groups, ScenarioFeasibility(groups, guards));
}

AuditReport check_ep_weak(const RandomRule& mixture, const GroupStructure& groups,
                          const ScenarioFeasibility& feasibility) {
  AuditReport report{"weak", "ep"};
  require_group_minmax_mixture(mixture, groups);
  GammaLattice lattice(groups.sizes());
  const int m = groups.m();
  auto gammas = lattice.all();
  for (int q = 0; q < groups.group_count(); ++q) {
    const int kappa = groups.group(q).kappa;
    const Rat& eta = groups.group(q).eta;
    for (const auto& upper : gammas) {
      long long upper_idx = lattice.index_of(upper);
      for (const auto& lower : gammas) {
        if (!dominates(upper, lower)) continue;
        long long lower_idx = lattice.index_of(lower);
        for (Alt x = 1; x + kappa - 1 <= m; ++x) {
          if (!feasibility.group(q).at(x, lower.c[q], upper.c[q])) continue;
          ++report.checked;
          Rat total(0);
          for (int w = 0; w < mixture.size(); ++w) {
            const auto& component = mixture.group_minmax(w);
            if (component.param_by_index(lower_idx) >= x &&
                component.param_by_index(upper_idx) <= x + kappa - 1)
              total += mixture.components()[w].weight;
          }
          if (total < eta)
            report.fail("condition",
                        condition_detail(q, "gamma=(" + upper.str() + ") gamma'=(" + lower.str() +
                                                ") x=" + std::to_string(x) + " gathers " + total.str()));
        }
      }
    }
  }
  return report;
}

AuditReport check_ep_strong(const RandomRule& mixture, const GroupStructure& groups,
                            const Guards& guards) {
  return check_ep_strong(mixture, groups, ScenarioFeasibility(groups, guards));
}

AuditReport check_ep_strong(const RandomRule& mixture, const GroupStructure& groups,
                            const ScenarioFeasibility& feasibility) {
  AuditReport report{"strong", "ep"};
  require_group_minmax_mixture(mixture, groups);
  GammaLattice lattice(groups.sizes());
  const int m = groups.m();
  for (int q = 0; q < groups.group_count(); ++q) {
    const int kappa = groups.group(q).kappa;
    const Rat& eta = groups.group(q).eta;
    auto chains = dominance_chains(lattice, kappa + 1);
    std::vector<int> pattern(kappa + 1);
    for (const auto& chain : chains) {
      for (int j = 0; j <= kappa; ++j) pattern[j] = chain[j].c[q];
      std::vector<long long> chain_idx(kappa + 1);
      for (int j = 0; j <= kappa; ++j) chain_idx[j] = lattice.index_of(chain[j]);
      for (Alt x = 1; x + kappa - 1 <= m; ++x) {
        if (!feasibility.group(q).set_at(x, pattern)) continue;
        ++report.checked;
        bool satisfied = false;
        for (int t = 0; t < kappa && !satisfied; ++t) {
          Rat total(0);
          for (int w = 0; w < mixture.size(); ++w) {
            const auto& component = mixture.group_minmax(w);
            if (component.param_by_index(chain_idx[t]) >= x + t &&
                component.param_by_index(chain_idx[t + 1]) <= x + t)
              total += mixture.components()[w].weight;
          }
          if (total >= eta) satisfied = true;
        }
        if (!satisfied) {
          std::string desc = "chain";
          for (const auto& counts : chain) desc += " (" + counts.str() + ")";
          report.fail("condition", condition_detail(q, desc + " x=" + std::to_string(x)));
        }
      }
    }
  }
  return report;
}

namespace {

void check_per_agent_params(int n, const std::vector<int>& kappa, const std::vector<Rat>& eta,
                            int m) {
  if (static_cast<int>(kappa.size()) != n || static_cast<int>(eta.size()) != n)
    raise(ErrorCode::RequiresSingletonGroups, "need one kappa and eta per agent");
  for (int k : kappa)
    if (k < 1 || k > m) raise(ErrorCode::InvalidParameters, "kappa outside [1,m]");
  for (const Rat& e : eta)
    if (e < Rat(0) || e > Rat(1)) raise(ErrorCode::InvalidParameters, "eta outside [0,1]");
}

}  // namespace

AuditReport check_special_weak_semantic(const RuleEval& rule, int m,
                                        const std::vector<int>& kappa,
                                        const std::vector<Rat>& eta, const Guards& guards) {
  AuditReport report{"special-weak", "semantic"};
  const int n = static_cast<int>(kappa.size());
  check_per_agent_params(n, kappa, eta, m);
  auto domain = enumerate_single_peaked(m, guards);
  check_n_guard(n, guards);
  for_each_profile(domain, n, [&](const Profile& profile) {
    Lottery lottery = rule(profile);
    for (int i = 0; i < n; ++i) {
      ++report.checked;
      auto block = profile[i].upper_contour(profile[i].at(kappa[i]));
      if (lottery.mass(block) < eta[i])
        report.fail("profile",
                    format_profile(profile) + " | agent " + std::to_string(i + 1));
    }
    return true;
  });
  return report;
}

AuditReport check_special_strong_semantic(const RuleEval& rule, int m,
                                          const std::vector<int>& kappa,
                                          const std::vector<Rat>& eta, const Guards& guards) {
  AuditReport report{"special-strong", "semantic"};
  const int n = static_cast<int>(kappa.size());
  check_per_agent_params(n, kappa, eta, m);
  auto domain = enumerate_single_peaked(m, guards);
  check_n_guard(n, guards);
  for_each_profile(domain, n, [&](const Profile& profile) {
    Lottery lottery = rule(profile);
    for (int i = 0; i < n; ++i) {
      ++report.checked;
      auto block = profile[i].upper_contour(profile[i].at(kappa[i]));
      bool covered = false;
      for (Alt a : block)
        if (lottery.of(a) >= eta[i]) covered = true;
      if (!covered)
        report.fail("profile",
                    format_profile(profile) + " | agent " + std::to_string(i + 1));
    }
    return true;
  });
  return report;
}

AuditReport check_special_weak_dc(const SubsetBallots& ballots, const std::vector<int>& kappa,
                                  const std::vector<Rat>& eta) {
  AuditReport report{"special-weak", "dc"};
  ballots.ensure_valid();
  const int n = ballots.n();
  const int m = ballots.m();
  check_per_agent_params(n, kappa, eta, m);
  for (unsigned s1 = 1; s1 < (1u << n); ++s1) {
    // Proper submasks of s1 plus the empty set.
    for (unsigned s2 = s1;; s2 = (s2 - 1) & s1) {
      for (int i = 0; i < n; ++i) {
        if (!(s1 & (1u << i)) || (s2 & (1u << i))) continue;
        for (Alt x = 1; x + kappa[i] - 1 <= m; ++x) {
          ++report.checked;
          Rat diff =
              ballots.ballot(s1).prefix(x + kappa[i] - 1) - ballots.ballot(s2).prefix(x - 1);
          if (diff < eta[i])
            report.fail("condition", "S1=" + mask_str(s1, n) + " S2=" + mask_str(s2, n) +
                                         " agent " + std::to_string(i + 1) + " x=" +
                                         std::to_string(x) + " gives " + diff.str());
        }
      }
      if (s2 == 0) break;
    }
  }
  return report;
}

AuditReport check_special_strong_dc(const SubsetBallots& ballots, const std::vector<int>& kappa,
                                    const std::vector<Rat>& eta) {
  AuditReport report{"special-strong", "dc"};
  ballots.ensure_valid();
  const int n = ballots.n();
  const int m = ballots.m();
  check_per_agent_params(n, kappa, eta, m);
  for (int i = 0; i < n; ++i) {
    const int k = kappa[i];
    // Subset chains S^0 <= ... <= S^k encoded by per-agent join steps; agent i
    // joins strictly inside the chain.
    std::vector<int> join(n, 0);
    auto scan = [&](auto&& self, int agent) -> void {
      if (agent == n) {
        for (Alt x = 1; x + k - 1 <= m; ++x) {
          ++report.checked;
          bool satisfied = false;
          for (int t = 0; t < k && !satisfied; ++t) {
            unsigned lower = 0, upper = 0;
            for (int j = 0; j < n; ++j) {
              if (join[j] <= t) lower |= 1u << j;
              if (join[j] <= t + 1) upper |= 1u << j;
            }
            Rat diff = ballots.ballot(upper).prefix(x + t) - ballots.ballot(lower).prefix(x + t - 1);
            if (diff >= eta[i]) satisfied = true;
          }
          if (!satisfied) {
            std::string joins;
            for (int j = 0; j < n; ++j) joins += (j ? "," : "") + std::to_string(join[j]);
            report.fail("condition", "agent " + std::to_string(i + 1) + " joins=(" + joins +
                                         ") x=" + std::to_string(x));
          }
        }
        return;
      }
      int lo = agent == i ? 1 : 0;
      int hi = agent == i ? k : k + 1;
      for (int step = lo; step <= hi; ++step) {
        join[agent] = step;
        self(self, agent + 1);
      }
    };
    scan(scan, 0);
  }
  return report;
}

namespace {

void require_subset_minmax_mixture(const RandomRule& mixture, int n) {
  if (!mixture.all_subset_minmax())
    raise(ErrorCode::MixedComponentKinds, "mixture must consist of subset min-max rules");
  mixture.ensure_valid();
  for (int w = 0; w < mixture.size(); ++w)
    if (mixture.subset_minmax(w).n() != n)
      raise(ErrorCode::DimensionMismatch, "component over wrong n");
}

}  // namespace

AuditReport check_special_weak_ep(const RandomRule& mixture, const std::vector<int>& kappa,
                                  const std::vector<Rat>& eta) {
  AuditReport report{"special-weak", "ep"};
  const int n = static_cast<int>(kappa.size());
  require_subset_minmax_mixture(mixture, n);
  const int m = mixture.subset_minmax(0).m();
  check_per_agent_params(n, kappa, eta, m);
  // Disjoint pairs: each agent is in S1, in S2, or in neither.
  std::vector<int> side(n, 0);
  auto scan = [&](auto&& self, int agent) -> void {
    if (agent < n) {
      for (int v = 0; v < 3; ++v) {
        side[agent] = v;
        self(self, agent + 1);
      }
      return;
    }
    unsigned s1 = 0, s2 = 0;
    for (int j = 0; j < n; ++j) {
      if (side[j] == 1) s1 |= 1u << j;
      if (side[j] == 2) s2 |= 1u << j;
    }
    if (s2 == 0) return;
    for (int i = 0; i < n; ++i) {
      if (!(s2 & (1u << i))) continue;
      for (Alt x = 1; x + kappa[i] - 1 <= m; ++x) {
        ++report.checked;
        Rat total(0);
        for (int w = 0; w < mixture.size(); ++w) {
          const auto& component = mixture.subset_minmax(w);
          if (component.param(s1) >= x && component.param(s1 | s2) <= x + kappa[i] - 1)
            total += mixture.components()[w].weight;
        }
        if (total < eta[i])
          report.fail("condition", "S1=" + mask_str(s1, n) + " S2=" + mask_str(s2, n) + " agent " +
                                       std::to_string(i + 1) + " x=" + std::to_string(x) +
                                       " gathers " + total.str());
      }
    }
  };
  scan(scan, 0);
  return report;
}

AuditReport check_special_strong_ep(const RandomRule& mixture, const std::vector<int>& kappa,
                                    const std::vector<Rat>& eta) {
  AuditReport report{"special-strong", "ep"};
  const int n = static_cast<int>(kappa.size());
  require_subset_minmax_mixture(mixture, n);
  const int m = mixture.subset_minmax(0).m();
  check_per_agent_params(n, kappa, eta, m);
  for (int k : kappa)
    if (k > 3) raise(ErrorCode::SizeGuardExceeded, "kappa > 3 in the function-enumeration scan");

  std::vector<int> side(n, 0);
  auto scan = [&](auto&& self, int agent) -> void {
    if (agent < n) {
      for (int v = 0; v < 3; ++v) {
        side[agent] = v;
        self(self, agent + 1);
      }
      return;
    }
    unsigned s1 = 0, s2 = 0;
    for (int j = 0; j < n; ++j) {
      if (side[j] == 1) s1 |= 1u << j;
      if (side[j] == 2) s2 |= 1u << j;
    }
    if (s2 == 0) return;
    std::vector<int> members = agents_of_mask(s2, n);
    if (members.size() > 4)
      raise(ErrorCode::SizeGuardExceeded, "|S2| > 4 in the function-enumeration scan");
    for (int i = 0; i < n; ++i) {
      if (!(s2 & (1u << i))) continue;
      const int k = kappa[i];
      for (Alt x = 1; x + k - 1 <= m; ++x) {
        const Alt window_end = x + k - 1;
        // f maps each member of S2 to an alternative in the window.
        std::vector<Alt> image(members.size(), x);
        for (;;) {
          ++report.checked;
          auto members_with = [&](auto&& pred) {
            unsigned mask = 0;
            for (size_t j = 0; j < members.size(); ++j)
              if (pred(image[j])) mask |= 1u << (members[j] - 1);
            return mask;
          };
          std::vector<Alt> range = image;
          std::sort(range.begin(), range.end());
          range.erase(std::unique(range.begin(), range.end()), range.end());

          bool satisfied = false;
          for (Alt b : range) {
            unsigned before = s1 | members_with([&](Alt v) { return v < b; });
            unsigned upto = s1 | members_with([&](Alt v) { return v <= b; });
            Rat total(0);
            for (int w = 0; w < mixture.size(); ++w) {
              const auto& component = mixture.subset_minmax(w);
              if (component.param(before) >= b && component.param(upto) <= b)
                total += mixture.components()[w].weight;
            }
            if (total >= eta[i]) {
              satisfied = true;
              break;
            }
          }
          if (!satisfied) {
            for (Alt c = x; c <= window_end && !satisfied; ++c) {
              if (std::binary_search(range.begin(), range.end(), c)) continue;
              Alt u;
              if (c < range.front())
                u = x - 1;
              else if (c > range.back())
                u = window_end;
              else {
                u = range.front();
                for (Alt b : range)
                  if (b < c) u = b;
              }
              unsigned set = s1 | members_with([&](Alt v) { return v <= u; });
              Rat total(0);
              for (int w = 0; w < mixture.size(); ++w)
                if (mixture.subset_minmax(w).param(set) == c)
                  total += mixture.components()[w].weight;
              if (total >= eta[i]) satisfied = true;
            }
          }
          if (!satisfied) {
            std::string fdesc;
            for (size_t j = 0; j < members.size(); ++j)
              fdesc += (j ? "," : "") + std::to_string(members[j]) + "->a" + std::to_string(image[j]);
            report.fail("condition", "S1=" + mask_str(s1, n) + " S2=" + mask_str(s2, n) +
                                         " agent " + std::to_string(i + 1) + " x=" +
                                         std::to_string(x) + " f=(" + fdesc + ")");
          }
          size_t pos = 0;
          while (pos < image.size()) {
            if (++image[pos] <= window_end) break;
            image[pos] = x;
            ++pos;
          }
          if (pos == image.size()) break;
        }
      }
    }
  };
  scan(scan, 0);
  return report;
}

namespace {

void require_median_mixture(const RandomRule& mixture, int n) {
  if (!mixture.all_median())
    raise(ErrorCode::MixedComponentKinds, "mixture must consist of median rules");
  mixture.ensure_valid();
  for (int w = 0; w < mixture.size(); ++w)
    if (mixture.median(w).n() != n) raise(ErrorCode::DimensionMismatch, "component over wrong n");
}

}  // namespace

AuditReport check_anonymous_weak(const RandomRule& mixture, const std::vector<int>& kappa,
                                 const std::vector<Rat>& eta) {
  AuditReport report{"anonymous-weak", "characterization"};
  const int n = static_cast<int>(kappa.size());
  require_median_mixture(mixture, n);
  const int m = mixture.median(0).m();
  check_per_agent_params(n, kappa, eta, m);
  for (int r = 0; r <= n - 1; ++r) {
    for (int i = 0; i < n; ++i) {
      for (Alt x = 1; x + kappa[i] - 1 <= m; ++x) {
        ++report.checked;
        Rat total(0);
        for (int w = 0; w < mixture.size(); ++w) {
          const auto& params = mixture.median(w).params();
          Alt lo = params[r], hi = params[r + 1];
          if (lo <= x + kappa[i] - 1 && hi >= x) total += mixture.components()[w].weight;
        }
        if (total < eta[i])
          report.fail("condition", "r=" + std::to_string(r) + " agent " + std::to_string(i + 1) +
                                       " interval [a" + std::to_string(x) + ",a" +
                                       std::to_string(x + kappa[i] - 1) + "] gathers " +
                                       total.str());
      }
    }
  }
  return report;
}

AuditReport check_anonymous_strong(const RandomRule& mixture, const std::vector<int>& kappa,
                                   const std::vector<Rat>& eta) {
  AuditReport report{"anonymous-strong", "characterization"};
  const int n = static_cast<int>(kappa.size());
  require_median_mixture(mixture, n);
  const int m = mixture.median(0).m();
  check_per_agent_params(n, kappa, eta, m);
  for (int i = 0; i < n; ++i) {
    const int k = kappa[i];
    for (Alt x = 1; x + k - 1 <= m; ++x) {
      const Alt window_end = x + k - 1;
      for (int r = 1; r <= n; ++r) {
        for (int s = 0; s <= n - r; ++s) {
          std::vector<std::vector<int>> tuples;
          nondecreasing_tuples(s + 1, window_end - x, tuples);
          for (const auto& offsets : tuples) {
            ++report.checked;
            std::vector<Alt> b(offsets.size());
            for (size_t j = 0; j < offsets.size(); ++j) b[j] = x + offsets[j];
            bool satisfied = false;
            for (Alt c : b) {
              if (satisfied) break;
              Rat total(0);
              for (int w = 0; w < mixture.size(); ++w) {
                const auto& params = mixture.median(w).params();
                bool hit = false;
                for (size_t j = 0; j < b.size(); ++j) {
                  if (b[j] != c) continue;
                  int t = r + static_cast<int>(j);
                  if (params[n - t] <= c && c <= params[n - t + 1]) hit = true;
                }
                if (hit) total += mixture.components()[w].weight;
              }
              if (total >= eta[i]) satisfied = true;
            }
            if (!satisfied) {
              for (Alt c = x; c <= window_end && !satisfied; ++c) {
                if (std::find(b.begin(), b.end(), c) != b.end()) continue;
                int u;
                if (c < b.front())
                  u = r - 1;
                else if (c > b.back())
                  u = r + s;
                else {
                  u = r - 1;
                  for (size_t j = 0; j < b.size(); ++j)
                    if (b[j] < c) u = r + static_cast<int>(j);
                }
                Rat total(0);
                for (int w = 0; w < mixture.size(); ++w)
                  if (mixture.median(w).params()[n - u] == c)
                    total += mixture.components()[w].weight;
                if (total >= eta[i]) satisfied = true;
              }
            }
            if (!satisfied) {
              std::string bdesc;
              for (size_t j = 0; j < b.size(); ++j)
                bdesc += (j ? "," : "") + ("a" + std::to_string(b[j]));
              report.fail("condition", "agent " + std::to_string(i + 1) + " r=" + std::to_string(r) +
                                           " s=" + std::to_string(s) + " I=[a" + std::to_string(x) +
                                           ",a" + std::to_string(window_end) + "] b=(" + bdesc + ")");
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace fairsp
