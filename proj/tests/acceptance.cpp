// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every threshold is exact rational arithmetic; there are no
// tolerances anywhere.

#include <functional>
#include <iostream>
#include <set>

#include "fairsp/audit.hpp"
#include "fairsp/construct.hpp"
#include "fixtures.hpp"

using namespace fairsp;
using namespace fairsp::testfix;

namespace {

int failures = 0;

struct Criterion {
  std::string label;
  int problems = 0;
  long long checked = 0;
  std::string first_problem;

  explicit Criterion(std::string label_) : label(std::move(label_)) {}

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      ++problems;
      if (first_problem.empty()) first_problem = what;
    }
  }

  void finish() {
    if (problems == 0) {
      std::cout << "PASS " << label << " (" << checked << " checks)\n";
    } else {
      std::cout << "FAIL " << label << " (" << problems << "/" << checked
                << " checks failed; first: " << first_problem << ")\n";
      ++failures;
    }
  }
};

std::vector<PsiKind> four_kinds() {
  return {PsiKind::RankAnchored, PsiKind::PeakCoverage, PsiKind::AgentCoverage,
          PsiKind::PluralityStart};
}

GroupStructure scenario_groups(const std::vector<std::vector<int>>& parts, int m, int kappa,
                               const Rat& eta, PsiKind kind, int rank = 1) {
  std::vector<GroupSpec> specs;
  int n = 0;
  for (const auto& agents : parts) {
    GroupSpec spec;
    spec.agents = agents;
    n += agents.size();
    spec.kappa = kappa;
    spec.eta = eta;
    spec.psi.kind = kind;
    spec.psi.kappa = kappa;
    spec.psi.rank = std::min<int>(rank, agents.size());
    specs.push_back(spec);
  }
  return GroupStructure(std::move(specs), n, m);
}

// All partitions of {1..n} into one or two groups.
std::vector<std::vector<std::vector<int>>> partitions_up_to_two(int n) {
  std::vector<std::vector<std::vector<int>>> result;
  result.push_back({[&] {
    std::vector<int> all;
    for (int i = 1; i <= n; ++i) all.push_back(i);
    return all;
  }()});
  // Nonempty proper subsets containing agent 1, to avoid mirror duplicates.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    std::vector<int> left, right;
    for (int i = 0; i < n; ++i) ((mask >> i) & 1u ? left : right).push_back(i + 1);
    if (right.empty()) continue;
    result.push_back({left, right});
  }
  return result;
}

void criterion1() {
  Criterion c{"criterion 1: worked examples reproduce exactly"};

  auto profile = example_profile();

  auto pfbr_lottery = subset_ballots_table().evaluate(profile);
  c.expect(pfbr_lottery.of(2) == Rat(1, 2), "subset ballots give a2 = 1/2");
  c.expect(pfbr_lottery == [] {
    Lottery l(3);
    l.of(1) = Rat(3, 10);
    l.of(2) = Rat(1, 2);
    l.of(3) = Rat(1, 5);
    return l;
  }(), "subset ballots full lottery");

  auto groups = groups_1_3();
  auto group_lottery = group_ballots_table().evaluate(profile, groups);
  c.expect(group_lottery.of(3) == Rat(1, 2), "group ballots give a3 = 1/2");
  Lottery expected(3);
  expected.of(1) = Rat(2, 5);
  expected.of(2) = Rat(1, 10);
  expected.of(3) = Rat(1, 2);
  c.expect(group_lottery == expected, "group ballots full lottery (2/5, 1/10, 1/2)");

  c.expect(subset_minmax_table().evaluate(profile) == 2, "subset min-max winner a2");
  c.expect(group_minmax_table().evaluate(profile, groups) == 2, "count-indexed min-max winner a2");
  c.expect(median_example().evaluate(profile) == 2, "median winner a2");

  {
    const int n = 5, m = 10;
    std::vector<RandomComponent> components;
    for (int agent = 1; agent <= n; ++agent)
      components.push_back({Rat(1, n), SubsetMinMax::dictatorship(n, m, agent)});
    RandomRule dictatorship(std::move(components));
    Profile wide = parse_profile(
        "a3>a2>a4>a5>a6>a7>a8>a9>a10>a1;a3>a2>a4>a5>a6>a7>a8>a9>a10>a1;"
        "a2>a3>a4>a5>a6>a7>a8>a9>a10>a1;a1>a2>a3>a4>a5>a6>a7>a8>a9>a10;"
        "a1>a2>a3>a4>a5>a6>a7>a8>a9>a10",
        m);
    auto lottery = dictatorship.evaluate(wide, nullptr);
    c.expect(lottery.of(1) == Rat(2, 5) && lottery.of(2) == Rat(1, 5) && lottery.of(3) == Rat(2, 5),
             "random dictatorship lottery (2/5, 1/5, 2/5)");
  }

  // The strong-fairness inequalities at the worked profile, with the
  // representatives every built-in scenario selects there: {a1} and {a2,a3}.
  for (PsiKind kind : four_kinds()) {
    auto fair_groups = groups_1_3(1, 2, Rat(1, 3), Rat(2, 5), kind);
    auto i1 = apply_psi(fair_groups.group(0).psi, fair_groups.subprofile(profile, 0), 3);
    auto i2 = apply_psi(fair_groups.group(1).psi, fair_groups.subprofile(profile, 1), 3);
    c.expect(i1 == AltInterval{1, 1} && i2 == AltInterval{2, 2},
             "representatives at the worked profile are {a1} and {a2,a3}");
    bool g1 = false, g2 = false;
    for (Alt a = i1.start; a <= i1.end(); ++a)
      if (group_lottery.of(a) >= fair_groups.group(0).eta) g1 = true;
    for (Alt a = i2.start; a <= i2.end(); ++a)
      if (group_lottery.of(a) >= fair_groups.group(1).eta) g2 = true;
    c.expect(g1 && g2, "strong-fairness inequalities hold at the worked profile");
  }

  c.finish();
}

void criterion2() {
  Criterion c{"criterion 2: semantic and characterization verdicts agree"};
  Rng rng(220817);
  const int m = 3;
  std::vector<Rat> eta_grid{Rat(0), Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(1)};
  int rules_audited = 0, true_verdicts = 0, false_verdicts = 0;

  for (int n = 2; n <= 4; ++n) {
    for (const auto& parts : partitions_up_to_two(n)) {
      std::vector<int> sizes;
      for (const auto& agents : parts) sizes.push_back(agents.size());
      int max_size = *std::max_element(sizes.begin(), sizes.end());
      for (PsiKind kind : four_kinds()) {
        for (int rank = 1; rank <= (kind == PsiKind::RankAnchored ? max_size : 1); ++rank) {
          for (int kappa : {1, 2, 3}) {
            for (const Rat& eta : eta_grid) {
              auto groups = scenario_groups(parts, m, kappa, eta, kind, rank);
              ScenarioFeasibility feasibility(groups);
              auto family = random_group_ballots(sizes, m, rng);
              auto mixture = decompose_group_ballots(family);
              auto eval = make_eval(AnyRule(family), &groups);
              ++rules_audited;

              auto weak = check_weak_fair_semantic(eval, groups);
              c.expect(check_dc_weak(family, groups, feasibility).verdict == weak.verdict,
                       "weak direct scan disagrees");
              c.expect(check_ep_weak(mixture, groups, feasibility).verdict == weak.verdict,
                       "weak extreme-point scan disagrees");
              auto strong = check_strong_fair_semantic(eval, groups);
              c.expect(check_dc_strong(family, groups, feasibility).verdict == strong.verdict,
                       "strong direct scan disagrees");
              c.expect(check_ep_strong(mixture, groups, feasibility).verdict == strong.verdict,
                       "strong extreme-point scan disagrees");
              if (strong.verdict)
                c.expect(weak.verdict, "strong fairness must imply weak fairness");
              (weak.verdict ? true_verdicts : false_verdicts) += 1;
              (strong.verdict ? true_verdicts : false_verdicts) += 1;
            }
          }
        }
      }
    }
  }

  // Singleton-group conditions over subset rules.
  for (int n = 2; n <= 3; ++n) {
    std::vector<int> singleton_sizes(n, 1);
    for (int kappa : {1, 2, 3}) {
      std::vector<int> kappas(n, kappa);
      for (const Rat& eta : eta_grid) {
        std::vector<Rat> etas(n, eta);
        for (int round = 0; round < 4; ++round) {
          auto family = random_group_ballots(singleton_sizes, m, rng);
          auto subset = subset_ballots_from_group(family);
          auto mixture = decompose_group_ballots(family);
          std::vector<RandomComponent> parts;
          for (int w = 0; w < mixture.size(); ++w)
            parts.push_back({mixture.components()[w].weight,
                             subset_minmax_from_group(mixture.group_minmax(w))});
          RandomRule subset_mix{std::move(parts)};
          auto eval = [&](const Profile& p) { return subset.evaluate(p); };
          ++rules_audited;

          auto weak = check_special_weak_semantic(eval, m, kappas, etas);
          c.expect(check_special_weak_dc(subset, kappas, etas).verdict == weak.verdict,
                   "per-agent weak direct scan disagrees");
          c.expect(check_special_weak_ep(subset_mix, kappas, etas).verdict == weak.verdict,
                   "per-agent weak extreme-point scan disagrees");
          auto strong = check_special_strong_semantic(eval, m, kappas, etas);
          c.expect(check_special_strong_dc(subset, kappas, etas).verdict == strong.verdict,
                   "per-agent strong direct scan disagrees");
          c.expect(check_special_strong_ep(subset_mix, kappas, etas).verdict == strong.verdict,
                   "per-agent strong extreme-point scan disagrees");
          (weak.verdict ? true_verdicts : false_verdicts) += 1;
        }
      }
    }
  }

  // Anonymous median mixtures.
  for (int n = 2; n <= 4; ++n) {
    for (int kappa : {1, 2, 3}) {
      std::vector<int> kappas(n, kappa);
      for (const Rat& eta : eta_grid) {
        std::vector<Rat> etas(n, eta);
        for (int round = 0; round < 4; ++round) {
          auto mixture = random_median_mixture(n, m, 3, rng);
          auto eval = [&](const Profile& p) { return mixture.evaluate(p, nullptr); };
          ++rules_audited;
          c.expect(check_anonymous_weak(mixture, kappas, etas).verdict ==
                       check_special_weak_semantic(eval, m, kappas, etas).verdict,
                   "anonymous weak scan disagrees");
          c.expect(check_anonymous_strong(mixture, kappas, etas).verdict ==
                       check_special_strong_semantic(eval, m, kappas, etas).verdict,
                   "anonymous strong scan disagrees");
        }
      }
    }
  }

  c.expect(rules_audited >= 200, "at least 200 random rules audited");
  c.expect(true_verdicts > 0 && false_verdicts > 0, "sweep exercises both verdicts");
  c.finish();
}

void criterion3() {
  Criterion c{"criterion 3: generated rules satisfy the structure theorems"};
  Rng rng(3);
  const int m = 3;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& parts : partitions_up_to_two(n)) {
      std::vector<int> sizes;
      for (const auto& agents : parts) sizes.push_back(agents.size());
      GroupStructure groups = plain_groups(sizes, m);
      for (int round = 0; round < 3; ++round) {
        auto family = random_group_ballots(sizes, m, rng);
        c.expect(family.validate().ok, "generated family is valid");
        auto eval = make_eval(AnyRule(family), &groups);
        c.expect(check_unanimity(eval, m, n).verdict, "family unanimity");
        c.expect(check_strategy_proofness(eval, m, n).verdict, "family strategy-proofness");
        c.expect(check_group_anonymity(eval, groups).verdict, "family group anonymity");

        auto det = random_group_minmax(sizes, m, rng);
        c.expect(det.validate().ok, "generated min-max rule is valid");
        auto det_eval = make_eval(AnyRule(det), &groups);
        c.expect(check_unanimity(det_eval, m, n).verdict, "min-max unanimity");
        c.expect(check_strategy_proofness(det_eval, m, n).verdict, "min-max strategy-proofness");
        c.expect(check_group_anonymity(det_eval, groups).verdict, "min-max group anonymity");
      }
    }
  }
  c.finish();
}

void criterion4() {
  Criterion c{"criterion 4: decomposition is an exact round trip"};
  Rng rng(44);
  int rules = 0;
  for (int m : {3, 4}) {
    auto domain = enumerate_single_peaked(m);
    for (const auto& sizes :
         std::vector<std::vector<int>>{{1, 3}, {2, 2}, {4}, {1, 1, 1, 1}, {1, 2}, {3}}) {
      int n = 0;
      for (int s : sizes) n += s;
      GroupStructure groups = plain_groups(sizes, m);
      for (int round = 0; round < 17; ++round) {
        auto family = random_group_ballots(sizes, m, rng);
        auto mixture = decompose_group_ballots(family);
        ++rules;
        for (int w = 0; w < mixture.size(); ++w)
          c.expect(mixture.group_minmax(w).validate().ok, "component is a valid min-max rule");
        c.expect(group_ballots_from_mixture(mixture) == family, "aggregation returns the input");
        bool lotteries_match = true;
        for_each_profile(domain, n, [&](const Profile& profile) {
          if (mixture.evaluate(profile, &groups) != family.evaluate(profile, groups)) {
            lotteries_match = false;
            return false;
          }
          return true;
        });
        c.expect(lotteries_match, "per-profile lotteries match exactly");
      }
    }
  }
  c.expect(rules >= 200, "at least 200 random families decomposed");
  c.finish();
}

void criterion5() {
  Criterion basics{
      "criterion 5a: built-in scenarios are compliant, anonymous, top-containing"};
  Criterion monotone{"criterion 5b: built-in scenarios are candidate monotone"};
  Criterion pareto{"criterion 5c: built-in scenarios are pareto-efficient (best, lex-best)"};
  Criterion lemma{"criterion 5d: containment characterization by dual evaluation"};

  auto spec_of = [](PsiKind kind, int kappa, int rank) {
    PsiSpec spec;
    spec.kind = kind;
    spec.kappa = kappa;
    spec.rank = rank;
    return spec;
  };

  auto always_nested = [](const PsiSpec& spec, int size, int m) {
    bool nested = true;
    auto domain = enumerate_single_peaked(m);
    for_each_profile(domain, size, [&](const Profile& profile) {
      auto peaks = peaks_of(profile);
      auto [lo, hi] = std::minmax_element(peaks.begin(), peaks.end());
      auto interval = apply_psi(spec, profile, m);
      bool covers = interval.start <= *lo && interval.end() >= *hi;
      bool inside = interval.start >= *lo && interval.end() <= *hi;
      if (!covers && !inside) {
        nested = false;
        return false;
      }
      return true;
    });
    return nested;
  };
  auto always_inside = [](const PsiSpec& spec, int size, int m) {
    bool inside = true;
    auto domain = enumerate_single_peaked(m);
    for_each_profile(domain, size, [&](const Profile& profile) {
      auto peaks = peaks_of(profile);
      auto [lo, hi] = std::minmax_element(peaks.begin(), peaks.end());
      auto interval = apply_psi(spec, profile, m);
      if (interval.start < *lo || interval.end() > *hi) {
        inside = false;
        return false;
      }
      return true;
    });
    return inside;
  };

  Rng rng(55);
  for (int m = 2; m <= 4; ++m) {
    for (int size = 1; size <= 3; ++size) {
      std::vector<std::pair<std::string, PsiSpec>> specs;
      for (int kappa = 1; kappa <= m; ++kappa) {
        for (int rank = 1; rank <= size; ++rank)
          specs.push_back({"R1", spec_of(PsiKind::RankAnchored, kappa, rank)});
        specs.push_back({"R2", spec_of(PsiKind::PeakCoverage, kappa, 1)});
        specs.push_back({"R3", spec_of(PsiKind::AgentCoverage, kappa, 1)});
        specs.push_back({"R4", spec_of(PsiKind::PluralityStart, kappa, 1)});
      }
      for (const auto& [name, spec] : specs) {
        std::string where = name + " m=" + std::to_string(m) + " size=" + std::to_string(size) +
                            " kappa=" + std::to_string(spec.kappa);
        basics.expect(is_compliant(spec, size, m), where + " compliance");
        auto props = check_scenario_properties(spec, size, m);
        basics.expect(props.anonymous, where + " anonymity");
        basics.expect(props.top_containing, where + " top-containingness");
        monotone.expect(props.candidate_monotone, where + " candidate monotonicity");
        pareto.expect(props.pareto_efficient.at(IntervalCmp::Best), where + " best");
        pareto.expect(props.pareto_efficient.at(IntervalCmp::LexBest), where + " lex-best");
        lemma.expect(props.pareto_efficient.at(IntervalCmp::Best) == always_nested(spec, size, m),
                     where + " plain-best matches nesting");
        if (always_inside(spec, size, m)) {
          lemma.expect(props.pareto_efficient.at(IntervalCmp::Worst), where + " worst");
          lemma.expect(props.pareto_efficient.at(IntervalCmp::LexWorst), where + " lex-worst");
        }
      }

      // Random compliant table scenarios keep the dual evaluation honest.
      for (int round = 0; round < 3; ++round) {
        for (int kappa = 1; kappa <= m; ++kappa) {
          PsiSpec table;
          table.kind = PsiKind::Table;
          table.kappa = kappa;
          for (const auto& peaks : enumerate_peak_multisets(size, m)) {
            int lo = std::max(1, peaks.back() - kappa + 1);
            int hi = std::min(peaks.front(), m - kappa + 1);
            if (lo > hi) lo = hi;  // any window touching the peak range
            std::uniform_int_distribution<int> dist(lo, hi);
            table.table.push_back({peaks, dist(rng)});
          }
          if (!is_compliant(table, size, m)) continue;
          auto props = check_scenario_properties(table, size, m);
          lemma.expect(
              props.pareto_efficient.at(IntervalCmp::Best) == always_nested(table, size, m),
              "random table plain-best matches nesting");
          if (always_inside(table, size, m)) {
            lemma.expect(props.pareto_efficient.at(IntervalCmp::Worst), "random table worst");
            lemma.expect(props.pareto_efficient.at(IntervalCmp::LexWorst),
                         "random table lex-worst");
          }
        }
      }
    }
  }
  basics.finish();
  monotone.finish();
  pareto.finish();
  lemma.finish();
}

void criterion6() {
  Criterion c{"criterion 6: constructed rules pass the full audit"};
  int built = 0;
  for (int m = 2; m <= 4; ++m) {
    for (int n = 2; n <= 4; ++n) {
      for (const auto& parts : partitions_up_to_two(n)) {
        for (int kappa = 1; kappa <= m; ++kappa) {
          for (Rat eta : {Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(1)}) {
            auto groups = scenario_groups(parts, m, kappa, eta, PsiKind::RankAnchored, 1);
            for (int which = 1; which <= 3; ++which) {
              Construction construction;
              try {
                construction = which == 1   ? construct_case1(groups)
                               : which == 2 ? construct_case2(groups)
                                            : construct_case3(groups);
              } catch (const Error& e) {
                bool typed = e.code() == ErrorCode::PreconditionViolated ||
                             e.code() == ErrorCode::InvalidOffset ||
                             e.code() == ErrorCode::NotTopContaining;
                c.expect(typed, "violations raise typed errors");
                continue;
              }
              ++built;
              const auto& rule = construction.rule;
              c.expect(rule.validate().ok, "constructed mixture is valid");
              auto eval = make_eval(AnyRule(rule), &groups);
              c.expect(check_unanimity(eval, m, n).verdict, "constructed rule unanimity");
              c.expect(check_strategy_proofness(eval, m, n).verdict,
                       "constructed rule strategy-proofness");
              c.expect(check_group_anonymity(eval, groups).verdict,
                       "constructed rule group anonymity");
              c.expect(check_strong_fair_semantic(eval, groups).verdict,
                       "constructed rule strong fairness");
              c.expect(check_ep_strong(rule, groups).verdict,
                       "constructed rule extreme-point condition");
            }
          }
        }
      }
    }
  }
  c.expect(built >= 100, "sweep builds a meaningful number of rules");
  c.finish();
}

void criterion7() {
  Criterion c{"criterion 7: single-group correspondence with median rules"};
  for (int m = 2; m <= 4; ++m) {
    auto domain = enumerate_single_peaked(m);
    for (int n = 1; n <= 3; ++n) {
      GroupStructure single = plain_groups({n}, m);
      // Every median rule: interior parameters are a nondecreasing tuple.
      std::vector<std::vector<Alt>> interiors;
      std::vector<Alt> current;
      auto recurse = [&](auto&& self, Alt from) -> void {
        if (static_cast<int>(current.size()) == n - 1) {
          interiors.push_back(current);
          return;
        }
        for (Alt a = from; a <= m; ++a) {
          current.push_back(a);
          self(self, a);
          current.pop_back();
        }
      };
      recurse(recurse, 1);
      for (const auto& interior : interiors) {
        std::vector<Alt> params;
        params.push_back(1);
        params.insert(params.end(), interior.begin(), interior.end());
        params.push_back(m);
        MedianRule median(n, m, params);
        auto rule = group_minmax_from_median(median);
        c.expect(rule.validate().ok, "converted rule is valid");
        bool agree = true;
        for_each_profile(domain, n, [&](const Profile& profile) {
          if (rule.evaluate(profile, single) != median.evaluate(profile)) {
            agree = false;
            return false;
          }
          return true;
        });
        c.expect(agree, "winners agree on every profile");
      }
    }
  }
  c.finish();
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (failures != 0) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
