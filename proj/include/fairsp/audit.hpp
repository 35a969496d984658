#ifndef FAIRSP_AUDIT_HPP
#define FAIRSP_AUDIT_HPP

#include <string>
#include <vector>

#include "fairsp/groups.hpp"
#include "fairsp/rules.hpp"

namespace fairsp {

struct Witness {
  std::string kind;    // "profile" or "condition"
  std::string detail;  // profile text / the violated (gamma, x, ...) tuple
};

struct AuditReport {
  std::string notion;
  std::string mode;
  bool verdict = true;
  std::vector<Witness> witnesses;
  long long checked = 0;

  AuditReport() = default;
  AuditReport(std::string notion_, std::string mode_)
      : notion(std::move(notion_)), mode(std::move(mode_)) {}

  void fail(std::string kind, std::string detail);
};

// ---- Structural properties, decided semantically by exhaustive enumeration.

AuditReport check_unanimity(const RuleEval& rule, int m, int n, const Guards& guards = {});

AuditReport check_strategy_proofness(const RuleEval& rule, int m, int n,
                                     const Guards& guards = {});

AuditReport check_group_anonymity(const RuleEval& rule, const GroupStructure& groups,
                                  const Guards& guards = {});

// ---- Group fairness, semantic side (quantifies over all profiles).

AuditReport check_weak_fair_semantic(const RuleEval& rule, const GroupStructure& groups,
                                     const Guards& guards = {});

AuditReport check_strong_fair_semantic(const RuleEval& rule, const GroupStructure& groups,
                                       const Guards& guards = {});

// Feasibility tables for every group's representative function, shared by the
// characterization scans below.
class ScenarioFeasibility {
 public:
  ScenarioFeasibility(const GroupStructure& groups, const Guards& guards = {});
  const PsiFeasibility& group(int q) const { return tables_[q]; }

 private:
  std::vector<PsiFeasibility> tables_;
};

// ---- Group fairness, characterization side (scans ballot/parameter space).

AuditReport check_dc_weak(const GroupBallots& ballots, const GroupStructure& groups,
                          const Guards& guards = {});
AuditReport check_dc_weak(const GroupBallots& ballots, const GroupStructure& groups,
                          const ScenarioFeasibility& feasibility);

AuditReport check_dc_strong(const GroupBallots& ballots, const GroupStructure& groups,
                            const Guards& guards = {});
AuditReport check_dc_strong(const GroupBallots& ballots, const GroupStructure& groups,
                            const ScenarioFeasibility& feasibility);

AuditReport check_ep_weak(const RandomRule& mixture, const GroupStructure& groups,
                          const Guards& guards = {});
AuditReport check_ep_weak(const RandomRule& mixture, const GroupStructure& groups,
                          const ScenarioFeasibility& feasibility);

AuditReport check_ep_strong(const RandomRule& mixture, const GroupStructure& groups,
                            const Guards& guards = {});
AuditReport check_ep_strong(const RandomRule& mixture, const GroupStructure& groups,
                            const ScenarioFeasibility& feasibility);

// ---- Singleton-group fairness (per-agent kappa/eta, top-block representatives).

AuditReport check_special_weak_semantic(const RuleEval& rule, int m,
                                        const std::vector<int>& kappa,
                                        const std::vector<Rat>& eta, const Guards& guards = {});

AuditReport check_special_strong_semantic(const RuleEval& rule, int m,
                                          const std::vector<int>& kappa,
                                          const std::vector<Rat>& eta, const Guards& guards = {});

AuditReport check_special_weak_dc(const SubsetBallots& ballots, const std::vector<int>& kappa,
                                  const std::vector<Rat>& eta);

// Chain form of the strong condition (the fixed-pair form misses violations).
AuditReport check_special_strong_dc(const SubsetBallots& ballots, const std::vector<int>& kappa,
                                    const std::vector<Rat>& eta);

AuditReport check_special_weak_ep(const RandomRule& mixture, const std::vector<int>& kappa,
                                  const std::vector<Rat>& eta);

AuditReport check_special_strong_ep(const RandomRule& mixture, const std::vector<int>& kappa,
                                    const std::vector<Rat>& eta);

// ---- Total anonymity: random median rules (per-agent kappa/eta).

AuditReport check_anonymous_weak(const RandomRule& medians, const std::vector<int>& kappa,
                                 const std::vector<Rat>& eta);

AuditReport check_anonymous_strong(const RandomRule& medians, const std::vector<int>& kappa,
                                   const std::vector<Rat>& eta);

}  // namespace fairsp

#endif
