#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "fairsp/audit.hpp"
#include "fairsp/construct.hpp"
#include "fairsp/io.hpp"

namespace {

using namespace fairsp;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;
constexpr int kExitDisagreement = 4;

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::SizeGuardExceeded ? kExitGuard : kExitInput;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_lottery(const Lottery& lottery) {
  std::string out;
  for (int a = 1; a <= lottery.m(); ++a) {
    if (lottery.of(a).is_zero()) continue;
    if (!out.empty()) out += ' ';
    out += "a" + std::to_string(a) + "=" + lottery.of(a).str();
  }
  return out.empty() ? "(empty)" : out;
}

int cmd_validate(const std::string& path, const Guards& guards) {
  Instance instance = parse_instance(read_file(path), guards);
  if (!instance.rule) raise(ErrorCode::InconsistentInstance, "instance has no rule");
  ValidationReport report = validate_any(*instance.rule);
  if (report.ok) {
    std::cout << "valid\n";
    return kExitTrue;
  }
  for (const auto& issue : report.issues)
    std::cout << issue.kind << ": " << issue.detail << "\n";
  return kExitFalse;
}

int cmd_eval(const std::string& path, const std::string& profile_text, const Guards& guards) {
  Instance instance = parse_instance(read_file(path), guards);
  if (!instance.rule) raise(ErrorCode::InconsistentInstance, "instance has no rule");
  std::string text = profile_text;
  if (text.empty()) {
    if (instance.profiles.empty())
      raise(ErrorCode::InconsistentInstance, "no profile given and none in the instance");
    text = instance.profiles.front();
  }
  Profile profile = parse_profile(text, instance.m);
  std::visit([](const auto& rule) {
    ValidationReport report = rule.validate();
    if (!report.ok)
      raise(ErrorCode::InvalidBallotFamily, report.issues.front().kind + " " +
                                                report.issues.front().detail);
  }, *instance.rule);
  const GroupStructure* groups = instance.groups ? &*instance.groups : nullptr;
  std::cout << format_lottery(evaluate_any(*instance.rule, profile, groups)) << "\n";
  return kExitTrue;
}

// Bring the instance rule to the two characterization forms when possible.
struct AuditForms {
  std::optional<GroupBallots> ballots;   // direct form
  std::optional<RandomRule> minmax_mix;  // extreme-point form
};

AuditForms audit_forms(const AnyRule& rule, const GroupStructure& groups, const Guards& guards) {
  AuditForms forms;
  if (const auto* gb = std::get_if<GroupBallots>(&rule)) {
    forms.ballots = *gb;
    forms.minmax_mix = decompose_group_ballots(*gb);
    return forms;
  }
  if (const auto* sb = std::get_if<SubsetBallots>(&rule)) {
    if (!groups.all_singletons())
      raise(ErrorCode::RequiresSingletonGroups, "subset ballots with non-singleton groups");
    forms.ballots = group_ballots_from_subset(*sb);
    forms.minmax_mix = decompose_group_ballots(*forms.ballots);
    return forms;
  }
  RandomRule mixture = [&] {
    if (const auto* rr = std::get_if<RandomRule>(&rule)) return *rr;
    if (const auto* gmm = std::get_if<GroupMinMax>(&rule))
      return RandomRule({{Rat(1), *gmm}});
    if (const auto* smm = std::get_if<SubsetMinMax>(&rule))
      return RandomRule({{Rat(1), *smm}});
    return RandomRule({{Rat(1), std::get<MedianRule>(rule)}});
  }();
  std::vector<RandomComponent> converted;
  for (const auto& component : mixture.components()) {
    if (const auto* gmm = std::get_if<GroupMinMax>(&component.rule)) {
      converted.push_back({component.weight, *gmm});
    } else if (const auto* smm = std::get_if<SubsetMinMax>(&component.rule)) {
      if (!groups.all_singletons())
        raise(ErrorCode::RequiresSingletonGroups, "subset components with non-singleton groups");
      converted.push_back({component.weight, group_minmax_from_subset(*smm)});
    } else {
      const auto& median = std::get<MedianRule>(component.rule);
      if (groups.group_count() != 1)
        raise(ErrorCode::RequiresSingleGroup, "median components need one all-agent group");
      converted.push_back({component.weight, group_minmax_from_median(median)});
    }
  }
  forms.minmax_mix = RandomRule(std::move(converted)).normalized();
  forms.ballots = group_ballots_from_mixture(*forms.minmax_mix);
  (void)guards;
  return forms;
}

void print_report(const AuditReport& report, bool as_json) {
  if (as_json) {
    nlohmann::ordered_json j;
    j["notion"] = report.notion;
    j["mode"] = report.mode;
    j["verdict"] = report.verdict;
    nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
    for (const auto& witness : report.witnesses) {
      nlohmann::ordered_json wj;
      wj["kind"] = witness.kind;
      wj["detail"] = witness.detail;
      witnesses.push_back(wj);
    }
    j["witnesses"] = witnesses;
    j["checked"] = report.checked;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << report.notion << " (" << report.mode << "): "
            << (report.verdict ? "true" : "false") << " [" << report.checked << " checked]\n";
  for (const auto& witness : report.witnesses)
    std::cout << "  witness " << witness.kind << ": " << witness.detail << "\n";
}

int cmd_audit(const std::string& path, const std::string& notion, const std::string& mode,
              bool as_json, const Guards& guards) {
  Instance instance = parse_instance(read_file(path), guards);
  if (!instance.rule) raise(ErrorCode::InconsistentInstance, "instance has no rule");
  if (!instance.groups) raise(ErrorCode::InconsistentInstance, "instance has no groups");
  const GroupStructure& groups = *instance.groups;
  check_m_guard(instance.m, guards);
  check_n_guard(groups.n(), guards);

  std::vector<AuditReport> reports;
  if (mode == "semantic" || mode == "all") {
    RuleEval eval = make_eval(*instance.rule, &groups);
    reports.push_back(notion == "weak" ? check_weak_fair_semantic(eval, groups, guards)
                                       : check_strong_fair_semantic(eval, groups, guards));
  }
  if (mode == "dc" || mode == "ep" || mode == "all") {
    AuditForms forms = audit_forms(*instance.rule, groups, guards);
    ScenarioFeasibility feasibility(groups, guards);
    if (mode == "dc" || mode == "all")
      reports.push_back(notion == "weak" ? check_dc_weak(*forms.ballots, groups, feasibility)
                                         : check_dc_strong(*forms.ballots, groups, feasibility));
    if (mode == "ep" || mode == "all")
      reports.push_back(notion == "weak"
                            ? check_ep_weak(*forms.minmax_mix, groups, feasibility)
                            : check_ep_strong(*forms.minmax_mix, groups, feasibility));
  }

  for (const auto& report : reports) print_report(report, as_json);
  for (size_t i = 1; i < reports.size(); ++i)
    if (reports[i].verdict != reports[0].verdict) {
      std::cerr << "FATAL: modes disagree (" << reports[0].mode << "="
                << (reports[0].verdict ? "true" : "false") << ", " << reports[i].mode << "="
                << (reports[i].verdict ? "true" : "false") << ")\n";
      return kExitDisagreement;
    }
  return reports.front().verdict ? kExitTrue : kExitFalse;
}

int cmd_decompose(const std::string& path, const Guards& guards) {
  Instance instance = parse_instance(read_file(path), guards);
  if (!instance.rule) raise(ErrorCode::InconsistentInstance, "instance has no rule");
  const auto* gb = std::get_if<GroupBallots>(&*instance.rule);
  std::optional<GroupBallots> converted;
  if (!gb) {
    if (const auto* sb = std::get_if<SubsetBallots>(&*instance.rule)) {
      converted = group_ballots_from_subset(*sb);
      gb = &*converted;
    } else {
      raise(ErrorCode::InconsistentInstance, "decompose needs a ballot-family rule");
    }
  }
  RandomRule mixture = decompose_group_ballots(*gb);
  mixture.ensure_valid();
  if (!(group_ballots_from_mixture(mixture) == *gb))
    raise(ErrorCode::Internal, "round trip failed");
  std::cout << rule_to_json(AnyRule(mixture)) << "\n";
  return kExitTrue;
}

int cmd_construct(const std::string& path, int which, int offset, const std::string& ladder,
                  const Guards& guards) {
  Instance instance = parse_instance(read_file(path), guards);
  if (!instance.groups) raise(ErrorCode::InconsistentInstance, "instance has no groups");
  Construction construction;
  switch (which) {
    case 1:
      construction = construct_case1(*instance.groups, ladder == "desc"
                                                           ? LadderScheme::Descending
                                                           : LadderScheme::Constant);
      break;
    case 2:
      construction = construct_case2(*instance.groups, offset);
      break;
    case 3:
      construction = construct_case3(*instance.groups, guards);
      break;
    default:
      raise(ErrorCode::ParseError, "case must be 1, 2, or 3");
  }
  std::cout << construction_to_json(construction, which) << "\n";
  return kExitTrue;
}

int cmd_enumerate(int m, const Guards& guards) {
  for (const auto& pref : enumerate_single_peaked(m, guards))
    std::cout << format_preference(pref) << "\n";
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-fair random social choice rules on single-peaked domains"};
  app.require_subcommand(1);

  Guards guards;
  app.add_option("--guard-m", guards.max_m, "largest m enumerations accept");
  app.add_option("--guard-n", guards.max_n, "largest n enumerations accept");

  std::string file, profile_text, notion = "strong", mode = "all", ladder = "const";
  int which_case = 1, offset = -1, enum_m = 3;
  bool as_json = false;

  auto* validate = app.add_subcommand("validate", "check rule invariants");
  validate->add_option("file", file)->required();

  auto* eval = app.add_subcommand("eval", "evaluate the rule at a profile");
  eval->add_option("file", file)->required();
  eval->add_option("--profile", profile_text, "profile text, e.g. a1>a2>a3;a3>a2>a1");

  auto* audit = app.add_subcommand("audit", "run fairness checkers");
  audit->add_option("file", file)->required();
  audit->add_option("--notion", notion)->check(CLI::IsMember({"weak", "strong"}));
  audit->add_option("--mode", mode)->check(CLI::IsMember({"semantic", "dc", "ep", "all"}));
  audit->add_flag("--json", as_json, "structured report");

  auto* decompose = app.add_subcommand("decompose", "ballot family to min-max mixture");
  decompose->add_option("file", file)->required();

  auto* construct = app.add_subcommand("construct", "build a strong-fair mixture");
  construct->add_option("file", file)->required();
  construct->add_option("--case", which_case)->check(CLI::Range(1, 3));
  construct->add_option("--offset", offset, "ladder offset d (case 2)");
  construct->add_option("--ladder", ladder)->check(CLI::IsMember({"const", "desc"}));

  auto* enumerate = app.add_subcommand("enumerate", "list the single-peaked domain");
  enumerate->add_option("--m", enum_m)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(file, guards);
    if (eval->parsed()) return cmd_eval(file, profile_text, guards);
    if (audit->parsed()) return cmd_audit(file, notion, mode, as_json, guards);
    if (decompose->parsed()) return cmd_decompose(file, guards);
    if (construct->parsed()) return cmd_construct(file, which_case, offset, ladder, guards);
    if (enumerate->parsed()) return cmd_enumerate(enum_m, guards);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
