#include "fairsp/io.hpp"

#include <json.hpp>

namespace fairsp {

using json = nlohmann::ordered_json;

namespace {

Alt parse_alt_token(const json& j, int m) {
  if (!j.is_string()) raise(ErrorCode::ParseError, "alternative must be a string like \"a2\"");
  std::string s = j.get<std::string>();
  if (s.size() < 2 || s[0] != 'a') raise(ErrorCode::ParseError, "bad alternative '" + s + "'");
  for (size_t i = 1; i < s.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(s[i])))
      raise(ErrorCode::ParseError, "bad alternative '" + s + "'");
  int v = std::stoi(s.substr(1));
  if (v < 1 || v > m)
    raise(ErrorCode::InconsistentInstance, "alternative " + s + " outside a1..a" + std::to_string(m));
  return v;
}

std::string alt_token(Alt a) { return "a" + std::to_string(a); }

Rat parse_rat_field(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) raise(ErrorCode::ParseError, "rational must be a \"p/q\" string");
  return Rat::parse(j.get<std::string>());
}

std::vector<int> parse_counts_key(const std::string& key, int dims) {
  std::vector<int> counts;
  std::string token;
  for (char c : key + ",") {
    if (c == ',') {
      if (token.empty()) raise(ErrorCode::ParseError, "bad counts key '" + key + "'");
      counts.push_back(std::stoi(token));
      token.clear();
    } else if (isdigit(static_cast<unsigned char>(c))) {
      token.push_back(c);
    } else {
      raise(ErrorCode::ParseError, "bad counts key '" + key + "'");
    }
  }
  if (static_cast<int>(counts.size()) != dims)
    raise(ErrorCode::InconsistentInstance, "counts key '" + key + "' has wrong dimension");
  return counts;
}

unsigned parse_subset_key(const std::string& key, int n) {
  unsigned mask = 0;
  if (key.empty()) return 0;
  std::string token;
  for (char c : key + ",") {
    if (c == ',') {
      if (token.empty()) raise(ErrorCode::ParseError, "bad subset key '" + key + "'");
      int agent = std::stoi(token);
      if (agent < 1 || agent > n)
        raise(ErrorCode::InconsistentInstance, "agent " + token + " outside 1.." + std::to_string(n));
      mask |= 1u << (agent - 1);
      token.clear();
    } else if (isdigit(static_cast<unsigned char>(c))) {
      token.push_back(c);
    } else {
      raise(ErrorCode::ParseError, "bad subset key '" + key + "'");
    }
  }
  return mask;
}

std::string subset_key(unsigned mask, int n) {
  std::string key;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) {
      if (!key.empty()) key += ",";
      key += std::to_string(i + 1);
    }
  return key;
}

Lottery parse_lottery(const json& j, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m)
    raise(ErrorCode::ParseError, "ballot must list one probability per alternative");
  Lottery lottery(m);
  for (int a = 1; a <= m; ++a) lottery.of(a) = parse_rat_field(j[a - 1]);
  return lottery;
}

PsiSpec parse_psi(const json& j, int kappa, int group_size, int m) {
  if (!j.is_object() || !j.contains("kind"))
    raise(ErrorCode::ParseError, "psi must be an object with a kind");
  std::string kind = j.at("kind").get<std::string>();
  PsiSpec spec;
  spec.kappa = kappa;
  if (kind == "R1") {
    spec.kind = PsiKind::RankAnchored;
    spec.rank = j.value("r", 1);
  } else if (kind == "R2") {
    spec.kind = PsiKind::PeakCoverage;
  } else if (kind == "R3") {
    spec.kind = PsiKind::AgentCoverage;
  } else if (kind == "R4") {
    spec.kind = PsiKind::PluralityStart;
  } else if (kind == "top") {
    spec.kind = PsiKind::TopBlock;
  } else if (kind == "table") {
    spec.kind = PsiKind::Table;
    if (!j.contains("entries") || !j.at("entries").is_array())
      raise(ErrorCode::ParseError, "table psi needs entries");
    for (const auto& entry : j.at("entries")) {
      PsiTableEntry row;
      for (const auto& p : entry.at("peaks")) row.peaks.push_back(parse_alt_token(p, m));
      std::sort(row.peaks.begin(), row.peaks.end());
      if (static_cast<int>(row.peaks.size()) != group_size)
        raise(ErrorCode::InconsistentInstance, "table entry peak count != group size");
      const auto& interval = entry.at("interval");
      if (!interval.is_array() || interval.empty())
        raise(ErrorCode::ParseError, "table entry interval");
      row.start = parse_alt_token(interval[0], m);
      if (static_cast<int>(interval.size()) != kappa)
        raise(ErrorCode::InconsistentInstance, "table entry interval size != kappa");
      spec.table.push_back(std::move(row));
    }
  } else {
    raise(ErrorCode::ParseError, "unknown psi kind '" + kind + "'");
  }
  return spec;
}

json psi_to_json(const PsiSpec& spec) {
  json j;
  j["kind"] = psi_kind_name(spec.kind);
  if (spec.kind == PsiKind::RankAnchored) j["r"] = spec.rank;
  if (spec.kind == PsiKind::Table) {
    json entries = json::array();
    for (const auto& row : spec.table) {
      json entry;
      json peaks = json::array();
      for (Alt p : row.peaks) peaks.push_back(alt_token(p));
      entry["peaks"] = peaks;
      json interval = json::array();
      for (int i = 0; i < spec.kappa; ++i) interval.push_back(alt_token(row.start + i));
      entry["interval"] = interval;
      entries.push_back(entry);
    }
    j["entries"] = entries;
  }
  return j;
}

GroupStructure parse_groups(const json& j, int m) {
  if (!j.is_array() || j.empty()) raise(ErrorCode::ParseError, "groups must be a nonempty array");
  std::vector<GroupSpec> specs;
  int n = 0;
  for (const auto& gj : j) {
    GroupSpec spec;
    if (!gj.contains("agents") || !gj.at("agents").is_array())
      raise(ErrorCode::ParseError, "group needs an agents array");
    for (const auto& a : gj.at("agents")) spec.agents.push_back(a.get<int>());
    n += static_cast<int>(spec.agents.size());
    spec.kappa = gj.value("kappa", 1);
    spec.eta = gj.contains("eta") ? parse_rat_field(gj.at("eta")) : Rat(0);
    if (gj.contains("psi"))
      spec.psi = parse_psi(gj.at("psi"), spec.kappa, static_cast<int>(spec.agents.size()), m);
    else {
      spec.psi.kind = PsiKind::RankAnchored;
      spec.psi.kappa = spec.kappa;
    }
    specs.push_back(std::move(spec));
  }
  return GroupStructure(std::move(specs), n, m);
}

json groups_to_json(const GroupStructure& groups) {
  json arr = json::array();
  for (int q = 0; q < groups.group_count(); ++q) {
    const auto& spec = groups.group(q);
    json gj;
    gj["agents"] = spec.agents;
    gj["kappa"] = spec.kappa;
    gj["eta"] = spec.eta.str();
    gj["psi"] = psi_to_json(spec.psi);
    arr.push_back(gj);
  }
  return arr;
}

AnyRule parse_rule(const json& j, int m, const GroupStructure* groups, const Guards& guards);

DetRule parse_det_rule(const json& j, int m, const GroupStructure* groups, const Guards& guards) {
  AnyRule rule = parse_rule(j, m, groups, guards);
  if (auto* gmm = std::get_if<GroupMinMax>(&rule)) return std::move(*gmm);
  if (auto* smm = std::get_if<SubsetMinMax>(&rule)) return std::move(*smm);
  if (auto* med = std::get_if<MedianRule>(&rule)) return std::move(*med);
  raise(ErrorCode::ParseError, "mixture components must be deterministic rules");
}

AnyRule parse_rule(const json& j, int m, const GroupStructure* groups, const Guards& guards) {
  if (!j.is_object() || !j.contains("kind"))
    raise(ErrorCode::ParseError, "rule must be an object with a kind");
  std::string kind = j.at("kind").get<std::string>();

  auto require_groups = [&]() -> const GroupStructure& {
    if (!groups)
      raise(ErrorCode::InconsistentInstance, "rule kind '" + kind + "' needs a groups section");
    return *groups;
  };

  if (kind == "pfgbr") {
    const auto& gs = require_groups();
    GammaLattice lattice(gs.sizes());
    std::vector<Lottery> ballots(lattice.count(), Lottery(m));
    std::vector<bool> seen(lattice.count(), false);
    for (const auto& [key, value] : j.at("ballots").items()) {
      long long idx = lattice.index_of(GroupCounts(parse_counts_key(key, lattice.dims())));
      ballots[idx] = parse_lottery(value, m);
      seen[idx] = true;
    }
    for (long long idx = 0; idx < lattice.count(); ++idx)
      if (!seen[idx])
        raise(ErrorCode::MissingBallot, "no ballot for (" + lattice.counts_of(idx).str() + ")");
    return GroupBallots(gs.sizes(), m, std::move(ballots));
  }
  if (kind == "gmmr") {
    const auto& gs = require_groups();
    GammaLattice lattice(gs.sizes());
    std::vector<Alt> params(lattice.count(), 0);
    for (const auto& [key, value] : j.at("params").items())
      params[lattice.index_of(GroupCounts(parse_counts_key(key, lattice.dims())))] =
          parse_alt_token(value, m);
    for (long long idx = 0; idx < lattice.count(); ++idx)
      if (params[idx] == 0)
        raise(ErrorCode::InvalidParameters,
              "no parameter for (" + lattice.counts_of(idx).str() + ")");
    return GroupMinMax(gs.sizes(), m, std::move(params));
  }
  if (kind == "pfbr" || kind == "minmax") {
    int n = groups ? groups->n() : j.value("n", 0);
    if (n == 0) raise(ErrorCode::InconsistentInstance, "subset rule needs groups or an n field");
    if (n > guards.max_subset_n)
      raise(ErrorCode::SizeGuardExceeded, "subset rule over n=" + std::to_string(n));
    if (kind == "pfbr") {
      std::vector<Lottery> ballots(1u << n, Lottery(m));
      std::vector<bool> seen(1u << n, false);
      for (const auto& [key, value] : j.at("ballots").items()) {
        unsigned mask = parse_subset_key(key, n);
        ballots[mask] = parse_lottery(value, m);
        seen[mask] = true;
      }
      for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (!seen[mask])
          raise(ErrorCode::MissingBallot, "no ballot for subset " + subset_key(mask, n));
      return SubsetBallots(n, m, std::move(ballots), guards);
    }
    std::vector<Alt> params(1u << n, 0);
    for (const auto& [key, value] : j.at("params").items())
      params[parse_subset_key(key, n)] = parse_alt_token(value, m);
    for (unsigned mask = 0; mask < (1u << n); ++mask)
      if (params[mask] == 0)
        raise(ErrorCode::InvalidParameters, "no parameter for subset " + subset_key(mask, n));
    return SubsetMinMax(n, m, std::move(params), guards);
  }
  if (kind == "median") {
    std::vector<Alt> params;
    for (const auto& value : j.at("params")) params.push_back(parse_alt_token(value, m));
    const int n = static_cast<int>(params.size()) - 1;
    if (n < 1) raise(ErrorCode::InvalidParameters, "median rule needs n+1 parameters");
    return MedianRule(n, m, std::move(params));
  }
  if (kind == "random") {
    std::vector<RandomComponent> components;
    for (const auto& cj : j.at("components")) {
      RandomComponent component{parse_rat_field(cj.at("weight")),
                                parse_det_rule(cj.at("rule"), m, groups, guards)};
      components.push_back(std::move(component));
    }
    return RandomRule(std::move(components));
  }
  raise(ErrorCode::ParseError, "unknown rule kind '" + kind + "'");
}

json lottery_to_json(const Lottery& lottery) {
  json arr = json::array();
  for (int a = 1; a <= lottery.m(); ++a) arr.push_back(lottery.of(a).str());
  return arr;
}

json rule_to_json_impl(const AnyRule& rule) {
  json j;
  if (const auto* gb = std::get_if<GroupBallots>(&rule)) {
    j["kind"] = "pfgbr";
    json ballots;
    for (long long idx = 0; idx < gb->lattice().count(); ++idx)
      ballots[gb->lattice().counts_of(idx).str()] = lottery_to_json(gb->ballot_by_index(idx));
    j["ballots"] = ballots;
  } else if (const auto* sb = std::get_if<SubsetBallots>(&rule)) {
    j["kind"] = "pfbr";
    j["n"] = sb->n();
    json ballots;
    for (unsigned mask = 0; mask < (1u << sb->n()); ++mask)
      ballots[subset_key(mask, sb->n())] = lottery_to_json(sb->ballot(mask));
    j["ballots"] = ballots;
  } else if (const auto* gmm = std::get_if<GroupMinMax>(&rule)) {
    j["kind"] = "gmmr";
    json params;
    for (long long idx = 0; idx < gmm->lattice().count(); ++idx)
      params[gmm->lattice().counts_of(idx).str()] = alt_token(gmm->param_by_index(idx));
    j["params"] = params;
  } else if (const auto* smm = std::get_if<SubsetMinMax>(&rule)) {
    j["kind"] = "minmax";
    j["n"] = smm->n();
    json params;
    for (unsigned mask = 0; mask < (1u << smm->n()); ++mask)
      params[subset_key(mask, smm->n())] = alt_token(smm->param(mask));
    j["params"] = params;
  } else if (const auto* med = std::get_if<MedianRule>(&rule)) {
    j["kind"] = "median";
    json params = json::array();
    for (Alt a : med->params()) params.push_back(alt_token(a));
    j["params"] = params;
  } else {
    const auto& mixture = std::get<RandomRule>(rule);
    j["kind"] = "random";
    json components = json::array();
    for (const auto& component : mixture.components()) {
      json cj;
      cj["weight"] = component.weight.str();
      AnyRule det = std::visit([](const auto& r) { return AnyRule(r); }, component.rule);
      cj["rule"] = rule_to_json_impl(det);
      components.push_back(cj);
    }
    j["components"] = components;
  }
  return j;
}

}  // namespace

Instance parse_instance(const std::string& json_text, const Guards& guards) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, e.what());
  }
  try {
    Instance instance;
    if (!j.contains("m")) raise(ErrorCode::ParseError, "instance needs m");
    instance.m = j.at("m").get<int>();
    if (instance.m < 1) raise(ErrorCode::ParseError, "m must be positive");
    if (j.contains("groups")) instance.groups = parse_groups(j.at("groups"), instance.m);
    if (j.contains("rule"))
      instance.rule = parse_rule(j.at("rule"), instance.m,
                                 instance.groups ? &*instance.groups : nullptr, guards);
    if (j.contains("profiles"))
      for (const auto& p : j.at("profiles")) instance.profiles.push_back(p.get<std::string>());
    if (j.contains("profile")) instance.profiles.push_back(j.at("profile").get<std::string>());
    return instance;
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, e.what());
  }
}

std::string rule_to_json(const AnyRule& rule, int indent) {
  return rule_to_json_impl(rule).dump(indent);
}

std::string instance_to_json(const Instance& instance, int indent) {
  json j;
  j["m"] = instance.m;
  if (instance.groups) j["groups"] = groups_to_json(*instance.groups);
  if (instance.rule) j["rule"] = rule_to_json_impl(*instance.rule);
  if (!instance.profiles.empty()) j["profiles"] = instance.profiles;
  return j.dump(indent);
}

std::string construction_to_json(const Construction& construction, int construction_case,
                                 int indent) {
  json j;
  j["rule"] = rule_to_json_impl(AnyRule(construction.rule));
  json meta;
  meta["case"] = construction_case;
  meta["filler_weight"] = construction.filler_weight.str();
  if (construction_case == 2) meta["d"] = construction.offset;
  j["construction"] = meta;
  return j.dump(indent);
}

}  // namespace fairsp
