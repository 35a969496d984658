#include <doctest.h>

#include "fairsp/io.hpp"
#include "fixtures.hpp"

using namespace fairsp;
using namespace fairsp::testfix;

namespace {

const char* kExampleInstance = R"({
  "m": 3,
  "groups": [
    {"agents": [1], "kappa": 1, "eta": "1/3", "psi": {"kind": "R1", "r": 1}},
    {"agents": [2, 3, 4], "kappa": 2, "eta": "2/5", "psi": {"kind": "R1", "r": 1}}
  ],
  "rule": {
    "kind": "pfgbr",
    "ballots": {
      "0,0": ["0", "0", "1"],
      "0,1": ["0", "1/10", "9/10"],
      "0,2": ["1/10", "1/10", "4/5"],
      "0,3": ["1/5", "0", "4/5"],
      "1,0": ["2/5", "1/10", "1/2"],
      "1,1": ["1/2", "0", "1/2"],
      "1,2": ["7/10", "1/5", "1/10"],
      "1,3": ["1", "0", "0"]
    }
  },
  "profiles": ["a1>a2>a3;a3>a2>a1;a2>a3>a1;a3>a2>a1"]
})";

}  // namespace

TEST_CASE("instance parsing") {
  Instance instance = parse_instance(kExampleInstance);
  CHECK(instance.m == 3);
  REQUIRE(instance.groups.has_value());
  CHECK(instance.groups->group_count() == 2);
  CHECK(instance.groups->group(1).eta == Rat(2, 5));
  CHECK(instance.groups->group(1).psi.kind == PsiKind::RankAnchored);
  REQUIRE(instance.rule.has_value());
  const auto& family = std::get<GroupBallots>(*instance.rule);
  CHECK(family == group_ballots_table());
  REQUIRE(instance.profiles.size() == 1);
  Profile profile = parse_profile(instance.profiles[0], 3);
  CHECK(family.evaluate(profile, *instance.groups).of(3) == Rat(1, 2));
}

TEST_CASE("parse errors carry the right code") {
  auto code_of = [](const std::string& text) {
    try {
      parse_instance(text);
      return ErrorCode::Internal;
    } catch (const Error& e) {
      return e.code();
    }
  };
  CHECK(code_of("not json") == ErrorCode::ParseError);
  CHECK(code_of(R"({"groups": []})") == ErrorCode::ParseError);  // m missing
  CHECK(code_of(R"({"m": 3, "groups": [{"agents": [1], "kappa": 1, "eta": "1/0"}]})") ==
        ErrorCode::ParseError);
  CHECK(code_of(R"({"m": 3, "rule": {"kind": "pfgbr", "ballots": {}}})") ==
        ErrorCode::InconsistentInstance);
  CHECK(code_of(R"({"m": 3, "groups": [{"agents": [1, 3], "kappa": 1}]})") ==
        ErrorCode::InconsistentInstance);
  // A missing count vector in the ballot map.
  CHECK(code_of(R"({
    "m": 2,
    "groups": [{"agents": [1], "kappa": 1, "eta": "0"}],
    "rule": {"kind": "pfgbr", "ballots": {"0": ["0", "1"]}}
  })") == ErrorCode::MissingBallot);
}

TEST_CASE("rule serialization round trips") {
  SUBCASE("ballot family") {
    AnyRule rule = group_ballots_table();
    std::string encoded = instance_to_json({3, groups_1_3(), rule, {}});
    Instance back = parse_instance(encoded);
    CHECK(std::get<GroupBallots>(*back.rule) == group_ballots_table());
  }

  SUBCASE("count-indexed min-max parameters") {
    AnyRule rule = group_minmax_table();
    std::string encoded = instance_to_json({3, groups_1_3(), rule, {}});
    Instance back = parse_instance(encoded);
    CHECK(std::get<GroupMinMax>(*back.rule) == group_minmax_table());
  }

  SUBCASE("median") {
    AnyRule rule = median_example();
    std::string encoded = instance_to_json({3, std::nullopt, rule, {}});
    Instance back = parse_instance(encoded);
    CHECK(std::get<MedianRule>(*back.rule) == median_example());
  }

  SUBCASE("subset forms") {
    {
      AnyRule rule = subset_ballots_table();
      Instance back = parse_instance(instance_to_json({3, std::nullopt, rule, {}}));
      const auto& ballots = std::get<SubsetBallots>(*back.rule);
      for (unsigned mask = 0; mask < 16; ++mask)
        CHECK(ballots.ballot(mask) == subset_ballots_table().ballot(mask));
    }
    {
      AnyRule rule = subset_minmax_table();
      Instance back = parse_instance(instance_to_json({3, std::nullopt, rule, {}}));
      CHECK(std::get<SubsetMinMax>(*back.rule) == subset_minmax_table());
    }
  }

  SUBCASE("random mixtures, including nested rules") {
    Rng rng(1234);
    auto mixture = decompose_group_ballots(random_group_ballots({1, 3}, 3, rng));
    Instance back = parse_instance(instance_to_json({3, groups_1_3(), AnyRule(mixture), {}}));
    const auto& parsed = std::get<RandomRule>(*back.rule);
    REQUIRE(parsed.size() == mixture.size());
    for (int w = 0; w < mixture.size(); ++w) {
      CHECK(parsed.components()[w].weight == mixture.components()[w].weight);
      CHECK(parsed.group_minmax(w) == mixture.group_minmax(w));
    }
  }

  SUBCASE("table representative functions") {
    PsiSpec table;
    table.kind = PsiKind::Table;
    table.kappa = 2;
    for (const auto& peaks : enumerate_peak_multisets(2, 3))
      table.table.push_back({peaks, peaks.front() == 3 ? 2 : peaks.front()});
    GroupSpec g1;
    g1.agents = {1, 2};
    g1.kappa = 2;
    g1.eta = Rat(1, 2);
    g1.psi = table;
    GroupStructure groups({g1}, 2, 3);
    Instance back = parse_instance(instance_to_json({3, groups, std::nullopt, {}}));
    REQUIRE(back.groups.has_value());
    CHECK(back.groups->group(0).psi.kind == PsiKind::Table);
    CHECK(back.groups->group(0).psi.table.size() == table.table.size());
    for (const auto& peaks : enumerate_peak_multisets(2, 3))
      CHECK(apply_psi_peaks(back.groups->group(0).psi, peaks, 3) ==
            apply_psi_peaks(table, peaks, 3));
  }
}

TEST_CASE("serialization is deterministic") {
  AnyRule rule = group_ballots_table();
  Instance instance{3, groups_1_3(), rule, {"a1>a2>a3;a3>a2>a1;a2>a3>a1;a3>a2>a1"}};
  CHECK(instance_to_json(instance) == instance_to_json(instance));
  CHECK(rule_to_json(rule) == rule_to_json(rule));
}

TEST_CASE("construction metadata serializes alongside the rule") {
  GroupSpec g1;
  g1.agents = {1, 2};
  g1.kappa = 2;
  g1.eta = Rat(1, 2);
  g1.psi.kind = PsiKind::RankAnchored;
  g1.psi.kappa = 2;
  GroupStructure groups({g1}, 2, 3);
  auto construction = construct_case2(groups, 2);
  std::string text = construction_to_json(construction, 2);
  Instance back = parse_instance(R"({"m": 3, "groups": [{"agents": [1, 2], "kappa": 2}], "rule": )" +
                                 rule_to_json(AnyRule(construction.rule)) + "}");
  CHECK(std::get<RandomRule>(*back.rule).size() == construction.rule.size());
  CHECK(text.find("\"case\": 2") != std::string::npos);
}
