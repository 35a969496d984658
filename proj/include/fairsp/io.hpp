#ifndef FAIRSP_IO_HPP
#define FAIRSP_IO_HPP

#include <optional>
#include <string>

#include "fairsp/construct.hpp"
#include "fairsp/groups.hpp"
#include "fairsp/rules.hpp"

namespace fairsp {

// A parsed instance file: the number of alternatives, the optional group
// structure with fairness parameters, an optional rule, and profile strings.
struct Instance {
  int m = 0;
  std::optional<GroupStructure> groups;
  std::optional<AnyRule> rule;
  std::vector<std::string> profiles;
};

Instance parse_instance(const std::string& json_text, const Guards& guards = {});

std::string rule_to_json(const AnyRule& rule, int indent = 2);
std::string instance_to_json(const Instance& instance, int indent = 2);
std::string construction_to_json(const Construction& construction, int construction_case,
                                 int indent = 2);

}  // namespace fairsp

#endif
