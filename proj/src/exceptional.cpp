#include "reflexion/error.hpp"
#include "reflexion/groups.hpp"

#include <algorithm>

namespace reflexion {

const std::vector<ExceptionalData>& exceptional_groups() {
  static const std::vector<ExceptionalData> table = {
      {"G4", 2, {4, 6}, {2, 0}},
      {"G5", 2, {6, 12}, {6, 0}},
      {"G6", 2, {4, 12}, {8, 0}},
      {"G7", 2, {12, 12}, {12, 0}},
      {"G8", 2, {8, 12}, {4, 0}},
      {"G9", 2, {8, 24}, {16, 0}},
      {"G10", 2, {12, 24}, {12, 0}},
      {"G11", 2, {24, 24}, {24, 0}},
      {"G12", 2, {6, 8}, {10, 0}},
      {"G13", 2, {8, 12}, {16, 0}},
      {"G14", 2, {6, 24}, {18, 0}},
      {"G15", 2, {12, 24}, {24, 0}},
      {"G16", 2, {20, 30}, {10, 0}},
      {"G17", 2, {20, 60}, {40, 0}},
      {"G18", 2, {30, 60}, {30, 0}},
      {"G19", 2, {60, 60}, {60, 0}},
      {"G20", 2, {12, 30}, {18, 0}},
      {"G21", 2, {12, 60}, {48, 0}},
      {"G22", 2, {12, 20}, {28, 0}},
      {"G23", 3, {2, 6, 10}, {8, 4, 0}},
      {"G24", 3, {4, 6, 14}, {10, 8, 0}},
      {"G25", 3, {6, 9, 12}, {6, 3, 0}},
      {"G26", 3, {6, 12, 18}, {12, 6, 0}},
      {"G27", 3, {6, 12, 30}, {24, 18, 0}},
      {"G28", 4, {2, 6, 8, 12}, {10, 6, 4, 0}},
      {"G29", 4, {4, 8, 12, 20}, {16, 12, 8, 0}},
      {"G30", 4, {2, 12, 20, 30}, {28, 18, 10, 0}},
      {"G31", 4, {8, 12, 20, 24}, {28, 16, 12, 0}},
      {"G32", 4, {12, 18, 24, 30}, {18, 12, 6, 0}},
      {"G33", 5, {4, 6, 10, 12, 18}, {14, 12, 8, 6, 0}},
      {"G34", 6, {6, 12, 18, 24, 30, 42}, {36, 30, 24, 18, 12, 0}},
      {"G35", 6, {2, 5, 6, 8, 9, 12}, {10, 7, 6, 4, 3, 0}},
      {"G36", 7, {2, 6, 8, 10, 12, 14, 18}, {16, 12, 10, 8, 6, 4, 0}},
      {"G37", 8, {2, 8, 12, 14, 18, 20, 24, 30}, {28, 22, 18, 16, 12, 10, 6, 0}},
  };
  return table;
}

const ExceptionalData& exceptional_table(std::string_view name) {
  const auto& table = exceptional_groups();
  auto it = std::find_if(table.begin(), table.end(),
                         [name](const ExceptionalData& e) { return e.name == name; });
  if (it == table.end()) {
    throw ParseError("unknown exceptional group '" + std::string(name) + "'");
  }
  return *it;
}

} // namespace reflexion
