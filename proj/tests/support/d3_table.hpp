#pragma once

#include <string>
#include <utility>
#include <vector>

namespace boroczky::proptest {

inline const std::vector<std::string>& d3_table_columns() {
  static const std::vector<std::string> cols{"AC", "AB", "BC", "AF", "BD", "EF", "DE", "HJ", "IK", "EG", "CE", "EM"};
  return cols;
}

/// Incidence rows A..P against d3_table_columns() for the sextuple-point
/// degeneration, transcribed from the published table.
inline const std::vector<std::pair<std::string, std::string>>& d3_table() {
  static const std::vector<std::pair<std::string, std::string>> rows{
      {"A", "++.+........"}, {"B", ".++.+......."}, {"C", "+.+.......+."}, {"D", "+...+.+....."},
      {"E", ".+...++..+++"}, {"F", "..++.+......"}, {"G", "...++....+.."}, {"H", "....++.+...."},
      {"I", "..+...+.+..."}, {"J", "...+..++...."}, {"K", "+....+..+..."}, {"L", ".+.....++..."},
      {"M", "....+...+..+"}, {"N", "+......+.+.."}, {"O", "..+....+...+"}, {"P", "...+....+.+."}};
  return rows;
}

}  // namespace boroczky::proptest
