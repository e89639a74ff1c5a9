#pragma once

// Regenerates the published example tables and compares each cell against
// the printed value.

#include <string>
#include <string_view>
#include <vector>

#include "spherelp/serialize.hpp"

namespace spherelp {

struct Cell {
  std::string label;
  double computed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  /// Decimal places of the printed value; negative for exact constants.
  int decimals = -1;
  bool passed = false;
  std::string note;
};

struct TableReport {
  std::string name;
  std::vector<Cell> cells;
  std::vector<std::string> notes;

  bool all_passed() const;
  int failures() const;
};

TableReport reproduce_table1();
TableReport reproduce_table2();
TableReport reproduce_table3();
TableReport reproduce_table4();
TableReport reproduce_examples();

/// `which` is one of 1, 2, 3, 4, examples, all.
std::vector<TableReport> reproduce(std::string_view which);

std::string format_table(const TableReport& table);
Json to_json(const TableReport& table);

}  // namespace spherelp
