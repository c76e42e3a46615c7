#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pivotclr/table.hpp"

namespace pivotclr {

enum class Aggregation { Mean, Sum, Count, Min, Max };

const char* aggregation_name(Aggregation agg);
Aggregation aggregation_from_name(const std::string& name);

// Parameters of a pivot: group rows by (index keys x column keys) and
// aggregate the value column per group.
struct PivotSpec {
  std::vector<std::string> index_keys;
  std::vector<std::string> column_keys;
  std::string value_key;
  Aggregation agg = Aggregation::Mean;
  // Rows whose index or column key is null are dropped from grouping by
  // default; with false they form their own "[NULL]"-labelled groups.
  bool drop_null_keys = true;

  // Structural checks only (non-empty, disjoint, no internal duplicates).
  void validate() const;
  // Structural checks plus header existence against a table.
  void validate_against(const Table& t) const;
};

// JSON form: {"index": [...], "columns": [...], "value": "...",
//             "agg": "mean"|"sum"|"count"|"min"|"max"}
PivotSpec pivot_spec_from_json(const nlohmann::json& j);
nlohmann::json pivot_spec_to_json(const PivotSpec& spec);

// Joins the display forms of a key tuple with single spaces.
std::string render_group_label(const std::vector<CellValue>& values);

// Numeric-aware label ordering used for pivot rows and columns: labels that
// parse as numbers sort first by value (ties bytewise), remaining labels sort
// bytewise. Exposed for reuse by tests.
bool label_less(const std::string& a, const std::string& b);

// Executes the pivot. The result is a plain Table whose leading columns are
// the index keys (values carried as text labels) and whose remaining headers
// are rendered column-group labels, both sorted ascending by label_less
// applied componentwise. A cell is null iff its group had no aggregable
// value. A 0-row input yields a headers-only result.
Table pivot(const Table& t, const PivotSpec& spec);

}  // namespace pivotclr
