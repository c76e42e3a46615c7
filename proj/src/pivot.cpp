#include "pivotclr/pivot.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace pivotclr {

const char* aggregation_name(Aggregation agg) {
  switch (agg) {
    case Aggregation::Mean: return "mean";
    case Aggregation::Sum: return "sum";
    case Aggregation::Count: return "count";
    case Aggregation::Min: return "min";
    case Aggregation::Max: return "max";
  }
  return "mean";
}

Aggregation aggregation_from_name(const std::string& name) {
  if (name == "mean") return Aggregation::Mean;
  if (name == "sum") return Aggregation::Sum;
  if (name == "count") return Aggregation::Count;
  if (name == "min") return Aggregation::Min;
  if (name == "max") return Aggregation::Max;
  throw std::invalid_argument("PivotSpec: unknown aggregation \"" + name + "\"");
}

void PivotSpec::validate() const {
  if (index_keys.empty()) throw std::invalid_argument("PivotSpec: index keys must be non-empty");
  if (column_keys.empty()) throw std::invalid_argument("PivotSpec: column keys must be non-empty");
  if (value_key.empty()) throw std::invalid_argument("PivotSpec: value key must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& k : index_keys) {
    if (!seen.insert(k).second) throw std::invalid_argument("PivotSpec: duplicate key \"" + k + "\"");
  }
  for (const auto& k : column_keys) {
    if (!seen.insert(k).second) throw std::invalid_argument("PivotSpec: duplicate key \"" + k + "\"");
  }
  if (seen.count(value_key)) {
    throw std::invalid_argument("PivotSpec: value key \"" + value_key + "\" overlaps index/column keys");
  }
}

void PivotSpec::validate_against(const Table& t) const {
  validate();
  auto require = [&](const std::string& name) {
    if (!t.column_index(name)) {
      throw std::invalid_argument("PivotSpec: header \"" + name + "\" not present in table");
    }
  };
  for (const auto& k : index_keys) require(k);
  for (const auto& k : column_keys) require(k);
  require(value_key);
}

PivotSpec pivot_spec_from_json(const nlohmann::json& j) {
  PivotSpec spec;
  if (!j.is_object()) throw std::invalid_argument("PivotSpec: expected a JSON object");
  spec.index_keys = j.at("index").get<std::vector<std::string>>();
  spec.column_keys = j.at("columns").get<std::vector<std::string>>();
  spec.value_key = j.at("value").get<std::string>();
  spec.agg = aggregation_from_name(j.at("agg").get<std::string>());
  if (j.contains("drop_null_keys")) spec.drop_null_keys = j.at("drop_null_keys").get<bool>();
  spec.validate();
  return spec;
}

nlohmann::json pivot_spec_to_json(const PivotSpec& spec) {
  return nlohmann::json{{"index", spec.index_keys},
                        {"columns", spec.column_keys},
                        {"value", spec.value_key},
                        {"agg", aggregation_name(spec.agg)},
                        {"drop_null_keys", spec.drop_null_keys}};
}

std::string render_group_label(const std::vector<CellValue>& values) {
  if (values.empty()) throw std::invalid_argument("render_group_label: empty tuple");
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += values[i].display();
  }
  return out;
}

bool label_less(const std::string& a, const std::string& b) {
  const auto na = parse_number(a);
  const auto nb = parse_number(b);
  if (na.has_value() != nb.has_value()) return na.has_value();  // numeric labels first
  if (na && nb && *na != *nb) return *na < *nb;
  return a < b;
}

namespace {

// Group keys are tuples of component display strings.
using GroupKey = std::vector<std::string>;

struct GroupKeyLess {
  bool operator()(const GroupKey& a, const GroupKey& b) const {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i] != b[i]) return label_less(a[i], b[i]);
    }
    return a.size() < b.size();
  }
};

struct PairKeyLess {
  bool operator()(const std::pair<GroupKey, GroupKey>& a,
                  const std::pair<GroupKey, GroupKey>& b) const {
    GroupKeyLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

struct Accumulator {
  double sum = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  std::size_t n = 0;
};

double finish(const Accumulator& acc, Aggregation agg) {
  switch (agg) {
    case Aggregation::Mean: return acc.sum / static_cast<double>(acc.n);
    case Aggregation::Sum: return acc.sum;
    case Aggregation::Count: return static_cast<double>(acc.n);
    case Aggregation::Min: return acc.mn;
    case Aggregation::Max: return acc.mx;
  }
  return 0.0;
}

}  // namespace

Table pivot(const Table& t, const PivotSpec& spec) {
  spec.validate_against(t);

  std::vector<std::size_t> index_cols, column_cols;
  for (const auto& k : spec.index_keys) index_cols.push_back(*t.column_index(k));
  for (const auto& k : spec.column_keys) column_cols.push_back(*t.column_index(k));
  const std::size_t value_col = *t.column_index(spec.value_key);
  const bool counting = spec.agg == Aggregation::Count;

  std::set<GroupKey, GroupKeyLess> row_groups;
  std::set<GroupKey, GroupKeyLess> col_groups;
  std::map<std::pair<GroupKey, GroupKey>, Accumulator, PairKeyLess> cells;

  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    const auto& row = t.rows()[r];

    bool skip = false;
    auto key_of = [&](const std::vector<std::size_t>& cols) {
      GroupKey key;
      key.reserve(cols.size());
      for (auto c : cols) {
        if (row[c].is_null() && spec.drop_null_keys) { skip = true; break; }
        key.push_back(row[c].display());
      }
      return key;
    };
    GroupKey rkey = key_of(index_cols);
    if (skip) continue;
    GroupKey ckey = key_of(column_cols);
    if (skip) continue;

    row_groups.insert(rkey);
    col_groups.insert(ckey);

    const CellValue& v = row[value_col];
    if (v.is_null()) continue;  // group exists, value does not contribute
    if (v.is_text() && !counting) {
      throw std::invalid_argument("pivot: non-numeric value under " +
                                  std::string(aggregation_name(spec.agg)) + " at row " +
                                  std::to_string(r));
    }
    Accumulator& acc = cells[{rkey, ckey}];
    acc.n += 1;
    if (v.is_number()) {
      const double x = v.as_number();
      acc.sum += x;
      acc.mn = std::min(acc.mn, x);
      acc.mx = std::max(acc.mx, x);
    }
  }

  std::vector<std::string> headers = spec.index_keys;
  for (const auto& ckey : col_groups) {
    std::string label;
    for (std::size_t i = 0; i < ckey.size(); ++i) {
      if (i) label += ' ';
      label += ckey[i];
    }
    headers.push_back(std::move(label));
  }

  std::vector<Table::Row> rows;
  rows.reserve(row_groups.size());
  for (const auto& rkey : row_groups) {
    Table::Row row;
    row.reserve(headers.size());
    for (const auto& component : rkey) row.push_back(CellValue::text(component));
    for (const auto& ckey : col_groups) {
      auto it = cells.find({rkey, ckey});
      if (it == cells.end() || it->second.n == 0) {
        row.push_back(CellValue::null());
      } else {
        row.push_back(CellValue::number(finish(it->second, spec.agg)));
      }
    }
    rows.push_back(std::move(row));
  }

  return Table(std::move(headers), std::move(rows), t.name());
}

}  // namespace pivotclr
