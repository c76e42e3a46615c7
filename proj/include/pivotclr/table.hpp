#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pivotclr/cell.hpp"

namespace pivotclr {

// Rectangular grid of typed cells under a header row. Immutable after
// construction; every transformation returns a new table.
class Table {
 public:
  using Row = std::vector<CellValue>;

  Table(std::vector<std::string> headers, std::vector<Row> rows,
        std::optional<std::string> name = std::nullopt);

  const std::vector<std::string>& headers() const { return headers_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::optional<std::string>& name() const { return name_; }

  std::size_t num_cols() const { return headers_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  // Duplicate header names are legal but recorded.
  bool has_duplicate_headers() const { return duplicate_headers_; }

  // Index of the first header equal to `name`.
  std::optional<std::size_t> column_index(std::string_view header) const;

  bool operator==(const Table& other) const {
    return headers_ == other.headers_ && rows_ == other.rows_;
  }

 private:
  std::vector<std::string> headers_;
  std::vector<Row> rows_;
  std::optional<std::string> name_;
  bool duplicate_headers_ = false;
};

struct CsvOptions {
  char delimiter = ',';
  bool header_row = true;  // when false, headers are synthesized as c1..cN
};

// RFC-4180 CSV reader with typed fields: numeric-looking fields become
// numbers, empty fields become null, everything else stays text.
Table load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Table load_csv_from_string(const std::string& contents, const CsvOptions& options = {},
                           const std::string& name = {});

// Emits RFC-4180 CSV; null cells become empty fields.
std::string to_csv(const Table& t, char delimiter = ',');
void write_csv(const Table& t, const std::filesystem::path& path, char delimiter = ',');

// Keeps the first max_cols columns and first max_rows rows in original order.
// Clamping: a table already within bounds is returned unchanged.
Table truncate(const Table& t, std::size_t max_cols, std::size_t max_rows);

}  // namespace pivotclr
