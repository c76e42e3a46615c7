#include "pivotclr/table.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace pivotclr {

Table::Table(std::vector<std::string> headers, std::vector<Row> rows,
             std::optional<std::string> name)
    : headers_(std::move(headers)), rows_(std::move(rows)), name_(std::move(name)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& h : headers_) {
    if (h.empty()) throw std::invalid_argument("Table: empty header name");
    if (!seen.insert(h).second) duplicate_headers_ = true;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != headers_.size()) {
      throw std::invalid_argument("Table: row " + std::to_string(i) + " has " +
                                  std::to_string(rows_[i].size()) + " cells, expected " +
                                  std::to_string(headers_.size()));
    }
  }
}

std::optional<std::size_t> Table::column_index(std::string_view header) const {
  for (std::size_t i = 0; i < headers_.size(); ++i) {
    if (headers_[i] == header) return i;
  }
  return std::nullopt;
}

namespace {

// Splits CSV text into records of raw fields, honoring RFC-4180 quoting.
std::vector<std::vector<std::string>> split_csv(const std::string& text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  enum class State { FieldStart, InField, InQuoted, QuoteInQuoted };
  State state = State::FieldStart;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    switch (state) {
      case State::FieldStart:
        if (c == '"') { state = State::InQuoted; ++i; }
        else if (c == delimiter) { end_field(); ++i; }
        else if (c == '\n') { end_record(); ++i; }
        else if (c == '\r' && i + 1 < n && text[i + 1] == '\n') { end_record(); i += 2; }
        else { field.push_back(c); state = State::InField; ++i; }
        break;
      case State::InField:
        if (c == delimiter) { end_field(); state = State::FieldStart; ++i; }
        else if (c == '\n') { end_record(); state = State::FieldStart; ++i; }
        else if (c == '\r' && i + 1 < n && text[i + 1] == '\n') { end_record(); state = State::FieldStart; i += 2; }
        else { field.push_back(c); ++i; }
        break;
      case State::InQuoted:
        if (c == '"') { state = State::QuoteInQuoted; ++i; }
        else { field.push_back(c); ++i; }
        break;
      case State::QuoteInQuoted:
        if (c == '"') { field.push_back('"'); state = State::InQuoted; ++i; }
        else if (c == delimiter) { end_field(); state = State::FieldStart; ++i; }
        else if (c == '\n') { end_record(); state = State::FieldStart; ++i; }
        else if (c == '\r' && i + 1 < n && text[i + 1] == '\n') { end_record(); state = State::FieldStart; i += 2; }
        else throw std::runtime_error("load_csv: stray character after closing quote");
        break;
    }
  }
  if (state == State::InQuoted) throw std::runtime_error("load_csv: unterminated quoted field");
  // Flush a final record that has no trailing newline.
  if (state != State::FieldStart || !field.empty() || !record.empty()) {
    end_record();
  }
  return records;
}

}  // namespace

Table load_csv_from_string(const std::string& contents, const CsvOptions& options,
                           const std::string& name) {
  if (contents.empty()) throw std::runtime_error("load_csv: empty file");
  auto records = split_csv(contents, options.delimiter);
  if (records.empty()) throw std::runtime_error("load_csv: empty file");

  std::vector<std::string> headers;
  std::size_t first_data = 0;
  if (options.header_row) {
    headers.assign(records[0].begin(), records[0].end());
    first_data = 1;
  } else {
    headers.reserve(records[0].size());
    for (std::size_t i = 0; i < records[0].size(); ++i) {
      headers.push_back("c" + std::to_string(i + 1));
    }
  }

  std::vector<Table::Row> rows;
  rows.reserve(records.size() - first_data);
  for (std::size_t r = first_data; r < records.size(); ++r) {
    if (records[r].size() != headers.size()) {
      throw std::runtime_error("load_csv: row " + std::to_string(r - first_data + 1) +
                               " has " + std::to_string(records[r].size()) +
                               " fields, expected " + std::to_string(headers.size()));
    }
    Table::Row row;
    row.reserve(records[r].size());
    for (const auto& f : records[r]) row.push_back(CellValue::from_field(f));
    rows.push_back(std::move(row));
  }
  return Table(std::move(headers), std::move(rows),
               name.empty() ? std::nullopt : std::make_optional(name));
}

Table load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("load_csv: read error on " + path.string());
  return load_csv_from_string(buf.str(), options, path.stem().string());
}

namespace {

std::string csv_escape(const std::string& field, char delimiter) {
  const bool needs_quotes = field.find(delimiter) != std::string::npos ||
                            field.find('"') != std::string::npos ||
                            field.find('\n') != std::string::npos ||
                            field.find('\r') != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const Table& t, char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < t.headers().size(); ++i) {
    if (i) out += delimiter;
    out += csv_escape(t.headers()[i], delimiter);
  }
  out += '\n';
  for (const auto& row : t.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += delimiter;
      if (!row[i].is_null()) out += csv_escape(row[i].display(), delimiter);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& t, const std::filesystem::path& path, char delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
  out << to_csv(t, delimiter);
  if (!out) throw std::runtime_error("write_csv: write error on " + path.string());
}

Table truncate(const Table& t, std::size_t max_cols, std::size_t max_rows) {
  if (max_cols < 1) throw std::invalid_argument("truncate: max_cols must be >= 1");
  const std::size_t cols = std::min(max_cols, t.num_cols());
  const std::size_t nrows = std::min(max_rows, t.num_rows());
  std::vector<std::string> headers(t.headers().begin(), t.headers().begin() + cols);
  std::vector<Table::Row> rows;
  rows.reserve(nrows);
  for (std::size_t r = 0; r < nrows; ++r) {
    rows.emplace_back(t.rows()[r].begin(), t.rows()[r].begin() + cols);
  }
  return Table(std::move(headers), std::move(rows), t.name());
}

}  // namespace pivotclr
