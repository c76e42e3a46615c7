#include "pivotclr/cell.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace pivotclr {

CellValue CellValue::number(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("CellValue: number must be finite");
  }
  CellValue c;
  c.kind_ = Kind::Number;
  c.number_ = v;
  return c;
}

CellValue CellValue::text(std::string s) {
  CellValue c;
  c.kind_ = Kind::Text;
  c.text_ = std::move(s);
  return c;
}

CellValue CellValue::from_field(std::string_view field) {
  if (field.empty()) return null();
  if (auto v = parse_number(field)) return number(*v);
  return text(std::string(field));
}

double CellValue::as_number() const {
  if (kind_ != Kind::Number) throw std::logic_error("CellValue: not a number");
  return number_;
}

const std::string& CellValue::as_text() const {
  if (kind_ != Kind::Text) throw std::logic_error("CellValue: not text");
  return text_;
}

std::string CellValue::display() const {
  switch (kind_) {
    case Kind::Null: return "[NULL]";
    case Kind::Number: return format_number(number_);
    case Kind::Text: return text_;
  }
  return {};
}

bool CellValue::operator==(const CellValue& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Null: return true;
    case Kind::Number: return number_ == other.number_;
    case Kind::Text: return text_ == other.text_;
  }
  return false;
}

std::string format_number(double v) {
  // 2^53: largest magnitude below which every integer is exact in a double.
  constexpr double kExactIntLimit = 9007199254740992.0;
  if (v == std::floor(v) && std::fabs(v) <= kExactIntLimit) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;

  // Validate the literal shape ourselves so that inf/nan/hex never slip
  // through, then let from_chars produce the value.
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++int_digits; }
  std::size_t frac_digits = 0;
  bool has_point = false;
  if (i < s.size() && s[i] == '.') {
    has_point = true;
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++frac_digits; }
  }
  if (int_digits + frac_digits == 0) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++exp_digits; }
    if (exp_digits == 0) return std::nullopt;
  }
  if (i != s.size()) return std::nullopt;

  // Normalize forms from_chars is picky about: drop a leading '+', pad a bare
  // leading or trailing '.'.
  std::string norm(s);
  if (norm.front() == '+') norm.erase(norm.begin());
  if (has_point && frac_digits == 0) norm += '0';
  if (norm.front() == '.') norm.insert(norm.begin(), '0');
  else if (norm.size() >= 2 && norm[0] == '-' && norm[1] == '.') norm.insert(norm.begin() + 1, '0');

  double value = 0.0;
  const auto res = std::from_chars(norm.data(), norm.data() + norm.size(), value);
  if (res.ec != std::errc{} || res.ptr != norm.data() + norm.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace pivotclr
