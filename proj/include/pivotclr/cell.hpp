#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pivotclr {

// A single table cell: text, a finite number, or null. Parse failures become
// text, empty fields become null, so construction never fails on data.
class CellValue {
 public:
  enum class Kind { Null, Number, Text };

  CellValue() = default;

  static CellValue null() { return CellValue(); }
  static CellValue number(double v);          // throws if v is not finite
  static CellValue text(std::string s);

  // Classifies a raw field: "" -> null, float-literal -> number, rest -> text.
  static CellValue from_field(std::string_view field);

  Kind kind() const { return kind_; }
  bool is_null() const { return kind_ == Kind::Null; }
  bool is_number() const { return kind_ == Kind::Number; }
  bool is_text() const { return kind_ == Kind::Text; }

  double as_number() const;                   // throws unless number
  const std::string& as_text() const;         // throws unless text

  // Display form: numbers render integers without a decimal point and other
  // values by shortest round-trip decimal; text is itself; null is "[NULL]".
  std::string display() const;

  bool operator==(const CellValue& other) const;

 private:
  Kind kind_ = Kind::Null;
  double number_ = 0.0;
  std::string text_;
};

// Renders a finite double: integral magnitudes up to 2^53 print with no
// decimal point, everything else prints the shortest string that parses back
// to the same value.
std::string format_number(double v);

// Full-match decimal/scientific float literal after trimming ASCII
// whitespace; leading zeros and a leading sign are accepted, inf/nan and
// overflowing literals are not.
std::optional<double> parse_number(std::string_view s);

}  // namespace pivotclr
