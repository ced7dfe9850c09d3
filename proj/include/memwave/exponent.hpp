#pragma once

#include <limits>
#include <optional>
#include <string>

namespace memwave {

/// A critical exponent that may be +infinity.
///
/// Many exponents are of the form 1 + a/(b)_+ and become infinite when the
/// positive part vanishes. An infinite bound never restricts p.
class Exponent {
 public:
  static Exponent finite(double value);
  static Exponent infinite() { return Exponent{}; }

  /// 1 + numerator / (denominator)_+ ; infinite when denominator <= 0.
  static Exponent one_plus_over_positive_part(double numerator, double denominator);

  bool is_finite() const { return value_.has_value(); }
  /// Throws std::logic_error when infinite.
  double value() const;
  /// +inf for infinite exponents; for output and plotting only.
  double as_double() const {
    return value_ ? *value_ : std::numeric_limits<double>::infinity();
  }

  /// p <= bound.
  bool admits(double p) const { return !value_ || p <= *value_; }
  /// p < bound.
  bool admits_strictly(double p) const { return !value_ || p < *value_; }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend bool operator<(const Exponent& a, const Exponent& b);

  std::string to_string() const;

 private:
  Exponent() = default;
  explicit Exponent(double v) : value_(v) {}
  std::optional<double> value_;
};

Exponent min(const Exponent& a, const Exponent& b);
Exponent max(const Exponent& a, const Exponent& b);

}  // namespace memwave
