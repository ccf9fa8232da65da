#pragma once

#include <compare>
#include <limits>

#include "fskellam/errors.hpp"

namespace fskellam {

/// A value in [0, +inf] as produced by rate functions. Only comparison is
/// defined; finite values are read back through value().
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double v) : value_(v) {}

  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }
  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }

  [[nodiscard]] double value() const {
    if (infinite_) throw DomainError("ExtendedReal: value() on +inf");
    return value_;
  }

  /// +inf maps to the IEEE infinity; for output and plotting only.
  [[nodiscard]] constexpr double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                     const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return (a <=> b) == 0;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

inline ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) {
  return b < a ? b : a;
}

}  // namespace fskellam
