#pragma once

#include <cassert>
#include <compare>
#include <string>

#include "lot/rational.hpp"

namespace lot {

/// Nonnegative real extended with +infinity; the codomain of the Lorentzian
/// distance d and of LW_s. Addition saturates at +infinity.
class ExtendedReal {
 public:
  ExtendedReal() : value_(0.0), infinite_(false) {}
  explicit ExtendedReal(double value) : value_(value), infinite_(false) {
    assert(value >= 0.0);
  }
  static ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  /// Finite numeric value; only meaningful when !is_infinite().
  double value() const { return value_; }

  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedReal(a.value_ + b.value_);
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  /// "inf" or a 12-significant-digit decimal.
  std::string str() const { return infinite_ ? "inf" : format_double(value_); }

 private:
  double value_;
  bool infinite_;
};

}  // namespace lot
