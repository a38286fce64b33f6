#pragma once

#include <cmath>
#include <compare>
#include <ostream>

#include "abconvex/errors.hpp"

namespace abconvex {

// A real number extended with +infinity. There is no -infinity: any
// operation that would produce one throws NegativeInfinity instead.
class ExtReal {
 public:
  constexpr ExtReal() : v_(0.0), inf_(false) {}
  constexpr ExtReal(double v) : v_(v), inf_(false) {}

  static constexpr ExtReal inf() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }

  // The finite value; throws if this is +infinity.
  double finite() const {
    if (inf_) throw Error("ExtReal: finite() called on +inf");
    return v_;
  }

  // As a double, mapping +infinity to HUGE_VAL. Handy for comparisons
  // and serialization.
  constexpr double as_double() const { return inf_ ? HUGE_VAL : v_; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.v_ == b.v_;
  }
  friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    return a.as_double() <=> b.as_double();
  }

  // Saturating addition: +inf is absorbing.
  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.inf_ || b.inf_) return inf();
    return ExtReal(a.v_ + b.v_);
  }
  ExtReal& operator+=(ExtReal o) { return *this = *this + o; }

  // Negation of +inf would be -infinity.
  friend ExtReal operator-(ExtReal a) {
    if (a.inf_) throw NegativeInfinity("ExtReal: negating +inf");
    return ExtReal(-a.v_);
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) {
    if (b.inf_) {
      if (a.inf_) throw Error("ExtReal: inf - inf is undefined");
      throw NegativeInfinity("ExtReal: subtracting +inf");
    }
    if (a.inf_) return inf();
    return ExtReal(a.v_ - b.v_);
  }

  friend std::ostream& operator<<(std::ostream& os, ExtReal r) {
    if (r.inf_) return os << "inf";
    return os << r.v_;
  }

 private:
  double v_;
  bool inf_;
};

inline constexpr ExtReal ext_add(ExtReal a, ExtReal b) { return a + b; }

}  // namespace abconvex
