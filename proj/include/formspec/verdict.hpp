#pragma once

#include "formspec/errors.hpp"

#include <cmath>
#include <string>

namespace formspec {

// Classified (essential) spectrum: empty, a half-line [bottom, inf), or unknown.
class SpectrumVerdict {
 public:
  enum class Kind { Empty, Interval, Unknown };

  static SpectrumVerdict empty() { return SpectrumVerdict(Kind::Empty, 0.0, {}); }
  static SpectrumVerdict interval(double bottom) {
    if (!(bottom >= 0.0)) throw InputError("interval bottom must be nonnegative");
    return SpectrumVerdict(Kind::Interval, bottom, {});
  }
  static SpectrumVerdict unknown(std::string reason) {
    return SpectrumVerdict(Kind::Unknown, 0.0, std::move(reason));
  }

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_interval() const { return kind_ == Kind::Interval; }
  bool is_unknown() const { return kind_ == Kind::Unknown; }
  double bottom() const { return bottom_; }
  const std::string& reason() const { return reason_; }

  // Same kind and, for intervals, bottoms within a relative tolerance.
  bool matches(const SpectrumVerdict& other, double rel_tol = 1e-9) const {
    if (kind_ != other.kind_) return false;
    if (kind_ != Kind::Interval) return true;
    return std::abs(bottom_ - other.bottom_) <= rel_tol * std::max(1.0, std::abs(bottom_));
  }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::Empty: return "empty";
      case Kind::Interval: return "interval";
      case Kind::Unknown: return "unknown";
    }
    return "unknown";
  }

 private:
  SpectrumVerdict(Kind kind, double bottom, std::string reason)
      : kind_(kind), bottom_(bottom), reason_(std::move(reason)) {}

  Kind kind_;
  double bottom_;
  std::string reason_;
};

}  // namespace formspec
