#pragma once

#include <string>

#include "ptw/params.hpp"

namespace ptw {

/// t = (r/s)·T_rev with gcd(r, s) = 1 and 0 < r/s ≤ 1.
class FractionalTime {
 public:
  /// DomainError unless r ≥ 1, s ≥ 1, r ≤ s and gcd(r, s) = 1. s = 1 only with r = 1 (full revival).
  FractionalTime(int r, int s);

  int r() const noexcept { return r_; }
  int s() const noexcept { return s_; }
  double fraction() const noexcept { return static_cast<double>(r_) / s_; }
  double time(const PTParams& params) const noexcept { return fraction() * params.revival_time(); }

  /// Number of clones at this time: s/2 for even s, s for odd s.
  int clone_count() const noexcept { return s_ % 2 == 0 ? s_ / 2 : s_; }

  friend bool operator==(const FractionalTime&, const FractionalTime&) = default;

 private:
  int r_;
  int s_;
};

/// Parses "r/s" (or a bare "1"); DomainError on malformed input.
FractionalTime parse_fractional_time(const std::string& text);

}  // namespace ptw
