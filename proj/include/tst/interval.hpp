#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tst/rational.hpp"

namespace tst {

// Down-closed set of permitted positive delays: one of
//   {}   (0,b)   (0,b]   (0,inf)
// The down-closed shape is forced by the past-closedness of rdy.
struct DelayInterval {
  bool empty = true;
  bool unbounded = false;
  Rational bound{0};   // meaningful iff !empty && !unbounded
  bool inclusive = false;

  static DelayInterval none() { return {}; }
  static DelayInterval all() { return {false, true, Rational(0), false}; }
  static DelayInterval up_to(const Rational& b, bool incl);

  bool contains(const Rational& delta) const;
  bool operator==(const DelayInterval&) const = default;

  std::string to_string() const;
};

// One piece of a finite union of intervals over [0, inf). `hi` empty means
// unbounded above.
struct Interval {
  Rational lo{0};
  bool lo_strict = false;
  std::optional<Rational> hi;
  bool hi_strict = false;

  bool contains(const Rational& x) const;
  bool is_empty() const;
  bool operator==(const Interval&) const = default;
};

// Finite union of rational-endpoint intervals, kept normalized (sorted,
// disjoint, non-adjacent). This is the exact representation of guard
// truth sets, rdy feasibility and sync instants along the delay axis.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet empty() { return {}; }
  static IntervalSet all();
  static IntervalSet of(Interval iv);

  bool is_empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }

  bool contains(const Rational& x) const;

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  /// Complement within [0, inf).
  IntervalSet complement() const;

  /// Least element of the set: (value, attained). When not attained the set
  /// approaches the value from above. nullopt iff empty.
  std::optional<std::pair<Rational, bool>> infimum() const;

  /// {x : exists y >= x in the set}; the result is [0, sup) or [0, sup].
  IntervalSet down_closure() const;

  /// Supremum as (value, attained); nullopt means unbounded (or empty —
  /// check is_empty first).
  std::optional<std::pair<Rational, bool>> supremum() const;

  bool operator==(const IntervalSet&) const = default;

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

/// The permitted-delay view of an interval set known to be down-closed:
/// its restriction to delta > 0 as a DelayInterval.
DelayInterval to_delay_interval(const IntervalSet& s);

}  // namespace tst
