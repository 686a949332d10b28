#include "tst/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace tst {

DelayInterval DelayInterval::up_to(const Rational& b, bool incl) {
  if (b < Rational(0) || (b == Rational(0))) return none();
  DelayInterval d;
  d.empty = false;
  d.unbounded = false;
  d.bound = b;
  d.inclusive = incl;
  return d;
}

bool DelayInterval::contains(const Rational& delta) const {
  if (delta <= Rational(0)) return false;
  if (empty) return false;
  if (unbounded) return true;
  return inclusive ? delta <= bound : delta < bound;
}

std::string DelayInterval::to_string() const {
  if (empty) return "{}";
  if (unbounded) return "(0,inf)";
  return "(0," + rat_to_string(bound) + (inclusive ? "]" : ")");
}

bool Interval::contains(const Rational& x) const {
  if (lo_strict ? x <= lo : x < lo) return false;
  if (!hi) return true;
  return hi_strict ? x < *hi : x <= *hi;
}

bool Interval::is_empty() const {
  if (!hi) return false;
  if (lo < *hi) return false;
  return lo > *hi || lo_strict || hi_strict;
}

IntervalSet IntervalSet::all() {
  IntervalSet s;
  s.parts_.push_back(Interval{Rational(0), false, std::nullopt, false});
  return s;
}

IntervalSet IntervalSet::of(Interval iv) {
  IntervalSet s;
  if (!iv.is_empty()) s.parts_.push_back(std::move(iv));
  s.normalize();
  return s;
}

bool IntervalSet::contains(const Rational& x) const {
  for (const auto& p : parts_) {
    if (p.contains(x)) return true;
  }
  return false;
}

namespace {

// Does the union of a and b form one interval (they overlap or touch)?
bool joinable(const Interval& a, const Interval& b) {
  // Assumes a.lo <= b.lo.
  if (!a.hi) return true;
  if (*a.hi > b.lo) return true;
  if (*a.hi < b.lo) return false;
  // Touching endpoints: the junction point must be covered by either side.
  return !(a.hi_strict && b.lo_strict);
}

}  // namespace

void IntervalSet::normalize() {
  std::vector<Interval> in;
  for (auto& p : parts_) {
    if (!p.is_empty()) in.push_back(p);
  }
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_strict && b.lo_strict;
  });
  std::vector<Interval> out;
  for (auto& p : in) {
    if (!out.empty() && joinable(out.back(), p)) {
      Interval& last = out.back();
      if (!last.hi) continue;
      if (!p.hi) {
        last.hi.reset();
        last.hi_strict = false;
      } else if (*p.hi > *last.hi ||
                 (*p.hi == *last.hi && last.hi_strict && !p.hi_strict)) {
        last.hi = p.hi;
        last.hi_strict = p.hi_strict;
      }
    } else {
      out.push_back(p);
    }
  }
  parts_ = std::move(out);
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  IntervalSet s;
  s.parts_ = parts_;
  s.parts_.insert(s.parts_.end(), o.parts_.begin(), o.parts_.end());
  s.normalize();
  return s;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  IntervalSet s;
  for (const auto& a : parts_) {
    for (const auto& b : o.parts_) {
      Interval r;
      if (a.lo > b.lo || (a.lo == b.lo && a.lo_strict)) {
        r.lo = a.lo;
        r.lo_strict = a.lo_strict;
      } else {
        r.lo = b.lo;
        r.lo_strict = b.lo_strict;
      }
      if (!a.hi) {
        r.hi = b.hi;
        r.hi_strict = b.hi_strict;
      } else if (!b.hi) {
        r.hi = a.hi;
        r.hi_strict = a.hi_strict;
      } else if (*a.hi < *b.hi || (*a.hi == *b.hi && a.hi_strict)) {
        r.hi = a.hi;
        r.hi_strict = a.hi_strict;
      } else {
        r.hi = b.hi;
        r.hi_strict = b.hi_strict;
      }
      if (!r.is_empty()) s.parts_.push_back(r);
    }
  }
  s.normalize();
  return s;
}

IntervalSet IntervalSet::complement() const {
  IntervalSet s;
  Rational cursor(0);
  bool cursor_strict = false;  // current gap is [cursor,.. or (cursor,..
  for (const auto& p : parts_) {
    Interval gap;
    gap.lo = cursor;
    gap.lo_strict = cursor_strict;
    gap.hi = p.lo;
    gap.hi_strict = !p.lo_strict;
    if (!gap.is_empty()) s.parts_.push_back(gap);
    if (!p.hi) return s;  // unbounded part: nothing above it
    cursor = *p.hi;
    cursor_strict = !p.hi_strict;
  }
  s.parts_.push_back(Interval{cursor, cursor_strict, std::nullopt, false});
  s.normalize();
  return s;
}

std::optional<std::pair<Rational, bool>> IntervalSet::infimum() const {
  if (parts_.empty()) return std::nullopt;
  return std::make_pair(parts_.front().lo, !parts_.front().lo_strict);
}

std::optional<std::pair<Rational, bool>> IntervalSet::supremum() const {
  if (parts_.empty()) return std::nullopt;
  const Interval& last = parts_.back();
  if (!last.hi) return std::nullopt;
  return std::make_pair(*last.hi, !last.hi_strict);
}

IntervalSet IntervalSet::down_closure() const {
  if (parts_.empty()) return IntervalSet::empty();
  const Interval& last = parts_.back();
  Interval iv;
  iv.lo = Rational(0);
  iv.lo_strict = false;
  iv.hi = last.hi;
  iv.hi_strict = last.hi_strict;
  return IntervalSet::of(iv);
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (const auto& p : parts_) {
    if (!out.empty()) out += " u ";
    out += p.lo_strict ? "(" : "[";
    out += rat_to_string(p.lo);
    out += ",";
    out += p.hi ? rat_to_string(*p.hi) : "inf";
    out += (!p.hi || p.hi_strict) ? ")" : "]";
  }
  return out;
}

DelayInterval to_delay_interval(const IntervalSet& s) {
  if (s.is_empty()) return DelayInterval::none();
  // Callers pass down-closed sets containing 0, so the positive part is the
  // first component above 0.
  const Interval& first = s.parts().front();
  if (first.lo > Rational(0)) {
    throw std::invalid_argument("interval set is not down-closed from 0");
  }
  if (!first.hi) return DelayInterval::all();
  return DelayInterval::up_to(*first.hi, !first.hi_strict);
}

}  // namespace tst
