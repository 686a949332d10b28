#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tst/interval.hpp"
#include "tst/rational.hpp"

namespace tst {

// One difference bound: x_i - x_j < value or <= value, or no bound at all.
struct DbmBound {
  std::int64_t value = 0;
  bool strict = false;
  bool inf = false;

  static DbmBound infinite() { return {0, false, true}; }
  static DbmBound le(std::int64_t v) { return {v, false, false}; }
  static DbmBound lt(std::int64_t v) { return {v, true, false}; }

  /// Strictly tighter-than ordering; infinity is the loosest bound.
  bool tighter_than(const DbmBound& o) const;
  static DbmBound min(const DbmBound& a, const DbmBound& b);
  static DbmBound add(const DbmBound& a, const DbmBound& b);

  bool operator==(const DbmBound&) const = default;
};

// Difference bound matrix over n clocks plus the implicit zero clock at
// index 0. Matrix entry (i, j) bounds x_i - x_j. All public operations keep
// the matrix shortest-path closed, with the empty flag consistent with the
// negative-cycle test.
class Dbm {
 public:
  /// All clocks >= 0, nothing else.
  static Dbm universal(std::size_t num_clocks);

  std::size_t num_clocks() const { return dim_ - 1; }
  bool is_empty() const { return empty_; }

  const DbmBound& at(std::size_t i, std::size_t j) const;
  /// Tightens entry (i, j) to min(current, b). Caller must close() after a
  /// batch of constraints.
  void constrain(std::size_t i, std::size_t j, const DbmBound& b);

  /// Shortest-path closure; sets the empty flag on a negative cycle.
  void close();

  /// Exact membership of a rational point (vals[k] is clock k+1).
  bool contains(const std::vector<Rational>& vals) const;

  Dbm meet(const Dbm& o) const;
  bool subset_of(const Dbm& o) const;

  /// Time successors: delays delta >= 0 (weak) or delta > 0 (strict).
  Dbm future(bool strict) const;
  /// Time predecessors: {nu : exists delta >= 0 (or > 0), nu+delta inside}.
  Dbm past(bool strict) const;

  /// Clocks at the given indices (1-based matrix indices) set to zero.
  Dbm reset(const std::vector<std::size_t>& clock_indices) const;
  /// Drops every bound on the given clocks except nonnegativity.
  Dbm free(const std::vector<std::size_t>& clock_indices) const;

  /// Classic maximal-constant extrapolation. max_consts[k] is the bound for
  /// clock k+1; the zero clock uses 0.
  Dbm extrapolate(const std::vector<std::int64_t>& max_consts) const;

  /// Complement within the universal DBM, as a finite union.
  std::vector<Dbm> complement() const;

  /// Delay range {delta >= 0 : point + delta inside}, as an interval within
  /// [0, inf); nullopt when the diagonal never meets the zone.
  std::optional<Interval> ray_interval(const std::vector<Rational>& point) const;

  /// A deterministic rational point of a non-empty zone: clocks are fixed to
  /// their minimum one at a time in index order. Coordinates are multiples
  /// of 1/(n+2), the granularity at which strict bounds always leave room.
  std::vector<Rational> pick_point() const;

  bool operator==(const Dbm&) const = default;
  std::size_t hash() const;

 private:
  explicit Dbm(std::size_t dim);
  DbmBound& entry(std::size_t i, std::size_t j);
  const DbmBound& entry(std::size_t i, std::size_t j) const;

  std::size_t dim_;
  bool empty_ = false;
  std::vector<DbmBound> m_;
};

}  // namespace tst
