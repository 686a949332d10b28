#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tst/rational.hpp"

namespace tst {

// The two endpoints of a binary session own disjoint clock sets. A clock is
// identified by its owner tag plus the local name used in the endpoint's
// guards.
enum class Owner { left, right };

inline const char* owner_name(Owner o) {
  return o == Owner::left ? "left" : "right";
}
inline Owner other(Owner o) {
  return o == Owner::left ? Owner::right : Owner::left;
}

struct ClockId {
  Owner owner;
  std::string name;

  auto operator<=>(const ClockId&) const = default;
};

// Ordered list of the clocks a zone (or valuation set) ranges over. The
// ordering doubles as the DBM row/column assignment: index 0 is the implicit
// zero clock, clock k of the universe sits at matrix index k+1.
class ClockUniverse {
 public:
  ClockUniverse() = default;
  explicit ClockUniverse(std::vector<ClockId> clocks);

  std::size_t size() const { return clocks_.size(); }
  const std::vector<ClockId>& clocks() const { return clocks_; }
  const ClockId& at(std::size_t i) const { return clocks_.at(i); }

  /// Position of `c`, or nullopt if the clock is not in the universe.
  std::optional<std::size_t> index_of(const ClockId& c) const;
  /// Position of the unique clock named `name` owned by `o`.
  std::optional<std::size_t> index_of(Owner o, const std::string& name) const;

  bool operator==(const ClockUniverse&) const = default;

 private:
  std::vector<ClockId> clocks_;  // sorted, unique
};

/// Universe over the union of both argument universes.
ClockUniverse universe_union(const ClockUniverse& a, const ClockUniverse& b);

// Total assignment of time values to the clocks in scope. Endpoint
// valuations only carry clocks of one owner.
using ClockValuation = std::map<ClockId, Rational>;

using ResetSet = std::set<ClockId>;

/// Zero valuation over the given clocks.
ClockValuation val_zero(const std::vector<ClockId>& clocks);

/// Looks up the (unique per owner) clock called `name`. Throws
/// std::invalid_argument("unbound clock ...") when absent.
const Rational& val_lookup(const ClockValuation& v, const std::string& name);

/// nu + delta, then reset: the two primitive valuation updates of the
/// semantics, applied in that order when both are present.
/// Throws std::invalid_argument on negative delta.
ClockValuation val_update(const ClockValuation& v,
                          const std::optional<Rational>& delta,
                          const std::optional<ResetSet>& resets);

}  // namespace tst
