#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tst/clock.hpp"
#include "tst/dbm.hpp"
#include "tst/guard.hpp"
#include "tst/interval.hpp"

namespace tst {

// Largest constant each clock is compared against; the extrapolation
// parameter of the symbolic graphs.
using MaxConstMap = std::map<ClockId, std::int64_t>;

// Finite union of non-empty canonical DBMs over one clock universe. Guard
// denotations need unions because the grammar has negation; single zones
// are not closed under complement.
struct ZoneSet {
  ClockUniverse universe;
  std::vector<Dbm> members;  // non-empty, closed, pairwise non-subsumed

  static ZoneSet empty_set(const ClockUniverse& u) { return {u, {}}; }
  static ZoneSet universal(const ClockUniverse& u);
  /// Singleton zone {point}; the valuation must be total on the universe.
  static ZoneSet point(const ClockUniverse& u, const ClockValuation& v);

  bool is_empty() const { return members.empty(); }
};

enum class ZsMode { meet, join, negate };

/// Set algebra on zone sets: intersection, union, complement. `b` must be
/// present iff mode != negate; universes must match.
ZoneSet zs_boolean(ZsMode mode, const ZoneSet& a, const ZoneSet* b);

ZoneSet zs_meet(const ZoneSet& a, const ZoneSet& b);
ZoneSet zs_join(const ZoneSet& a, const ZoneSet& b);
ZoneSet zs_negate(const ZoneSet& a);
/// a \ b, as zs_meet(a, zs_negate(b)) without the intermediate copy.
ZoneSet zs_minus(const ZoneSet& a, const ZoneSet& b);

bool zs_member(const ZoneSet& z, const ClockValuation& v);
bool zs_is_empty(const ZoneSet& z);
/// Denotation inclusion (exact, not member-wise).
bool zs_subset(const ZoneSet& a, const ZoneSet& b);
bool zs_same_denotation(const ZoneSet& a, const ZoneSet& b);

/// {nu : exists delta >= 0 (or > 0 when strict): nu + delta in Z}.
ZoneSet zs_past(const ZoneSet& z);
ZoneSet zs_past_strict(const ZoneSet& z);
/// {nu + delta : nu in Z, delta >= 0 (or > 0 when strict)}.
ZoneSet zs_future(const ZoneSet& z, bool strict);

ZoneSet zs_reset(const ZoneSet& z, const ResetSet& r);
ZoneSet zs_extrapolate(const ZoneSet& z, const MaxConstMap& m);

/// Delay closure under input urgency: Z together with every nu + delta
/// (delta > 0, nu in Z) whose open-below segment [nu, nu+delta) misses S.
/// The first instant of S on a diagonal stays reachable (inclusive cutoff);
/// beyond it nothing is. Delay feasibility (rdy) is the caller's meet.
ZoneSet urgent_elapse(const ZoneSet& z, const ZoneSet& s);

/// Backward counterpart: {nu : exists mu in T, delta >= 0, mu = nu + delta,
/// [nu, mu) disjoint from S}. Used for "a tau is reachable by permitted
/// delay" sets.
ZoneSet urgent_past(const ZoneSet& t, const ZoneSet& s);

/// Zone denotation of a guard over `universe`, with clock names resolved
/// against `owner`. Guard constants are multiplied by `scale` (the checker
/// runs time-scaled when initial valuations are fractional).
/// Throws std::invalid_argument("unbound clock ...") for unknown clocks.
ZoneSet guard_zones(const GuardPtr& g, const ClockUniverse& universe,
                    Owner owner, std::int64_t scale = 1);

/// {mu : mu with clocks of r zeroed lies in z}. Backward reset image.
ZoneSet zs_reset_pre(const ZoneSet& z, const ResetSet& r);

/// Union of member ray intervals: {delta >= 0 : point + delta in Z}.
IntervalSet zs_ray_instants(const ZoneSet& z, const ClockValuation& point);

/// Deterministic witness point of a non-empty zone set: the point of the
/// least member under the canonical member ordering.
ClockValuation zs_pick_point(const ZoneSet& z);

/// Guard with the same denotation as z. Clock names are taken from the
/// universe; all members must share one owner. Unions render through
/// !(!m1 && !m2) since the grammar has no disjunction.
GuardPtr zone_to_guard(const ZoneSet& z);

/// Drops empty members, subsumed members, and orders members canonically.
void zs_normalize(ZoneSet& z);

}  // namespace tst
