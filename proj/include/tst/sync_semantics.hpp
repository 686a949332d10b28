#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tst/config.hpp"
#include "tst/interval.hpp"
#include "tst/zone.hpp"

namespace tst {

// --- rdy: the valuations from which an endpoint may let time pass ---------
//
// rdy((+)_i !a_i{g_i}.p_i) = past(U_i [[g_i]])
// rdy(+ ...) = rdy(1) = V
// rdy(rec X p) = rdy of the unfolding

/// Symbolic rdy over an explicit universe (checker route).
ZoneSet rdy(const TstPtr& p, const ClockUniverse& universe, Owner owner,
            std::int64_t scale = 1);

/// Concrete rdy along the delay axis: {delta >= 0 : nu+delta in rdy(p)}.
/// Interval route, independent of the zone layer.
IntervalSet rdy_instants(const TstPtr& p, const ClockValuation& nu);

// --- synchronous endpoint and system steps (Fig. 1) -----------------------

/// Discrete endpoint steps: branch commits (tau, queue was empty), queue
/// flush (!a when the queue holds a), enabled inputs (?a, queue empty).
/// Recursion unfolds first. Empty result means stuck.
std::vector<std::pair<StepLabel, EndpointConfig>> sync_endpoint_steps(
    const EndpointConfig& c);

/// [Del]: defined iff the queue is empty and nu+delta in rdy(term).
/// delta must be positive.
std::optional<EndpointConfig> sync_endpoint_delay(const EndpointConfig& c,
                                                  const Rational& delta);

/// All system tau steps: local commits lifted by [S-(+)] and matching
/// out/in pairs fused by [S-tau], both directions.
std::vector<SystemStep> sync_system_steps(const SystemConfig& s);

/// [S-Del]: empty iff either queue is non-empty; otherwise the meet of the
/// endpoint rdy intervals, as an exact down-closed delay set.
DelayInterval sync_allowed_delays(const SystemConfig& s);

/// Both terms success (up to unfolding) with both queues empty.
bool is_success(const SystemConfig& s);

// --- symbolic successor generation (zone graph of the checker) ------------

// Location: term plus the committed action when the endpoint queue holds
// one message. The zone is shared over both endpoints' clocks.
struct SymbolicLocation {
  TstPtr term;
  std::optional<Action> committed;
};

struct SymbolicState {
  SymbolicLocation left;
  SymbolicLocation right;
  ZoneSet zone;  // non-empty
};

struct SymbolicTransition {
  TauKind kind;
  Actor actor;
  Action action;
  SymbolicState target;
};

// Shared setup of a symbolic exploration: universe over both endpoints'
// clocks, extrapolation constants, and the time scale applied to guard
// constants (used to start from fractional valuations).
struct SymContext {
  ClockUniverse universe;
  MaxConstMap max_consts;
  std::int64_t scale = 1;
  bool extrapolate = true;
};

SymContext make_sym_context(const TstPtr& p, const TstPtr& q,
                            std::int64_t scale = 1);

/// Delay closure of a state: the zone together with everything reachable by
/// permitted delays (nothing when a queue is committed). Includes the
/// original zone.
ZoneSet sync_elapsed_zone(const SymbolicState& s, const SymContext& ctx);

/// Valuations with a tau enabled right now.
ZoneSet sync_tau_enabled_zone(const SymbolicState& s, const SymContext& ctx);

/// Points of the elapsed zone from which no tau is reachable now or after
/// any permitted delay. Empty for success states.
ZoneSet sync_deadlock_points(const SymbolicState& s, const SymContext& ctx);

/// Discrete successors fired from the elapsed zone, extrapolated. Union
/// members are split into separate states.
std::vector<SymbolicTransition> sync_symbolic_successors(
    const SymbolicState& s, const SymContext& ctx);

}  // namespace tst
