#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tst/config.hpp"
#include "tst/interval.hpp"
#include "tst/sync_semantics.hpp"

namespace tst {

// Input-urgent asynchronous semantics (Fig. 2). Queues are unbounded;
// commits append, outputs pop the head, inputs ignore the own queue.

std::vector<std::pair<StepLabel, EndpointConfig>> async_endpoint_steps(
    const EndpointConfig& c);

/// [Del]: defined iff nu+delta in rdy(term); no queue premise. delta > 0.
std::optional<EndpointConfig> async_endpoint_delay(const EndpointConfig& c,
                                                   const Rational& delta);

/// delta-sync: at offset delta some action can be emitted by one side and
/// consumed by the other. delta >= 0.
bool delta_sync(const SystemConfig& s, const Rational& delta);

/// {delta >= 0 : s is delta-sync}, exactly.
IntervalSet sync_instants(const SystemConfig& s);

/// [S-Del] with the urgency premise: endpoint feasibility meet, truncated
/// at the first sync instant (inclusive whether or not that instant is
/// itself sync — the "forall delta' < delta" quantification).
DelayInterval async_allowed_delays(const SystemConfig& s);

/// All system tau steps: commits lifted by [S-(+)], head-of-queue message
/// handovers fused by [S-tau].
std::vector<SystemStep> async_system_steps(const SystemConfig& s);

// --- bounded symbolic exploration ------------------------------------------

// Zone-graph node of the bounded asynchronous search: terms, explicit
// queues (length capped by the exploration bound), shared zone.
struct AsyncSymbolicState {
  TstPtr left_term;
  Queue left_queue;
  TstPtr right_term;
  Queue right_queue;
  ZoneSet zone;
};

struct AsyncSymbolicTransition {
  TauKind kind;
  Actor actor;
  Action action;
  AsyncSymbolicState target;
};

/// Zone of valuations where some message handover is enabled (the
/// obstacle set S of the urgency operators).
ZoneSet async_sync_enabled_zone(const AsyncSymbolicState& s,
                                const SymContext& ctx);

/// Urgency-limited delay closure, including the original zone.
ZoneSet async_elapsed_zone(const AsyncSymbolicState& s, const SymContext& ctx);

ZoneSet async_tau_enabled_zone(const AsyncSymbolicState& s,
                               const SymContext& ctx);

/// Points of the elapsed zone that are a-deadlock: no tau now, no permitted
/// delay reaching one. Empty for success states.
ZoneSet async_deadlock_points(const AsyncSymbolicState& s,
                              const SymContext& ctx);

/// Discrete successors from the elapsed zone. Commits that would push a
/// queue beyond `queue_bound` are not generated; `bound_hit` is set instead.
std::vector<AsyncSymbolicTransition> async_symbolic_successors(
    const AsyncSymbolicState& s, const SymContext& ctx,
    std::size_t queue_bound, bool* bound_hit);

}  // namespace tst
