#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tst/async_semantics.hpp"
#include "tst/config.hpp"
#include "tst/sync_semantics.hpp"

namespace tst {

enum class Semantics { sync, async };

struct TraceEvent {
  enum class Type { delay, tau };
  Type type = Type::tau;
  Rational amount{0};               // delay
  TauKind tau_kind = TauKind::commit;
  Actor actor = Actor::left;        // commit: committer; sync: sender
  Action action;

  static TraceEvent delay(Rational d) {
    TraceEvent e;
    e.type = Type::delay;
    e.amount = std::move(d);
    return e;
  }
  static TraceEvent tau(TauKind k, Actor a, Action act) {
    TraceEvent e;
    e.tau_kind = k;
    e.actor = a;
    e.action = std::move(act);
    return e;
  }
};

// Replayable timed run: every event is enabled at its position under the
// recorded semantics.
struct Trace {
  Semantics semantics = Semantics::sync;
  SystemConfig initial;
  std::vector<TraceEvent> events;
};

enum class VerdictKind {
  compliant,
  not_compliant,
  no_deadlock_found_up_to,
  deadlock,
};

struct Verdict {
  VerdictKind kind = VerdictKind::compliant;
  std::optional<Trace> counterexample;
  std::size_t queue_bound = 0;  // bounded async search parameters
  std::size_t depth = 0;
  bool bound_hit = false;  // some commit was pruned by the queue bound
  bool depth_hit = false;  // the state budget ran out first

  bool inconclusive() const {
    return kind == VerdictKind::no_deadlock_found_up_to &&
           (bound_hit || depth_hit);
  }
};

const char* verdict_name(VerdictKind k);

// --- concrete deadlock predicates (interval route, exact) ------------------

/// Not success, no tau now, and no permitted delay reaches a tau. Decided
/// exactly: tau-enabling instants along the delay axis are rational-endpoint
/// intervals.
bool is_s_deadlock(const SystemConfig& s);

/// Asynchronous variant: async steps and urgency-truncated delays.
bool is_a_deadlock(const SystemConfig& s);

// --- remainder and r-compliance (Sec. 4 machinery) --------------------------

/// Consumes sigma head-first with zero-delay inputs. Undefined when some
/// message is not immediately receivable.
std::optional<EndpointConfig> remainder(const EndpointConfig& c,
                                        const Queue& sigma);

/// Both remainders defined and the residual (term, valuation) pairs are
/// synchronously compliant from their current clocks.
bool r_compliant(const EndpointConfig& cl, const EndpointConfig& cr);

// --- checkers ----------------------------------------------------------------

/// Decides synchronous compliance by zone-graph reachability with
/// maximal-constant extrapolation. NotCompliant verdicts carry a replayable
/// counterexample ending in an s-deadlock.
Verdict check_sync_compliance(const TstPtr& p, const TstPtr& q);

/// Generalized entry point: compliance from arbitrary initial valuations
/// (r-compliance needs residual clocks). Fractional values are handled by
/// scaling time.
Verdict check_sync_compliance_from(const TstPtr& p, const ClockValuation& nu,
                                   const TstPtr& q, const ClockValuation& eta);

/// Bounded asynchronous deadlock search: queues capped at `queue_bound`
/// (pruned commits set bound_hit), at most `depth` symbolic states.
Verdict check_async_deadlock_bounded(const TstPtr& p, const TstPtr& q,
                                     std::size_t queue_bound,
                                     std::size_t depth);

/// Tuning knob shared by the checkers; extrapolation stays on everywhere
/// except in the property suite that compares both modes.
struct CheckerOptions {
  bool extrapolate = true;
  std::size_t state_cap = 200000;
};

Verdict check_sync_compliance_opt(const TstPtr& p, const ClockValuation& nu,
                                  const TstPtr& q, const ClockValuation& eta,
                                  const CheckerOptions& opts);
Verdict check_async_deadlock_bounded_opt(const TstPtr& p, const TstPtr& q,
                                         std::size_t queue_bound,
                                         std::size_t depth,
                                         const CheckerOptions& opts);

}  // namespace tst
