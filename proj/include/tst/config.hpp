#pragma once

#include <string>
#include <vector>

#include "tst/clock.hpp"
#include "tst/rational.hpp"
#include "tst/tst.hpp"

namespace tst {

// Message queue; front() is the head (oldest message).
using Queue = std::vector<Action>;

enum class Actor { left, right };

inline const char* actor_name(Actor a) {
  return a == Actor::left ? "left" : "right";
}
inline Owner owner_of(Actor a) {
  return a == Actor::left ? Owner::left : Owner::right;
}
inline Actor other(Actor a) {
  return a == Actor::left ? Actor::right : Actor::left;
}

// (p, rho, nu): term, output queue, clock valuation over the endpoint's
// clocks. Synchronous configurations keep |rho| <= 1.
struct EndpointConfig {
  TstPtr term;
  Queue queue;
  ClockValuation val;
};

// (p, rho, nu) | (q, sigma, eta)
struct SystemConfig {
  EndpointConfig left;
  EndpointConfig right;

  const EndpointConfig& at(Actor a) const {
    return a == Actor::left ? left : right;
  }
  EndpointConfig& at(Actor a) { return a == Actor::left ? left : right; }
};

// alpha ::= tau | delta > 0 | !a | ?a
struct StepLabel {
  enum class Kind { tau, delay, out, in };
  Kind kind = Kind::tau;
  Rational amount{0};  // delay
  Action action;       // out / in

  static StepLabel tau() { return {Kind::tau, Rational(0), ""}; }
  static StepLabel delay(Rational d) { return {Kind::delay, std::move(d), ""}; }
  static StepLabel out(Action a) { return {Kind::out, Rational(0), std::move(a)}; }
  static StepLabel in(Action a) { return {Kind::in, Rational(0), std::move(a)}; }

  bool operator==(const StepLabel&) const = default;
};

// System-level silent step with the bookkeeping traces need: who moved and
// whether the tau was a branch commit or a message handover.
enum class TauKind { commit, sync };

struct SystemStep {
  TauKind kind;
  Actor actor;  // commit: the committing side; sync: the sending side
  Action action;
  SystemConfig target;
};

/// Both endpoints at their terms with empty queues and all clocks zero
/// (clock sets are read off the terms).
SystemConfig initial_system(const TstPtr& p, const TstPtr& q);

/// Endpoint configuration with zeroed clocks and empty queue.
EndpointConfig initial_endpoint(const TstPtr& p, Owner owner);

std::string queue_to_string(const Queue& q);

}  // namespace tst
