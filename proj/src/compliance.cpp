#include "tst/compliance.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tst/parser.hpp"

namespace tst {

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::compliant: return "compliant";
    case VerdictKind::not_compliant: return "not-compliant";
    case VerdictKind::no_deadlock_found_up_to: return "no-deadlock-found";
    case VerdictKind::deadlock: return "deadlock";
  }
  return "?";
}

// --- concrete deadlock predicates -------------------------------------------

namespace {

IntervalSet positive_part(const DelayInterval& d) {
  if (d.empty) return IntervalSet::empty();
  Interval iv;
  iv.lo = Rational(0);
  iv.lo_strict = true;
  if (!d.unbounded) {
    iv.hi = d.bound;
    iv.hi_strict = !d.inclusive;
  }
  return IntervalSet::of(iv);
}

// {delta : some synchronous tau is enabled at s + delta}.
IntervalSet sync_tau_instants(const SystemConfig& s) {
  IntervalSet acc;
  for (Actor actor : {Actor::left, Actor::right}) {
    const EndpointConfig& me = s.at(actor);
    const EndpointConfig& partner = s.at(other(actor));
    TstPtr t = unfold(me.term);
    if (me.queue.empty() && t->kind == Tst::Kind::internal_choice) {
      for (const Branch& b : t->branches) {
        acc = acc.unite(guard_instants(b.guard, me.val));
      }
    }
    if (me.queue.size() == 1 && partner.queue.empty()) {
      TstPtr pt = unfold(partner.term);
      if (pt->kind == Tst::Kind::external_choice) {
        for (const Branch& b : pt->branches) {
          if (b.action != me.queue.front()) continue;
          acc = acc.unite(guard_instants(b.guard, partner.val));
        }
      }
    }
  }
  return acc;
}

IntervalSet async_tau_instants(const SystemConfig& s) {
  IntervalSet acc = sync_instants(s);
  for (Actor actor : {Actor::left, Actor::right}) {
    const EndpointConfig& me = s.at(actor);
    TstPtr t = unfold(me.term);
    if (t->kind != Tst::Kind::internal_choice) continue;
    for (const Branch& b : t->branches) {
      acc = acc.unite(guard_instants(b.guard, me.val));
    }
  }
  return acc;
}

}  // namespace

bool is_s_deadlock(const SystemConfig& s) {
  if (is_success(s)) return false;
  if (!sync_system_steps(s).empty()) return false;
  IntervalSet allowed = positive_part(sync_allowed_delays(s));
  if (allowed.is_empty()) return true;
  return sync_tau_instants(s).intersect(allowed).is_empty();
}

bool is_a_deadlock(const SystemConfig& s) {
  if (is_success(s)) return false;
  if (!async_system_steps(s).empty()) return false;
  IntervalSet allowed = positive_part(async_allowed_delays(s));
  if (allowed.is_empty()) return true;
  return async_tau_instants(s).intersect(allowed).is_empty();
}

// --- remainder / r-compliance ------------------------------------------------

std::optional<EndpointConfig> remainder(const EndpointConfig& c,
                                        const Queue& sigma) {
  EndpointConfig cur = c;
  for (const Action& a : sigma) {
    bool stepped = false;
    for (auto& [label, next] : async_endpoint_steps(cur)) {
      if (label.kind == StepLabel::Kind::in && label.action == a) {
        cur = std::move(next);
        stepped = true;
        break;  // choice actions are pairwise distinct
      }
    }
    if (!stepped) return std::nullopt;
  }
  return cur;
}

bool r_compliant(const EndpointConfig& cl, const EndpointConfig& cr) {
  auto rl = remainder(cl, cr.queue);
  if (!rl) return false;
  auto rr = remainder(cr, cl.queue);
  if (!rr) return false;
  Verdict v = check_sync_compliance_from(rl->term, rl->val, rr->term, rr->val);
  return v.kind == VerdictKind::compliant;
}

// --- shared checker plumbing --------------------------------------------------

namespace {

void require_valid(const TstPtr& p, const char* which) {
  auto errors = validate(p);
  if (errors.empty()) return;
  std::string msg = std::string("invalid ") + which + ": ";
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) msg += "; ";
    msg += errors[i];
  }
  throw std::invalid_argument(msg);
}

std::int64_t scale_of(const ClockValuation& a, const ClockValuation& b) {
  std::int64_t s = 1;
  for (const auto* v : {&a, &b}) {
    for (const auto& [id, r] : *v) s = std::lcm(s, r.denominator());
  }
  return s;
}

SymContext context_for(const TstPtr& p, const ClockValuation& nu,
                       const TstPtr& q, const ClockValuation& eta,
                       bool extrapolate) {
  std::int64_t scale = scale_of(nu, eta);
  SymContext ctx;
  ctx.scale = scale;
  ctx.extrapolate = extrapolate;
  std::vector<ClockId> clocks;
  for (const auto& n : term_clocks(p)) clocks.push_back({Owner::left, n});
  for (const auto& n : term_clocks(q)) clocks.push_back({Owner::right, n});
  for (const auto& [id, r] : nu) clocks.push_back(id);
  for (const auto& [id, r] : eta) clocks.push_back(id);
  ctx.universe = ClockUniverse(std::move(clocks));
  auto fill = [&](const TstPtr& t, Owner o) {
    for (const auto& [name, c] : max_constant(t)) {
      ctx.max_consts[ClockId{o, name}] = c * scale;
    }
  };
  fill(p, Owner::left);
  fill(q, Owner::right);
  for (const auto& c : ctx.universe.clocks()) ctx.max_consts.try_emplace(c, 0);
  return ctx;
}

ZoneSet scaled_point_zone(const SymContext& ctx, const ClockValuation& nu,
                          const ClockValuation& eta) {
  ClockValuation all;
  for (const auto& c : ctx.universe.clocks()) all.emplace(c, Rational(0));
  for (const auto* v : {&nu, &eta}) {
    for (const auto& [id, r] : *v) {
      Rational scaled = r * ctx.scale;
      all[id] = scaled;
    }
  }
  return ZoneSet::point(ctx.universe, all);
}

std::string zone_key(const ZoneSet& z) {
  std::string out;
  for (const auto& m : z.members) {
    for (std::size_t i = 0; i <= z.universe.size(); ++i) {
      for (std::size_t j = 0; j <= z.universe.size(); ++j) {
        const DbmBound& b = m.at(i, j);
        if (b.inf) {
          out += "inf,";
        } else {
          out += std::to_string(b.value);
          out += b.strict ? "<," : "=,";
        }
      }
    }
    out += "|";
  }
  return out;
}

// Scaled full-system valuation of a concrete configuration, for membership
// queries against checker zones.
ClockValuation scaled_val(const SymContext& ctx, const SystemConfig& c) {
  ClockValuation all;
  for (const auto& cid : ctx.universe.clocks()) all.emplace(cid, Rational(0));
  for (const auto* e : {&c.left, &c.right}) {
    for (const auto& [id, r] : e->val) all[id] = r * ctx.scale;
  }
  return all;
}

// {delta >= 0 : scaled(config + delta) in Z}, in concrete time units.
IntervalSet zone_instants(const SymContext& ctx, const SystemConfig& c,
                          const ZoneSet& z) {
  IntervalSet scaled = zs_ray_instants(z, scaled_val(ctx, c));
  if (ctx.scale == 1) return scaled;
  IntervalSet out;
  for (const auto& part : scaled.parts()) {
    Interval iv = part;
    iv.lo /= ctx.scale;
    if (iv.hi) *iv.hi /= ctx.scale;
    out = out.unite(IntervalSet::of(iv));
  }
  return out;
}

Rational pick_least(const IntervalSet& s) {
  if (s.is_empty()) throw std::logic_error("picking from an empty delay set");
  const Interval& first = s.parts().front();
  if (!first.lo_strict) return first.lo;
  if (first.hi) return (first.lo + *first.hi) / 2;
  return first.lo + 1;
}

IntervalSet with_zero(IntervalSet s) {
  return s.unite(IntervalSet::of(Interval{Rational(0), false, Rational(0), false}));
}

struct PathTransition {
  TauKind kind = TauKind::commit;
  Actor actor = Actor::left;
  Action action;
};

// Branch fired by a transition, read off the source configuration.
Branch fired_branch(const SystemConfig& src, const PathTransition& t) {
  Actor side = t.kind == TauKind::commit ? t.actor : other(t.actor);
  TstPtr term = unfold(src.at(side).term);
  for (const Branch& b : term->branches) {
    if (b.action == t.action) return b;
  }
  throw std::logic_error("transition action not found in source term");
}

SystemConfig apply_transition(const SystemConfig& src, const PathTransition& t,
                              Semantics sem) {
  auto steps = sem == Semantics::sync ? sync_system_steps(src)
                                      : async_system_steps(src);
  for (const SystemStep& s : steps) {
    if (s.kind == t.kind && s.actor == t.actor && s.action == t.action) {
      return s.target;
    }
  }
  throw std::logic_error("recorded transition not enabled during extraction");
}

// Forward witness construction: walk the recorded transitions, choosing at
// every step the least delay that stays inside the backward-restricted
// zones, then a final delay into the deadlock set itself.
Trace extract_trace(const SymContext& ctx, Semantics sem,
                    const SystemConfig& initial,
                    const std::vector<PathTransition>& path,
                    const std::vector<ZoneSet>& back_zones,
                    const ZoneSet& deadlock_set) {
  Trace trace;
  trace.semantics = sem;
  trace.initial = initial;
  SystemConfig cur = initial;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const PathTransition& t = path[k];
    Branch b = fired_branch(cur, t);
    Actor guard_side = t.kind == TauKind::commit ? t.actor : other(t.actor);
    ResetSet resets;
    for (const auto& n : b.resets) {
      resets.insert({owner_of(guard_side), n});
    }
    DelayInterval allowed = sem == Semantics::sync ? sync_allowed_delays(cur)
                                                   : async_allowed_delays(cur);
    IntervalSet feasible = with_zero(positive_part(allowed));
    IntervalSet guard_ok = guard_instants(b.guard, cur.at(guard_side).val);
    IntervalSet landing =
        zone_instants(ctx, cur, zs_reset_pre(back_zones[k + 1], resets));
    IntervalSet choices = feasible.intersect(guard_ok).intersect(landing);
    Rational delta = pick_least(choices);
    if (delta > Rational(0)) {
      trace.events.push_back(TraceEvent::delay(delta));
      cur.left.val = val_update(cur.left.val, delta, std::nullopt);
      cur.right.val = val_update(cur.right.val, delta, std::nullopt);
    }
    trace.events.push_back(TraceEvent::tau(t.kind, t.actor, t.action));
    cur = apply_transition(cur, t, sem);
  }
  // Final delay into the deadlock set.
  DelayInterval allowed = sem == Semantics::sync ? sync_allowed_delays(cur)
                                                 : async_allowed_delays(cur);
  IntervalSet feasible = with_zero(positive_part(allowed));
  IntervalSet landing = zone_instants(ctx, cur, deadlock_set);
  Rational delta = pick_least(feasible.intersect(landing));
  if (delta > Rational(0)) {
    trace.events.push_back(TraceEvent::delay(delta));
    cur.left.val = val_update(cur.left.val, delta, std::nullopt);
    cur.right.val = val_update(cur.right.val, delta, std::nullopt);
  }
  bool dead = sem == Semantics::sync ? is_s_deadlock(cur) : is_a_deadlock(cur);
  if (!dead) {
    throw std::logic_error(
        "extracted counterexample does not end in a deadlock");
  }
  return trace;
}

}  // namespace

// --- synchronous checker -------------------------------------------------------

namespace {

struct SyncNode {
  SymbolicState state;
  int parent = -1;
  PathTransition via;
};

ZoneSet sync_pre_elapse(const SymbolicState& s, const SymContext& ctx,
                        const ZoneSet& target) {
  // Points of the state zone that reach `target` by a permitted delay (or
  // immediately).
  if (s.left.committed || s.right.committed) return zs_meet(s.zone, target);
  ZoneSet rdy_both =
      zs_meet(rdy(s.left.term, ctx.universe, Owner::left, ctx.scale),
              rdy(s.right.term, ctx.universe, Owner::right, ctx.scale));
  ZoneSet reachable = zs_join(target, zs_past(zs_meet(target, rdy_both)));
  return zs_meet(s.zone, reachable);
}

std::optional<Verdict> run_sync_exploration(
    const TstPtr& p, const ClockValuation& nu, const TstPtr& q,
    const ClockValuation& eta, const SymContext& ctx,
    const CheckerOptions& opts) {
  std::vector<SyncNode> nodes;
  std::set<std::string> visited;
  SymbolicState root{SymbolicLocation{unfold(p), std::nullopt},
                     SymbolicLocation{unfold(q), std::nullopt},
                     scaled_point_zone(ctx, nu, eta)};
  nodes.push_back(SyncNode{std::move(root)});
  visited.insert(zone_key(nodes[0].state.zone) + render_tst(nodes[0].state.left.term) +
                 "||" + render_tst(nodes[0].state.right.term));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes.size() > opts.state_cap) {
      throw std::runtime_error("synchronous checker exceeded its state cap");
    }
    // Copy out: growing `nodes` below invalidates references.
    SymbolicState state = nodes[i].state;
    ZoneSet dead = sync_deadlock_points(state, ctx);
    if (!zs_is_empty(dead)) {
      // Reconstruct the path and the backward zone restriction.
      std::vector<int> chain;
      for (int at = static_cast<int>(i); at != -1; at = nodes[at].parent) {
        chain.push_back(at);
      }
      std::reverse(chain.begin(), chain.end());
      std::vector<PathTransition> path;
      for (std::size_t k = 1; k < chain.size(); ++k) {
        path.push_back(nodes[chain[k]].via);
      }
      std::vector<ZoneSet> back(chain.size(), ZoneSet::empty_set(ctx.universe));
      back[chain.size() - 1] =
          sync_pre_elapse(nodes[chain.back()].state, ctx, dead);
      bool feasible = !zs_is_empty(back[chain.size() - 1]);
      for (std::size_t k = chain.size(); feasible && k-- > 1;) {
        const SyncNode& child = nodes[chain[k]];
        const SymbolicState& src = nodes[chain[k - 1]].state;
        Branch b = fired_branch(
            SystemConfig{
                EndpointConfig{src.left.term, {}, {}},
                EndpointConfig{src.right.term, {}, {}}},
            child.via);
        Actor guard_side = child.via.kind == TauKind::commit
                               ? child.via.actor
                               : other(child.via.actor);
        Owner o = owner_of(guard_side);
        ResetSet resets;
        for (const auto& n : b.resets) resets.insert({o, n});
        ZoneSet pre = zs_meet(
            zs_meet(sync_elapsed_zone(src, ctx),
                    guard_zones(b.guard, ctx.universe, o, ctx.scale)),
            zs_reset_pre(back[k], resets));
        back[k - 1] = sync_pre_elapse(src, ctx, pre);
        feasible = !zs_is_empty(back[k - 1]);
      }
      if (!feasible) return std::nullopt;  // extrapolation artifact
      SystemConfig initial{EndpointConfig{p, {}, nu},
                           EndpointConfig{q, {}, eta}};
      Verdict v;
      v.kind = VerdictKind::not_compliant;
      v.counterexample = extract_trace(ctx, Semantics::sync, initial, path,
                                       back, dead);
      return v;
    }
    for (SymbolicTransition& t : sync_symbolic_successors(state, ctx)) {
      std::string key = zone_key(t.target.zone) +
                        render_tst(t.target.left.term) +
                        (t.target.left.committed ? "!" + *t.target.left.committed
                                                 : "") +
                        "||" + render_tst(t.target.right.term) +
                        (t.target.right.committed
                             ? "!" + *t.target.right.committed
                             : "");
      if (!visited.insert(key).second) continue;
      nodes.push_back(SyncNode{std::move(t.target), static_cast<int>(i),
                               PathTransition{t.kind, t.actor, t.action}});
    }
  }
  Verdict v;
  v.kind = VerdictKind::compliant;
  return v;
}

}  // namespace

Verdict check_sync_compliance_opt(const TstPtr& p, const ClockValuation& nu,
                                  const TstPtr& q, const ClockValuation& eta,
                                  const CheckerOptions& opts) {
  require_valid(p, "left term");
  require_valid(q, "right term");
  SymContext ctx = context_for(p, nu, q, eta, opts.extrapolate);
  if (auto v = run_sync_exploration(p, nu, q, eta, ctx, opts)) return *v;
  // A deadlock point vanished under exact backward restriction: the
  // extrapolated zones were too coarse. Decide exactly.
  CheckerOptions exact = opts;
  exact.extrapolate = false;
  SymContext exact_ctx = context_for(p, nu, q, eta, false);
  if (auto v = run_sync_exploration(p, nu, q, eta, exact_ctx, exact)) return *v;
  throw std::runtime_error("witness extraction failed without extrapolation");
}

Verdict check_sync_compliance_from(const TstPtr& p, const ClockValuation& nu,
                                   const TstPtr& q, const ClockValuation& eta) {
  return check_sync_compliance_opt(p, nu, q, eta, CheckerOptions{});
}

Verdict check_sync_compliance(const TstPtr& p, const TstPtr& q) {
  SystemConfig init = initial_system(p, q);
  return check_sync_compliance_from(p, init.left.val, q, init.right.val);
}

// --- bounded asynchronous checker ------------------------------------------------

namespace {

struct AsyncNode {
  AsyncSymbolicState state;
  int parent = -1;
  PathTransition via;
};

ZoneSet async_pre_elapse(const AsyncSymbolicState& s, const SymContext& ctx,
                         const ZoneSet& target) {
  ZoneSet rdy_both =
      zs_meet(rdy(s.left_term, ctx.universe, Owner::left, ctx.scale),
              rdy(s.right_term, ctx.universe, Owner::right, ctx.scale));
  ZoneSet blocked = async_sync_enabled_zone(s, ctx);
  ZoneSet reachable =
      zs_join(target, urgent_past(zs_meet(target, rdy_both), blocked));
  return zs_meet(s.zone, reachable);
}

std::string async_key(const AsyncSymbolicState& s) {
  return zone_key(s.zone) + render_tst(s.left_term) + "#" +
         queue_to_string(s.left_queue) + "||" + render_tst(s.right_term) +
         "#" + queue_to_string(s.right_queue);
}

std::optional<Verdict> run_async_exploration(const TstPtr& p, const TstPtr& q,
                                             std::size_t queue_bound,
                                             std::size_t depth,
                                             const SymContext& ctx,
                                             const CheckerOptions& opts) {
  std::vector<AsyncNode> nodes;
  std::set<std::string> visited;
  ClockValuation zero_l, zero_r;
  AsyncSymbolicState root{unfold(p), {}, unfold(q), {},
                          scaled_point_zone(ctx, zero_l, zero_r)};
  nodes.push_back(AsyncNode{std::move(root)});
  visited.insert(async_key(nodes[0].state));
  Verdict base;
  base.kind = VerdictKind::no_deadlock_found_up_to;
  base.queue_bound = queue_bound;
  base.depth = depth;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i >= depth || nodes.size() > opts.state_cap) {
      base.depth_hit = true;
      return base;
    }
    AsyncSymbolicState state = nodes[i].state;
    ZoneSet dead = async_deadlock_points(state, ctx);
    if (!zs_is_empty(dead)) {
      std::vector<int> chain;
      for (int at = static_cast<int>(i); at != -1; at = nodes[at].parent) {
        chain.push_back(at);
      }
      std::reverse(chain.begin(), chain.end());
      std::vector<PathTransition> path;
      for (std::size_t k = 1; k < chain.size(); ++k) {
        path.push_back(nodes[chain[k]].via);
      }
      std::vector<ZoneSet> back(chain.size(), ZoneSet::empty_set(ctx.universe));
      back[chain.size() - 1] =
          async_pre_elapse(nodes[chain.back()].state, ctx, dead);
      bool feasible = !zs_is_empty(back[chain.size() - 1]);
      for (std::size_t k = chain.size(); feasible && k-- > 1;) {
        const AsyncNode& child = nodes[chain[k]];
        const AsyncSymbolicState& src = nodes[chain[k - 1]].state;
        Branch b = fired_branch(
            SystemConfig{EndpointConfig{src.left_term, src.left_queue, {}},
                         EndpointConfig{src.right_term, src.right_queue, {}}},
            child.via);
        Actor guard_side = child.via.kind == TauKind::commit
                               ? child.via.actor
                               : other(child.via.actor);
        Owner o = owner_of(guard_side);
        ResetSet resets;
        for (const auto& n : b.resets) resets.insert({o, n});
        ZoneSet pre = zs_meet(
            zs_meet(async_elapsed_zone(src, ctx),
                    guard_zones(b.guard, ctx.universe, o, ctx.scale)),
            zs_reset_pre(back[k], resets));
        back[k - 1] = async_pre_elapse(src, ctx, pre);
        feasible = !zs_is_empty(back[k - 1]);
      }
      if (!feasible) return std::nullopt;
      Verdict v;
      v.kind = VerdictKind::deadlock;
      v.queue_bound = queue_bound;
      v.depth = depth;
      v.counterexample = extract_trace(ctx, Semantics::async,
                                       initial_system(p, q), path, back, dead);
      return v;
    }
    bool hit = false;
    for (AsyncSymbolicTransition& t :
         async_symbolic_successors(state, ctx, queue_bound, &hit)) {
      std::string key = async_key(t.target);
      if (!visited.insert(key).second) continue;
      nodes.push_back(AsyncNode{std::move(t.target), static_cast<int>(i),
                                PathTransition{t.kind, t.actor, t.action}});
    }
    base.bound_hit = base.bound_hit || hit;
  }
  return base;
}

}  // namespace

Verdict check_async_deadlock_bounded_opt(const TstPtr& p, const TstPtr& q,
                                         std::size_t queue_bound,
                                         std::size_t depth,
                                         const CheckerOptions& opts) {
  require_valid(p, "left term");
  require_valid(q, "right term");
  if (queue_bound < 1) {
    throw std::invalid_argument("queue bound must be at least 1");
  }
  SymContext ctx = make_sym_context(p, q);
  ctx.extrapolate = opts.extrapolate;
  if (auto v = run_async_exploration(p, q, queue_bound, depth, ctx, opts)) {
    return *v;
  }
  SymContext exact_ctx = make_sym_context(p, q);
  exact_ctx.extrapolate = false;
  CheckerOptions exact = opts;
  exact.extrapolate = false;
  if (auto v =
          run_async_exploration(p, q, queue_bound, depth * 4, exact_ctx, exact)) {
    return *v;
  }
  throw std::runtime_error("witness extraction failed without extrapolation");
}

Verdict check_async_deadlock_bounded(const TstPtr& p, const TstPtr& q,
                                     std::size_t queue_bound,
                                     std::size_t depth) {
  return check_async_deadlock_bounded_opt(p, q, queue_bound, depth,
                                          CheckerOptions{});
}

}  // namespace tst
