#include "tst/async_semantics.hpp"

#include <stdexcept>

namespace tst {

namespace {

ResetSet owned_resets(const std::set<std::string>& names, Owner owner) {
  ResetSet out;
  for (const auto& n : names) out.insert({owner, n});
  return out;
}

Owner val_owner(const ClockValuation& v) {
  return v.empty() ? Owner::left : v.begin()->first.owner;
}

ClockValuation apply_resets(const ClockValuation& v,
                            const std::set<std::string>& names) {
  return val_update(v, std::nullopt, owned_resets(names, val_owner(v)));
}

}  // namespace

std::vector<std::pair<StepLabel, EndpointConfig>> async_endpoint_steps(
    const EndpointConfig& c) {
  std::vector<std::pair<StepLabel, EndpointConfig>> out;
  TstPtr t = unfold(c.term);
  if (!c.queue.empty()) {
    // [!]: the head of the queue can be consumed by the partner.
    Queue rest(c.queue.begin() + 1, c.queue.end());
    out.emplace_back(StepLabel::out(c.queue.front()),
                     EndpointConfig{c.term, std::move(rest), c.val});
  }
  if (t->kind == Tst::Kind::internal_choice) {
    for (const Branch& b : t->branches) {
      if (!guard_sat(b.guard, c.val)) continue;
      Queue appended = c.queue;
      appended.push_back(b.action);
      out.emplace_back(
          StepLabel::tau(),
          EndpointConfig{b.cont, std::move(appended), apply_resets(c.val, b.resets)});
    }
  } else if (t->kind == Tst::Kind::external_choice) {
    for (const Branch& b : t->branches) {
      if (!guard_sat(b.guard, c.val)) continue;
      out.emplace_back(
          StepLabel::in(b.action),
          EndpointConfig{b.cont, c.queue, apply_resets(c.val, b.resets)});
    }
  }
  return out;
}

std::optional<EndpointConfig> async_endpoint_delay(const EndpointConfig& c,
                                                   const Rational& delta) {
  if (delta <= Rational(0)) {
    throw std::invalid_argument("delays are positive");
  }
  if (!rdy_instants(c.term, c.val).contains(delta)) return std::nullopt;
  return EndpointConfig{c.term, c.queue, val_update(c.val, delta, std::nullopt)};
}

IntervalSet sync_instants(const SystemConfig& s) {
  IntervalSet acc;
  for (Actor sender : {Actor::left, Actor::right}) {
    const EndpointConfig& snd = s.at(sender);
    const EndpointConfig& rcv = s.at(other(sender));
    if (snd.queue.empty()) continue;
    const Action& head = snd.queue.front();
    TstPtr rt = unfold(rcv.term);
    if (rt->kind != Tst::Kind::external_choice) continue;
    for (const Branch& b : rt->branches) {
      if (b.action != head) continue;
      acc = acc.unite(guard_instants(b.guard, rcv.val));
    }
  }
  return acc;
}

bool delta_sync(const SystemConfig& s, const Rational& delta) {
  if (delta < Rational(0)) {
    throw std::invalid_argument("delta-sync probes need delta >= 0");
  }
  return sync_instants(s).contains(delta);
}

DelayInterval async_allowed_delays(const SystemConfig& s) {
  IntervalSet feasible = rdy_instants(s.left.term, s.left.val)
                             .intersect(rdy_instants(s.right.term, s.right.val));
  if (feasible.is_empty() || !feasible.contains(Rational(0))) {
    return DelayInterval::none();
  }
  // Urgency: delta is allowed only when no delta' < delta is a sync
  // instant; this truncates at the infimum, inclusive whether or not the
  // infimum itself synchronises.
  if (auto first = sync_instants(s).infimum()) {
    if (first->first == Rational(0)) return DelayInterval::none();
    Interval cap{Rational(0), false, first->first, false};
    feasible = feasible.intersect(IntervalSet::of(cap));
  }
  return to_delay_interval(feasible);
}

std::vector<SystemStep> async_system_steps(const SystemConfig& s) {
  std::vector<SystemStep> out;
  for (Actor actor : {Actor::left, Actor::right}) {
    auto mine = async_endpoint_steps(s.at(actor));
    auto partners = async_endpoint_steps(s.at(other(actor)));
    for (const auto& [label, next] : mine) {
      if (label.kind == StepLabel::Kind::tau) {
        SystemConfig target = s;
        target.at(actor) = next;
        out.push_back(SystemStep{TauKind::commit, actor, next.queue.back(),
                                 std::move(target)});
      } else if (label.kind == StepLabel::Kind::out) {
        for (const auto& [plabel, pnext] : partners) {
          if (plabel.kind != StepLabel::Kind::in ||
              plabel.action != label.action) {
            continue;
          }
          SystemConfig target = s;
          target.at(actor) = next;
          target.at(other(actor)) = pnext;
          out.push_back(
              SystemStep{TauKind::sync, actor, label.action, std::move(target)});
        }
      }
    }
  }
  return out;
}

// --- bounded symbolic layer -------------------------------------------------

namespace {

const TstPtr& term_of(const AsyncSymbolicState& s, Actor a) {
  return a == Actor::left ? s.left_term : s.right_term;
}
const Queue& queue_of(const AsyncSymbolicState& s, Actor a) {
  return a == Actor::left ? s.left_queue : s.right_queue;
}

ZoneSet async_rdy_meet(const AsyncSymbolicState& s, const SymContext& ctx) {
  return zs_meet(rdy(s.left_term, ctx.universe, Owner::left, ctx.scale),
                 rdy(s.right_term, ctx.universe, Owner::right, ctx.scale));
}

}  // namespace

ZoneSet async_sync_enabled_zone(const AsyncSymbolicState& s,
                                const SymContext& ctx) {
  ZoneSet acc = ZoneSet::empty_set(ctx.universe);
  for (Actor sender : {Actor::left, Actor::right}) {
    const Queue& q = queue_of(s, sender);
    if (q.empty()) continue;
    const TstPtr& rt = term_of(s, other(sender));
    if (rt->kind != Tst::Kind::external_choice) continue;
    for (const Branch& b : rt->branches) {
      if (b.action != q.front()) continue;
      acc = zs_join(acc, guard_zones(b.guard, ctx.universe,
                                     owner_of(other(sender)), ctx.scale));
    }
  }
  return acc;
}

ZoneSet async_elapsed_zone(const AsyncSymbolicState& s, const SymContext& ctx) {
  ZoneSet blocked = async_sync_enabled_zone(s, ctx);
  return zs_join(s.zone, zs_meet(urgent_elapse(s.zone, blocked),
                                 async_rdy_meet(s, ctx)));
}

ZoneSet async_tau_enabled_zone(const AsyncSymbolicState& s,
                               const SymContext& ctx) {
  ZoneSet acc = async_sync_enabled_zone(s, ctx);
  for (Actor actor : {Actor::left, Actor::right}) {
    const TstPtr& t = term_of(s, actor);
    if (t->kind != Tst::Kind::internal_choice) continue;
    for (const Branch& b : t->branches) {
      acc = zs_join(
          acc, guard_zones(b.guard, ctx.universe, owner_of(actor), ctx.scale));
    }
  }
  return acc;
}

ZoneSet async_deadlock_points(const AsyncSymbolicState& s,
                              const SymContext& ctx) {
  bool success_loc = s.left_queue.empty() && s.right_queue.empty() &&
                     s.left_term->kind == Tst::Kind::success &&
                     s.right_term->kind == Tst::Kind::success;
  if (success_loc) return ZoneSet::empty_set(ctx.universe);
  ZoneSet elapsed = async_elapsed_zone(s, ctx);
  ZoneSet enabled = async_tau_enabled_zone(s, ctx);
  ZoneSet blocked = async_sync_enabled_zone(s, ctx);
  ZoneSet reach = zs_join(
      enabled,
      urgent_past(zs_meet(enabled, async_rdy_meet(s, ctx)), blocked));
  return zs_minus(elapsed, reach);
}

std::vector<AsyncSymbolicTransition> async_symbolic_successors(
    const AsyncSymbolicState& s, const SymContext& ctx,
    std::size_t queue_bound, bool* bound_hit) {
  std::vector<AsyncSymbolicTransition> out;
  ZoneSet elapsed = async_elapsed_zone(s, ctx);
  auto push = [&](TauKind kind, Actor actor, const Action& action,
                  AsyncSymbolicState next, const ZoneSet& fired) {
    ZoneSet z = ctx.extrapolate ? zs_extrapolate(fired, ctx.max_consts) : fired;
    for (const auto& m : z.members) {
      AsyncSymbolicState st = next;
      st.zone = ZoneSet{z.universe, {m}};
      out.push_back(AsyncSymbolicTransition{kind, actor, action, std::move(st)});
    }
  };
  for (Actor actor : {Actor::left, Actor::right}) {
    const TstPtr& t = term_of(s, actor);
    const Queue& q = queue_of(s, actor);
    Owner o = owner_of(actor);
    if (t->kind == Tst::Kind::internal_choice) {
      for (const Branch& b : t->branches) {
        ZoneSet fired =
            zs_meet(elapsed, guard_zones(b.guard, ctx.universe, o, ctx.scale));
        if (zs_is_empty(fired)) continue;
        if (q.size() >= queue_bound) {
          // The commit exists concretely; only its exploration is cut off.
          if (bound_hit) *bound_hit = true;
          continue;
        }
        fired = zs_reset(fired, owned_resets(b.resets, o));
        AsyncSymbolicState next = s;
        (actor == Actor::left ? next.left_term : next.right_term) =
            unfold(b.cont);
        (actor == Actor::left ? next.left_queue : next.right_queue)
            .push_back(b.action);
        push(TauKind::commit, actor, b.action, std::move(next), fired);
      }
    }
    // Message handover: head of my queue into the partner's external choice.
    if (!q.empty()) {
      const TstPtr& rt = term_of(s, other(actor));
      if (rt->kind == Tst::Kind::external_choice) {
        Owner po = owner_of(other(actor));
        for (const Branch& b : rt->branches) {
          if (b.action != q.front()) continue;
          ZoneSet fired = zs_meet(
              elapsed, guard_zones(b.guard, ctx.universe, po, ctx.scale));
          if (zs_is_empty(fired)) continue;
          fired = zs_reset(fired, owned_resets(b.resets, po));
          AsyncSymbolicState next = s;
          Queue& sq = (actor == Actor::left ? next.left_queue : next.right_queue);
          sq.erase(sq.begin());
          (actor == Actor::left ? next.right_term : next.left_term) =
              unfold(b.cont);
          push(TauKind::sync, actor, b.action, std::move(next), fired);
        }
      }
    }
  }
  return out;
}

}  // namespace tst
