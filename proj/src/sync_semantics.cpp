#include "tst/sync_semantics.hpp"

#include <stdexcept>

namespace tst {

ZoneSet rdy(const TstPtr& p, const ClockUniverse& universe, Owner owner,
            std::int64_t scale) {
  TstPtr t = unfold(p);
  if (t->kind != Tst::Kind::internal_choice) {
    return ZoneSet::universal(universe);
  }
  ZoneSet acc = ZoneSet::empty_set(universe);
  for (const Branch& b : t->branches) {
    acc = zs_join(acc, guard_zones(b.guard, universe, owner, scale));
  }
  return zs_past(acc);
}

IntervalSet rdy_instants(const TstPtr& p, const ClockValuation& nu) {
  TstPtr t = unfold(p);
  if (t->kind != Tst::Kind::internal_choice) return IntervalSet::all();
  IntervalSet acc;
  for (const Branch& b : t->branches) {
    acc = acc.unite(guard_instants(b.guard, nu));
  }
  return acc.down_closure();
}

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

std::vector<std::pair<StepLabel, EndpointConfig>> sync_endpoint_steps(
    const EndpointConfig& c) {
  if (c.queue.size() > 1) {
    throw std::invalid_argument("synchronous configuration needs |queue| <= 1");
  }
  std::vector<std::pair<StepLabel, EndpointConfig>> out;
  TstPtr t = unfold(c.term);
  if (c.queue.size() == 1) {
    // [!]: flush the committed message; the term is left alone.
    out.emplace_back(StepLabel::out(c.queue.front()),
                     EndpointConfig{c.term, {}, c.val});
    return out;
  }
  if (t->kind == Tst::Kind::internal_choice) {
    for (const Branch& b : t->branches) {
      if (!guard_sat(b.guard, c.val)) continue;
      out.emplace_back(
          StepLabel::tau(),
          EndpointConfig{b.cont, {b.action}, apply_resets(c.val, b.resets)});
    }
  } else if (t->kind == Tst::Kind::external_choice) {
    for (const Branch& b : t->branches) {
      if (!guard_sat(b.guard, c.val)) continue;
      out.emplace_back(
          StepLabel::in(b.action),
          EndpointConfig{b.cont, {}, apply_resets(c.val, b.resets)});
    }
  }
  return out;
}

std::optional<EndpointConfig> sync_endpoint_delay(const EndpointConfig& c,
                                                  const Rational& delta) {
  if (delta <= Rational(0)) {
    throw std::invalid_argument("delays are positive");
  }
  if (!c.queue.empty()) return std::nullopt;
  if (!rdy_instants(c.term, c.val).contains(delta)) return std::nullopt;
  return EndpointConfig{c.term, c.queue, val_update(c.val, delta, std::nullopt)};
}

namespace {

template <typename StepsFn>
std::vector<SystemStep> compose_system_steps(const SystemConfig& s,
                                             StepsFn endpoint_steps) {
  std::vector<SystemStep> out;
  for (Actor actor : {Actor::left, Actor::right}) {
    auto mine = endpoint_steps(s.at(actor));
    auto partners = endpoint_steps(s.at(other(actor)));
    for (const auto& [label, next] : mine) {
      if (label.kind == StepLabel::Kind::tau) {
        // [S-(+)]: local commit, the committed action is the queue tail.
        SystemConfig target = s;
        target.at(actor) = next;
        out.push_back(SystemStep{TauKind::commit, actor, next.queue.back(),
                                 std::move(target)});
      } else if (label.kind == StepLabel::Kind::out) {
        // [S-tau]: fuse with a matching input on the other side.
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

}  // namespace

std::vector<SystemStep> sync_system_steps(const SystemConfig& s) {
  return compose_system_steps(
      s, [](const EndpointConfig& c) { return sync_endpoint_steps(c); });
}

DelayInterval sync_allowed_delays(const SystemConfig& s) {
  if (!s.left.queue.empty() || !s.right.queue.empty()) {
    return DelayInterval::none();
  }
  IntervalSet both = rdy_instants(s.left.term, s.left.val)
                         .intersect(rdy_instants(s.right.term, s.right.val));
  if (both.is_empty() || !both.contains(Rational(0))) {
    return DelayInterval::none();
  }
  return to_delay_interval(both);
}

bool is_success(const SystemConfig& s) {
  return s.left.queue.empty() && s.right.queue.empty() &&
         unfold(s.left.term)->kind == Tst::Kind::success &&
         unfold(s.right.term)->kind == Tst::Kind::success;
}

// --- symbolic layer --------------------------------------------------------

SymContext make_sym_context(const TstPtr& p, const TstPtr& q,
                            std::int64_t scale) {
  SymContext ctx;
  ctx.scale = scale;
  std::vector<ClockId> clocks;
  for (const auto& n : term_clocks(p)) clocks.push_back({Owner::left, n});
  for (const auto& n : term_clocks(q)) clocks.push_back({Owner::right, n});
  ctx.universe = ClockUniverse(std::move(clocks));
  auto fill = [&](const TstPtr& t, Owner o) {
    for (const auto& [name, c] : max_constant(t)) {
      ctx.max_consts[ClockId{o, name}] = c * scale;
    }
  };
  fill(p, Owner::left);
  fill(q, Owner::right);
  for (const auto& c : ctx.universe.clocks()) {
    ctx.max_consts.try_emplace(c, 0);
  }
  return ctx;
}

namespace {

Owner loc_owner(Actor a) { return owner_of(a); }

const SymbolicLocation& loc_of(const SymbolicState& s, Actor a) {
  return a == Actor::left ? s.left : s.right;
}

ZoneSet rdy_meet(const SymbolicState& s, const SymContext& ctx) {
  return zs_meet(rdy(s.left.term, ctx.universe, Owner::left, ctx.scale),
                 rdy(s.right.term, ctx.universe, Owner::right, ctx.scale));
}

}  // namespace

ZoneSet sync_elapsed_zone(const SymbolicState& s, const SymContext& ctx) {
  if (s.left.committed || s.right.committed) return s.zone;
  return zs_join(s.zone,
                 zs_meet(zs_future(s.zone, false), rdy_meet(s, ctx)));
}

ZoneSet sync_tau_enabled_zone(const SymbolicState& s, const SymContext& ctx) {
  ZoneSet acc = ZoneSet::empty_set(ctx.universe);
  for (Actor actor : {Actor::left, Actor::right}) {
    const SymbolicLocation& mine = loc_of(s, actor);
    const SymbolicLocation& partner = loc_of(s, other(actor));
    if (!mine.committed && mine.term->kind == Tst::Kind::internal_choice) {
      for (const Branch& b : mine.term->branches) {
        acc = zs_join(acc, guard_zones(b.guard, ctx.universe, loc_owner(actor),
                                       ctx.scale));
      }
    }
    if (mine.committed && !partner.committed &&
        partner.term->kind == Tst::Kind::external_choice) {
      for (const Branch& b : partner.term->branches) {
        if (b.action != *mine.committed) continue;
        acc = zs_join(acc, guard_zones(b.guard, ctx.universe,
                                       loc_owner(other(actor)), ctx.scale));
      }
    }
  }
  return acc;
}

ZoneSet sync_deadlock_points(const SymbolicState& s, const SymContext& ctx) {
  bool success_loc = !s.left.committed && !s.right.committed &&
                     s.left.term->kind == Tst::Kind::success &&
                     s.right.term->kind == Tst::Kind::success;
  if (success_loc) return ZoneSet::empty_set(ctx.universe);
  ZoneSet elapsed = sync_elapsed_zone(s, ctx);
  ZoneSet enabled = sync_tau_enabled_zone(s, ctx);
  ZoneSet reach = enabled;
  if (!s.left.committed && !s.right.committed) {
    reach = zs_join(reach, zs_past(zs_meet(enabled, rdy_meet(s, ctx))));
  }
  return zs_minus(elapsed, reach);
}

namespace {

SymbolicLocation make_loc(const TstPtr& term, std::optional<Action> committed) {
  return SymbolicLocation{unfold(term), std::move(committed)};
}

void push_split(std::vector<SymbolicTransition>& out, TauKind kind, Actor actor,
                const Action& action, SymbolicLocation l, SymbolicLocation r,
                const ZoneSet& zone, const SymContext& ctx) {
  ZoneSet z = ctx.extrapolate ? zs_extrapolate(zone, ctx.max_consts) : zone;
  for (const auto& m : z.members) {
    ZoneSet single{z.universe, {m}};
    out.push_back(SymbolicTransition{
        kind, actor, action, SymbolicState{l, r, std::move(single)}});
  }
}

}  // namespace

std::vector<SymbolicTransition> sync_symbolic_successors(
    const SymbolicState& s, const SymContext& ctx) {
  std::vector<SymbolicTransition> out;
  ZoneSet elapsed = sync_elapsed_zone(s, ctx);
  for (Actor actor : {Actor::left, Actor::right}) {
    const SymbolicLocation& mine = loc_of(s, actor);
    const SymbolicLocation& partner = loc_of(s, other(actor));
    Owner o = loc_owner(actor);
    if (!mine.committed && mine.term->kind == Tst::Kind::internal_choice) {
      for (const Branch& b : mine.term->branches) {
        ZoneSet fired =
            zs_meet(elapsed, guard_zones(b.guard, ctx.universe, o, ctx.scale));
        if (zs_is_empty(fired)) continue;
        fired = zs_reset(fired, owned_resets(b.resets, o));
        SymbolicLocation next = make_loc(b.cont, b.action);
        if (actor == Actor::left) {
          push_split(out, TauKind::commit, actor, b.action, next, s.right,
                     fired, ctx);
        } else {
          push_split(out, TauKind::commit, actor, b.action, s.left, next,
                     fired, ctx);
        }
      }
    }
    if (mine.committed && !partner.committed &&
        partner.term->kind == Tst::Kind::external_choice) {
      Owner po = loc_owner(other(actor));
      for (const Branch& b : partner.term->branches) {
        if (b.action != *mine.committed) continue;
        ZoneSet fired =
            zs_meet(elapsed, guard_zones(b.guard, ctx.universe, po, ctx.scale));
        if (zs_is_empty(fired)) continue;
        fired = zs_reset(fired, owned_resets(b.resets, po));
        SymbolicLocation sender{mine.term, std::nullopt};
        SymbolicLocation receiver = make_loc(b.cont, std::nullopt);
        if (actor == Actor::left) {
          push_split(out, TauKind::sync, actor, b.action, sender, receiver,
                     fired, ctx);
        } else {
          push_split(out, TauKind::sync, actor, b.action, receiver, sender,
                     fired, ctx);
        }
      }
    }
  }
  return out;
}

}  // namespace tst
