#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grid_oracle.hpp"
#include "tst/async_semantics.hpp"
#include "tst/parser.hpp"
#include "tst/sync_semantics.hpp"

using namespace tst;
using namespace tst::testing;

namespace {

// Example committed-choice: p commits to !a at any time or !b from 2 on;
// q waits for b from 5 on.
const char* kCommitP = "!a (+) !b{t>=2}";
const char* kCommitQ = "?b{t>=5}";

// Example as-semantics: two early sends against two late receives.
const char* kAsyncP = "!a{t<=2}.!b{t<=3}";
const char* kAsyncQ = "?a{t>=4}.?b{t>=5}";
const char* kAsyncQStrict = "?a{t>4}.?b{t>=5}";

SystemConfig sys(const char* p, const char* q) {
  return initial_system(parse_tst(p), parse_tst(q));
}

SystemConfig advance(SystemConfig s, const Rational& d) {
  s.left.val = val_update(s.left.val, d, std::nullopt);
  s.right.val = val_update(s.right.val, d, std::nullopt);
  return s;
}

bool has_step(const std::vector<SystemStep>& steps, TauKind k, Actor a,
              const std::string& action) {
  for (const auto& s : steps) {
    if (s.kind == k && s.actor == a && s.action == action) return true;
  }
  return false;
}

ZoneSet origin_zone(const SymContext& ctx) {
  ClockValuation v;
  for (const auto& c : ctx.universe.clocks()) v.emplace(c, Rational(0));
  return ZoneSet::point(ctx.universe, v);
}

}  // namespace

TEST_CASE("rdy: external and success are universal, internal is a past") {
  ClockValuation nu = val_zero({{Owner::left, "t"}});
  CHECK_EQ(rdy_instants(parse_tst("?b{t>=5}"), nu), IntervalSet::all());
  CHECK_EQ(rdy_instants(t_success(), nu), IntervalSet::all());

  // rdy(!a{t<=2} (+) !b{2<=t<=3}) = past of the union = [0,3].
  TstPtr p = parse_tst("!a{t<=2} (+) !b{t>=2 && t<=3}");
  IntervalSet r = rdy_instants(p, nu);
  CHECK(r.contains(Rational(3)));
  CHECK_FALSE(r.contains(Rational(13, 4)));
  CHECK_EQ(r.supremum()->first, Rational(3));
  CHECK(r.supremum()->second);

  // rdy(rec X . !a{t<=2}.X) = [0,2] via one unfolding.
  IntervalSet rr = rdy_instants(parse_tst("rec X . !a{t<=2}.X"), nu);
  CHECK_EQ(rr.supremum()->first, Rational(2));

  // Symbolic rdy agrees with the interval route on the grid.
  ClockUniverse u({{Owner::left, "t"}});
  ZoneSet rz = rdy(p, u, Owner::left);
  for (const auto& point : grid_points(u, 4)) {
    IntervalSet at = rdy_instants(p, point);
    CHECK_EQ(zs_member(rz, point), at.contains(Rational(0)));
  }
}

TEST_CASE("sync_endpoint_steps: commits, flush, inputs") {
  SystemConfig s = sys(kCommitP, kCommitQ);

  // At t=7 both branches of p are enabled: two commits.
  EndpointConfig p7{s.left.term, {}, val_update(s.left.val, Rational(7), {})};
  auto steps = sync_endpoint_steps(p7);
  REQUIRE_EQ(steps.size(), 2);
  for (const auto& [label, next] : steps) {
    CHECK_EQ(label.kind, StepLabel::Kind::tau);
    REQUIRE_EQ(next.queue.size(), 1);
    CHECK_EQ(next.term->kind, Tst::Kind::success);
  }

  // At t=0 the guard t>=2 blocks the b-commit.
  auto steps0 = sync_endpoint_steps(s.left);
  REQUIRE_EQ(steps0.size(), 1);
  CHECK_EQ(steps0[0].second.queue.front(), "a");

  // Committed endpoint only flushes.
  EndpointConfig committed{t_success(), {"b"}, s.left.val};
  auto flush = sync_endpoint_steps(committed);
  REQUIRE_EQ(flush.size(), 1);
  CHECK_EQ(flush[0].first.kind, StepLabel::Kind::out);
  CHECK_EQ(flush[0].first.action, "b");
  CHECK(flush[0].second.queue.empty());

  // ?b{t>=5} at t=3: no input enabled.
  EndpointConfig q3{s.right.term, {}, val_update(s.right.val, Rational(3), {})};
  CHECK(sync_endpoint_steps(q3).empty());

  EndpointConfig twoQueued{t_success(), {"a", "b"}, s.left.val};
  CHECK_THROWS_AS(sync_endpoint_steps(twoQueued), std::invalid_argument);
}

TEST_CASE("sync_endpoint_delay") {
  SystemConfig s = sys(kCommitP, kCommitQ);
  CHECK(sync_endpoint_delay(s.right, Rational(7)).has_value());

  EndpointConfig committed{t_success(), {"a"}, s.left.val};
  CHECK_FALSE(sync_endpoint_delay(committed, Rational(1)).has_value());

  CHECK(sync_endpoint_delay(s.left, Rational(100)).has_value());  // rdy universal
  CHECK_THROWS_AS(sync_endpoint_delay(s.left, Rational(0)), std::invalid_argument);

  // rdy-limited delay: !a{t<=2}.!b{t<=3} may not delay past 2.
  SystemConfig a = sys(kAsyncP, kAsyncQ);
  CHECK(sync_endpoint_delay(a.left, Rational(2)).has_value());
  CHECK_FALSE(sync_endpoint_delay(a.left, Rational(9, 4)).has_value());
}

TEST_CASE("sync_system_steps: committed-choice reductions") {
  SystemConfig s = sys(kCommitP, kCommitQ);

  // Reduction (0): delay 7, commit b, hand b over.
  SystemConfig at7 = advance(s, Rational(7));
  auto steps7 = sync_system_steps(at7);
  CHECK(has_step(steps7, TauKind::commit, Actor::left, "a"));
  CHECK(has_step(steps7, TauKind::commit, Actor::left, "b"));
  CHECK_EQ(steps7.size(), 2);

  SystemConfig committedB = at7;
  committedB.left = EndpointConfig{t_success(), {"b"}, at7.left.val};
  auto fuse = sync_system_steps(committedB);
  REQUIRE_EQ(fuse.size(), 1);
  CHECK_EQ(fuse[0].kind, TauKind::sync);
  CHECK_EQ(fuse[0].actor, Actor::left);
  CHECK(is_success(fuse[0].target));

  // Reduction (1): committed to a, no synchronisation possible.
  SystemConfig committedA = at7;
  committedA.left = EndpointConfig{t_success(), {"a"}, at7.left.val};
  CHECK(sync_system_steps(committedA).empty());

  // Reduction (2): committed to b at 3, receiver's window not yet open.
  SystemConfig at3 = advance(s, Rational(3));
  at3.left = EndpointConfig{t_success(), {"b"}, at3.left.val};
  CHECK(sync_system_steps(at3).empty());
}

TEST_CASE("sync_allowed_delays") {
  SystemConfig s = sys(kCommitP, kCommitQ);
  CHECK_EQ(sync_allowed_delays(s), DelayInterval::all());

  SystemConfig committed = s;
  committed.left.queue = {"a"};
  CHECK_EQ(sync_allowed_delays(committed), DelayInterval::none());

  SystemConfig a = sys(kAsyncP, kAsyncQ);
  DelayInterval d = sync_allowed_delays(a);
  CHECK_EQ(d, DelayInterval::up_to(Rational(2), true));

  // Delay decomposition: an allowed delay splits into allowed halves.
  for (std::int64_t num = 1; num <= 8; ++num) {
    Rational delta(num, 4);
    if (!d.contains(delta)) continue;
    Rational half = delta / 2;
    CHECK(d.contains(half));
    SystemConfig mid = advance(a, half);
    CHECK(sync_allowed_delays(mid).contains(delta - half));
  }
}

TEST_CASE("is_success") {
  SystemConfig ok = sys("1", "1");
  CHECK(is_success(ok));
  SystemConfig q = ok;
  q.left.queue = {"a"};
  CHECK_FALSE(is_success(q));
  CHECK_FALSE(is_success(sys(kCommitP, "1")));
  CHECK(is_success(sys("rec X . !a.X", "1")) == false);
}

TEST_CASE("async_endpoint_steps: appends, head pop, inputs") {
  SystemConfig s = sys(kAsyncP, kAsyncQ);

  auto first = async_endpoint_steps(s.left);
  REQUIRE_EQ(first.size(), 1);
  CHECK_EQ(first[0].first.kind, StepLabel::Kind::tau);
  CHECK_EQ(first[0].second.queue, Queue{"a"});

  auto second = async_endpoint_steps(first[0].second);
  // !b{t<=3} with queue [a]: pop the head or commit b.
  REQUIRE_EQ(second.size(), 2);
  CHECK_EQ(second[0].first.kind, StepLabel::Kind::out);
  CHECK_EQ(second[0].first.action, "a");
  CHECK_EQ(second[1].first.kind, StepLabel::Kind::tau);
  CHECK_EQ(second[1].second.queue, (Queue{"a", "b"}));

  EndpointConfig done{t_success(), {"a", "b"}, s.left.val};
  auto popOnly = async_endpoint_steps(done);
  REQUIRE_EQ(popOnly.size(), 1);
  CHECK_EQ(popOnly[0].first.action, "a");
  CHECK_EQ(popOnly[0].second.queue, Queue{"b"});

  EndpointConfig recv{s.right.term, {}, val_update(s.right.val, Rational(4), {})};
  auto ins = async_endpoint_steps(recv);
  REQUIRE_EQ(ins.size(), 1);
  CHECK_EQ(ins[0].first.kind, StepLabel::Kind::in);
  CHECK_EQ(ins[0].first.action, "a");
}

TEST_CASE("async_endpoint_delay ignores the queue") {
  SystemConfig s = sys(kAsyncP, kAsyncQ);
  EndpointConfig done{t_success(), {"a", "b"}, s.left.val};
  CHECK(async_endpoint_delay(done, Rational(4)).has_value());

  EndpointConfig pending{parse_tst("!b{t<=3}"), {"a"}, s.left.val};
  CHECK_FALSE(async_endpoint_delay(pending, Rational(5)).has_value());
  CHECK(async_endpoint_delay(pending, Rational(3)).has_value());
  CHECK_THROWS_AS(async_endpoint_delay(pending, Rational(0)),
                  std::invalid_argument);
}

namespace {

SystemConfig after_both_sends(const char* qtext) {
  SystemConfig s = sys(kAsyncP, qtext);
  s.left = EndpointConfig{t_success(), {"a", "b"}, s.left.val};
  return s;
}

}  // namespace

TEST_CASE("delta_sync") {
  SystemConfig s = after_both_sends(kAsyncQ);
  CHECK(delta_sync(s, Rational(4)));
  CHECK_FALSE(delta_sync(s, Rational(3)));
  CHECK(delta_sync(s, Rational(9, 2)));

  SystemConfig both_waiting = sys(kAsyncQ, kAsyncQ);
  for (std::int64_t k = 0; k <= 24; ++k) {
    CHECK_FALSE(delta_sync(both_waiting, Rational(k, 4)));
  }
  CHECK_THROWS_AS(delta_sync(s, Rational(-1)), std::invalid_argument);
}

TEST_CASE("async_allowed_delays: urgency cutoffs") {
  CHECK_EQ(async_allowed_delays(after_both_sends(kAsyncQ)),
           DelayInterval::up_to(Rational(4), true));
  // Strict receiver guard: same delays, but no input fires at 4.
  SystemConfig strict = after_both_sends(kAsyncQStrict);
  CHECK_EQ(async_allowed_delays(strict), DelayInterval::up_to(Rational(4), true));
  CHECK_FALSE(delta_sync(strict, Rational(4)));

  SystemConfig fresh = sys(kAsyncP, kAsyncQ);
  CHECK_EQ(async_allowed_delays(fresh), DelayInterval::up_to(Rational(2), true));

  // 0-sync now: no delay may pass.
  SystemConfig now = after_both_sends("?a.?b");
  CHECK_EQ(async_allowed_delays(now), DelayInterval::none());
}

TEST_CASE("async_system_steps: the displayed execution") {
  SystemConfig s = sys(kAsyncP, kAsyncQ);
  // tau: send a.
  auto s1 = async_system_steps(s);
  REQUIRE_EQ(s1.size(), 1);
  CHECK_EQ(s1[0].kind, TauKind::commit);
  // tau: send b.
  auto s2 = async_system_steps(s1[0].target);
  REQUIRE_EQ(s2.size(), 1);
  SystemConfig sent = s2[0].target;
  CHECK_EQ(sent.left.queue, (Queue{"a", "b"}));
  // 4: delay to the first sync instant.
  CHECK(async_allowed_delays(sent).contains(Rational(4)));
  SystemConfig at4 = advance(sent, Rational(4));
  // tau: consume a.
  auto s3 = async_system_steps(at4);
  REQUIRE_EQ(s3.size(), 1);
  CHECK_EQ(s3[0].kind, TauKind::sync);
  CHECK_EQ(s3[0].action, "a");
  // 1: delay to 5.
  SystemConfig toward5 = s3[0].target;
  CHECK(async_allowed_delays(toward5).contains(Rational(1)));
  SystemConfig at5 = advance(toward5, Rational(1));
  // tau: consume b, success.
  auto s4 = async_system_steps(at5);
  REQUIRE_EQ(s4.size(), 1);
  CHECK(is_success(s4[0].target));
}

TEST_CASE("the strict variant is stuck at 4") {
  SystemConfig stuck = advance(after_both_sends(kAsyncQStrict), Rational(4));
  CHECK(async_system_steps(stuck).empty());
  CHECK_EQ(async_allowed_delays(stuck), DelayInterval::none());
}

TEST_CASE("commit steps of both endpoints interleave freely") {
  SystemConfig s = sys("!a{t<=9}", "!b{t<=9}");
  auto steps = async_system_steps(s);
  CHECK(has_step(steps, TauKind::commit, Actor::left, "a"));
  CHECK(has_step(steps, TauKind::commit, Actor::right, "b"));
}

TEST_CASE("simulation lemma on the paper configurations") {
  // Every synchronous system step is an asynchronous one, and empty-queue
  // delay sets agree exactly. Spot-check on the worked examples; the bulk
  // randomized run lives in the harness suite.
  std::vector<SystemConfig> configs = {
      sys(kCommitP, kCommitQ),
      advance(sys(kCommitP, kCommitQ), Rational(7)),
      sys(kAsyncP, kAsyncQ),
      advance(sys(kAsyncP, kAsyncQ), Rational(3, 2)),
  };
  for (const auto& s : configs) {
    auto async_steps = async_system_steps(s);
    for (const auto& step : sync_system_steps(s)) {
      CHECK(has_step(async_steps, step.kind, step.actor, step.action));
    }
    if (s.left.queue.empty() && s.right.queue.empty()) {
      CHECK_EQ(sync_allowed_delays(s), async_allowed_delays(s));
    }
  }
}

TEST_CASE("symbolic successors: committed-choice initial state") {
  TstPtr p = parse_tst(kCommitP);
  TstPtr q = parse_tst(kCommitQ);
  SymContext ctx = make_sym_context(p, q);
  SymbolicState init{SymbolicLocation{unfold(p), std::nullopt},
                     SymbolicLocation{unfold(q), std::nullopt},
                     origin_zone(ctx)};
  auto succs = sync_symbolic_successors(init, ctx);
  REQUIRE_EQ(succs.size(), 2);  // both commits, thanks to the delay closure
  for (const auto& t : succs) {
    CHECK_EQ(t.kind, TauKind::commit);
    CHECK(t.target.left.committed.has_value());
  }
  // Success/success states have no successors.
  SymbolicState done{SymbolicLocation{t_success(), std::nullopt},
                     SymbolicLocation{t_success(), std::nullopt},
                     ZoneSet::universal(ctx.universe)};
  CHECK(sync_symbolic_successors(done, ctx).empty());
  CHECK(zs_is_empty(sync_deadlock_points(done, ctx)));
}
