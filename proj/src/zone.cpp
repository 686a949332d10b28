#include "tst/zone.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace tst {

namespace {

void require_same_universe(const ZoneSet& a, const ZoneSet& b) {
  if (!(a.universe == b.universe)) {
    throw std::invalid_argument("universe mismatch");
  }
}

std::vector<Rational> to_coords(const ClockUniverse& u,
                                const ClockValuation& v) {
  std::vector<Rational> out;
  out.reserve(u.size());
  for (const auto& c : u.clocks()) {
    auto it = v.find(c);
    if (it == v.end()) {
      throw std::invalid_argument("valuation not total on universe (clock '" +
                                  c.name + "')");
    }
    out.push_back(it->second);
  }
  return out;
}

// Total order on members for canonical zone-set layout.
bool dbm_less(const Dbm& a, const Dbm& b) {
  const std::size_t n = a.num_clocks() + 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const DbmBound& x = a.at(i, j);
      const DbmBound& y = b.at(i, j);
      if (x == y) continue;
      if (x.inf != y.inf) return y.inf;
      if (x.value != y.value) return x.value < y.value;
      return x.strict && !y.strict;
    }
  }
  return false;
}

ZoneSet map_members(const ZoneSet& z, const std::function<Dbm(const Dbm&)>& f) {
  ZoneSet out{z.universe, {}};
  for (const auto& m : z.members) out.members.push_back(f(m));
  zs_normalize(out);
  return out;
}

}  // namespace

ZoneSet ZoneSet::universal(const ClockUniverse& u) {
  return {u, {Dbm::universal(u.size())}};
}

ZoneSet ZoneSet::point(const ClockUniverse& u, const ClockValuation& v) {
  std::vector<Rational> coords = to_coords(u, v);
  Dbm d = Dbm::universal(u.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].denominator() != 1) {
      throw std::invalid_argument("point zones need integral coordinates");
    }
    d.constrain(i + 1, 0, DbmBound::le(coords[i].numerator()));
    d.constrain(0, i + 1, DbmBound::le(-coords[i].numerator()));
  }
  d.close();
  ZoneSet z{u, {std::move(d)}};
  zs_normalize(z);
  return z;
}

void zs_normalize(ZoneSet& z) {
  std::vector<Dbm> kept;
  for (auto& m : z.members) {
    if (!m.is_empty()) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(), dbm_less);
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  // Member-in-member subsumption only; exact union minimization is not
  // attempted.
  std::vector<bool> subsumed(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size() && !subsumed[i]; ++j) {
      if (i != j && !subsumed[j]) subsumed[i] = kept[i].subset_of(kept[j]);
    }
  }
  std::vector<Dbm> out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (!subsumed[i]) out.push_back(std::move(kept[i]));
  }
  z.members = std::move(out);
}

ZoneSet zs_meet(const ZoneSet& a, const ZoneSet& b) {
  require_same_universe(a, b);
  ZoneSet out{a.universe, {}};
  for (const auto& ma : a.members) {
    for (const auto& mb : b.members) {
      Dbm m = ma.meet(mb);
      if (!m.is_empty()) out.members.push_back(std::move(m));
    }
  }
  zs_normalize(out);
  return out;
}

ZoneSet zs_join(const ZoneSet& a, const ZoneSet& b) {
  require_same_universe(a, b);
  ZoneSet out{a.universe, a.members};
  out.members.insert(out.members.end(), b.members.begin(), b.members.end());
  zs_normalize(out);
  return out;
}

ZoneSet zs_negate(const ZoneSet& a) {
  // De Morgan over members: complement of a union is the meet of the
  // member complements.
  ZoneSet acc = ZoneSet::universal(a.universe);
  for (const auto& m : a.members) {
    ZoneSet pieces{a.universe, m.complement()};
    zs_normalize(pieces);
    acc = zs_meet(acc, pieces);
    if (acc.is_empty()) break;
  }
  return acc;
}

ZoneSet zs_minus(const ZoneSet& a, const ZoneSet& b) {
  require_same_universe(a, b);
  if (a.is_empty() || b.is_empty()) return a;
  return zs_meet(a, zs_negate(b));
}

ZoneSet zs_boolean(ZsMode mode, const ZoneSet& a, const ZoneSet* b) {
  if ((mode == ZsMode::negate) != (b == nullptr)) {
    throw std::invalid_argument(
        "zs_boolean: second operand present iff mode is binary");
  }
  switch (mode) {
    case ZsMode::meet: return zs_meet(a, *b);
    case ZsMode::join: return zs_join(a, *b);
    case ZsMode::negate: return zs_negate(a);
  }
  throw std::logic_error("unreachable");
}

bool zs_member(const ZoneSet& z, const ClockValuation& v) {
  std::vector<Rational> coords = to_coords(z.universe, v);
  for (const auto& m : z.members) {
    if (m.contains(coords)) return true;
  }
  return false;
}

bool zs_is_empty(const ZoneSet& z) { return z.members.empty(); }

bool zs_subset(const ZoneSet& a, const ZoneSet& b) {
  require_same_universe(a, b);
  if (a.is_empty()) return true;
  return zs_is_empty(zs_minus(a, b));
}

bool zs_same_denotation(const ZoneSet& a, const ZoneSet& b) {
  return zs_subset(a, b) && zs_subset(b, a);
}

ZoneSet zs_past(const ZoneSet& z) {
  return map_members(z, [](const Dbm& d) { return d.past(false); });
}

ZoneSet zs_past_strict(const ZoneSet& z) {
  return map_members(z, [](const Dbm& d) { return d.past(true); });
}

ZoneSet zs_future(const ZoneSet& z, bool strict) {
  return map_members(z, [strict](const Dbm& d) { return d.future(strict); });
}

namespace {

std::vector<std::size_t> reset_indices(const ClockUniverse& u,
                                       const ResetSet& r) {
  std::vector<std::size_t> idx;
  for (const auto& c : r) {
    auto i = u.index_of(c);
    if (!i) throw std::invalid_argument("unbound clock '" + c.name + "'");
    idx.push_back(*i + 1);
  }
  return idx;
}

}  // namespace

ZoneSet zs_reset(const ZoneSet& z, const ResetSet& r) {
  if (r.empty()) return z;
  auto idx = reset_indices(z.universe, r);
  return map_members(z, [&](const Dbm& d) { return d.reset(idx); });
}

ZoneSet zs_reset_pre(const ZoneSet& z, const ResetSet& r) {
  if (r.empty()) return z;
  auto idx = reset_indices(z.universe, r);
  ZoneSet out{z.universe, {}};
  for (const auto& m : z.members) {
    // mu[R := 0] in m  iff  m constrained to R = 0 is inhabited with mu's
    // other coordinates, with the R coordinates then arbitrary.
    Dbm at_zero = m;
    for (std::size_t i : idx) {
      at_zero.constrain(i, 0, DbmBound::le(0));
    }
    at_zero.close();
    if (at_zero.is_empty()) continue;
    out.members.push_back(at_zero.free(idx));
  }
  zs_normalize(out);
  return out;
}

ZoneSet zs_extrapolate(const ZoneSet& z, const MaxConstMap& m) {
  std::vector<std::int64_t> consts;
  consts.reserve(z.universe.size());
  for (const auto& c : z.universe.clocks()) {
    auto it = m.find(c);
    if (it == m.end()) {
      throw std::invalid_argument("max-const map does not cover clock '" +
                                  c.name + "'");
    }
    consts.push_back(it->second);
  }
  return map_members(z, [&](const Dbm& d) { return d.extrapolate(consts); });
}

namespace {

struct ObstaclePieces {
  std::vector<ZoneSet> past_of;     // past(C_k)
  std::vector<ZoneSet> not_sf_of;   // complement of strict_future(C_k)
};

ObstaclePieces obstacle_pieces(const ZoneSet& s) {
  ObstaclePieces p;
  for (const auto& c : s.members) {
    ZoneSet single{s.universe, {c}};
    p.past_of.push_back(zs_past(single));
    p.not_sf_of.push_back(zs_negate(zs_future(single, true)));
  }
  return p;
}

}  // namespace

// Core of both urgency operators. For a convex obstacle C and points
// nu < mu on one time diagonal:
//   [nu, mu) disjoint from C   iff   nu not in past(C)  or  mu not in sf(C)
// (sf = strict future). For a union S the conjunction over members is
// expanded by choosing, per member, which disjunct carries it.
ZoneSet urgent_elapse(const ZoneSet& z, const ZoneSet& s) {
  require_same_universe(z, s);
  if (z.is_empty()) return z;
  if (s.is_empty()) return zs_future(z, false);

  const std::size_t k = s.members.size();
  if (k > 20) throw std::invalid_argument("urgency obstacle set too large");
  ObstaclePieces pieces = obstacle_pieces(s);

  ZoneSet result = z;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    ZoneSet starts = z;
    for (std::size_t i = 0; i < k && !starts.is_empty(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        starts = zs_minus(starts, pieces.past_of[i]);
      }
    }
    if (starts.is_empty()) continue;
    ZoneSet targets = zs_future(starts, true);
    for (std::size_t i = 0; i < k && !targets.is_empty(); ++i) {
      if (!(mask & (std::size_t{1} << i))) {
        targets = zs_meet(targets, pieces.not_sf_of[i]);
      }
    }
    result = zs_join(result, targets);
  }
  return result;
}

ZoneSet urgent_past(const ZoneSet& t, const ZoneSet& s) {
  require_same_universe(t, s);
  if (t.is_empty()) return t;
  if (s.is_empty()) return zs_past(t);

  const std::size_t k = s.members.size();
  if (k > 20) throw std::invalid_argument("urgency obstacle set too large");
  ObstaclePieces pieces = obstacle_pieces(s);

  ZoneSet result = t;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    ZoneSet targets = t;
    for (std::size_t i = 0; i < k && !targets.is_empty(); ++i) {
      if (!(mask & (std::size_t{1} << i))) {
        targets = zs_meet(targets, pieces.not_sf_of[i]);
      }
    }
    if (targets.is_empty()) continue;
    ZoneSet starts = zs_past_strict(targets);
    for (std::size_t i = 0; i < k && !starts.is_empty(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        starts = zs_minus(starts, pieces.past_of[i]);
      }
    }
    result = zs_join(result, starts);
  }
  return result;
}

ZoneSet guard_zones(const GuardPtr& g, const ClockUniverse& universe,
                    Owner owner, std::int64_t scale) {
  if (!g || g->kind == Guard::Kind::truth) {
    return ZoneSet::universal(universe);
  }
  switch (g->kind) {
    case Guard::Kind::negation:
      return zs_negate(guard_zones(g->lhs, universe, owner, scale));
    case Guard::Kind::conjunction:
      return zs_meet(guard_zones(g->lhs, universe, owner, scale),
                     guard_zones(g->rhs, universe, owner, scale));
    case Guard::Kind::atom:
    case Guard::Kind::diag_atom: {
      auto ia = universe.index_of(owner, g->clock_a);
      if (!ia) throw std::invalid_argument("unbound clock '" + g->clock_a + "'");
      std::size_t i = *ia + 1;
      std::size_t j = 0;
      if (g->kind == Guard::Kind::diag_atom) {
        auto ib = universe.index_of(owner, g->clock_b);
        if (!ib) {
          throw std::invalid_argument("unbound clock '" + g->clock_b + "'");
        }
        j = *ib + 1;
      }
      const std::int64_t d = g->constant * scale;
      Dbm m = Dbm::universal(universe.size());
      switch (g->op) {
        case CmpOp::lt: m.constrain(i, j, DbmBound::lt(d)); break;
        case CmpOp::le: m.constrain(i, j, DbmBound::le(d)); break;
        case CmpOp::eq:
          m.constrain(i, j, DbmBound::le(d));
          m.constrain(j, i, DbmBound::le(-d));
          break;
        case CmpOp::ge: m.constrain(j, i, DbmBound::le(-d)); break;
        case CmpOp::gt: m.constrain(j, i, DbmBound::lt(-d)); break;
      }
      m.close();
      ZoneSet z{universe, {std::move(m)}};
      zs_normalize(z);
      return z;
    }
    default:
      throw std::logic_error("unreachable guard kind");
  }
}

IntervalSet zs_ray_instants(const ZoneSet& z, const ClockValuation& point) {
  std::vector<Rational> coords = to_coords(z.universe, point);
  IntervalSet out;
  for (const auto& m : z.members) {
    if (auto iv = m.ray_interval(coords)) {
      out = out.unite(IntervalSet::of(*iv));
    }
  }
  return out;
}

ClockValuation zs_pick_point(const ZoneSet& z) {
  if (z.is_empty()) throw std::invalid_argument("pick_point on empty zone set");
  std::optional<std::vector<Rational>> best;
  for (const auto& m : z.members) {
    auto p = m.pick_point();
    if (!best || std::lexicographical_compare(p.begin(), p.end(),
                                              best->begin(), best->end())) {
      best = std::move(p);
    }
  }
  ClockValuation v;
  for (std::size_t i = 0; i < z.universe.size(); ++i) {
    v.emplace(z.universe.at(i), (*best)[i]);
  }
  return v;
}

namespace {

GuardPtr member_to_guard(const ClockUniverse& u, const Dbm& d) {
  const Dbm base = Dbm::universal(u.size());
  GuardPtr acc;
  auto append = [&acc](GuardPtr g) {
    acc = acc ? g_and(acc, std::move(g)) : std::move(g);
  };
  for (std::size_t i = 0; i <= u.size(); ++i) {
    for (std::size_t j = 0; j <= u.size(); ++j) {
      if (i == j) continue;
      const DbmBound& b = d.at(i, j);
      if (!b.tighter_than(base.at(i, j))) continue;
      if (j == 0) {
        const std::string& x = u.at(i - 1).name;
        append(g_atom(x, b.strict ? CmpOp::lt : CmpOp::le, b.value));
      } else if (i == 0) {
        const std::string& x = u.at(j - 1).name;
        append(g_atom(x, b.strict ? CmpOp::gt : CmpOp::ge, -b.value));
      } else if (b.value >= 0) {
        append(g_diag(u.at(i - 1).name, u.at(j - 1).name,
                      b.strict ? CmpOp::lt : CmpOp::le, b.value));
      } else {
        append(g_diag(u.at(j - 1).name, u.at(i - 1).name,
                      b.strict ? CmpOp::gt : CmpOp::ge, -b.value));
      }
    }
  }
  return acc ? acc : g_true();
}

}  // namespace

GuardPtr zone_to_guard(const ZoneSet& z) {
  for (const auto& c : z.universe.clocks()) {
    if (c.owner != z.universe.at(0).owner) {
      throw std::invalid_argument("zone_to_guard needs a single-owner universe");
    }
  }
  if (z.is_empty()) return g_not(g_true());
  if (z.members.size() == 1) return member_to_guard(z.universe, z.members[0]);
  // No disjunction in the grammar: union as !(!m1 && !m2 && ...).
  GuardPtr acc;
  for (const auto& m : z.members) {
    GuardPtr neg = g_not(member_to_guard(z.universe, m));
    acc = acc ? g_and(acc, std::move(neg)) : std::move(neg);
  }
  return g_not(acc);
}

}  // namespace tst
