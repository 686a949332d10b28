#include "tst/guard.hpp"

#include <stdexcept>

namespace tst {

const char* cmp_op_token(CmpOp op) {
  switch (op) {
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::eq: return "=";
    case CmpOp::ge: return ">=";
    case CmpOp::gt: return ">";
  }
  return "?";
}

GuardPtr g_true() {
  static const GuardPtr t = std::make_shared<Guard>();
  return t;
}

GuardPtr g_not(GuardPtr g) {
  auto out = std::make_shared<Guard>();
  out->kind = Guard::Kind::negation;
  out->lhs = std::move(g);
  return out;
}

GuardPtr g_and(GuardPtr a, GuardPtr b) {
  auto out = std::make_shared<Guard>();
  out->kind = Guard::Kind::conjunction;
  out->lhs = std::move(a);
  out->rhs = std::move(b);
  return out;
}

GuardPtr g_atom(std::string clock, CmpOp op, std::int64_t d) {
  if (d < 0) throw std::invalid_argument("guard constants are naturals");
  auto out = std::make_shared<Guard>();
  out->kind = Guard::Kind::atom;
  out->clock_a = std::move(clock);
  out->op = op;
  out->constant = d;
  return out;
}

GuardPtr g_diag(std::string a, std::string b, CmpOp op, std::int64_t d) {
  if (d < 0) throw std::invalid_argument("guard constants are naturals");
  auto out = std::make_shared<Guard>();
  out->kind = Guard::Kind::diag_atom;
  out->clock_a = std::move(a);
  out->clock_b = std::move(b);
  out->op = op;
  out->constant = d;
  return out;
}

bool guard_equal(const GuardPtr& a, const GuardPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Guard::Kind::truth:
      return true;
    case Guard::Kind::negation:
      return guard_equal(a->lhs, b->lhs);
    case Guard::Kind::conjunction:
      return guard_equal(a->lhs, b->lhs) && guard_equal(a->rhs, b->rhs);
    case Guard::Kind::atom:
      return a->clock_a == b->clock_a && a->op == b->op &&
             a->constant == b->constant;
    case Guard::Kind::diag_atom:
      return a->clock_a == b->clock_a && a->clock_b == b->clock_b &&
             a->op == b->op && a->constant == b->constant;
  }
  return false;
}

bool guard_is_true(const GuardPtr& g) {
  return !g || g->kind == Guard::Kind::truth;
}

namespace {

bool cmp_holds(const Rational& lhs, CmpOp op, std::int64_t d) {
  Rational rhs(d);
  switch (op) {
    case CmpOp::lt: return lhs < rhs;
    case CmpOp::le: return lhs <= rhs;
    case CmpOp::eq: return lhs == rhs;
    case CmpOp::ge: return lhs >= rhs;
    case CmpOp::gt: return lhs > rhs;
  }
  return false;
}

}  // namespace

bool guard_sat(const GuardPtr& g, const ClockValuation& nu) {
  if (!g) return true;
  switch (g->kind) {
    case Guard::Kind::truth:
      return true;
    case Guard::Kind::negation:
      return !guard_sat(g->lhs, nu);
    case Guard::Kind::conjunction:
      return guard_sat(g->lhs, nu) && guard_sat(g->rhs, nu);
    case Guard::Kind::atom:
      return cmp_holds(val_lookup(nu, g->clock_a), g->op, g->constant);
    case Guard::Kind::diag_atom:
      return cmp_holds(
          val_lookup(nu, g->clock_a) - val_lookup(nu, g->clock_b), g->op,
          g->constant);
  }
  return false;
}

std::set<std::string> guard_clocks(const GuardPtr& g) {
  std::set<std::string> out;
  if (!g) return out;
  switch (g->kind) {
    case Guard::Kind::truth:
      break;
    case Guard::Kind::negation: {
      out = guard_clocks(g->lhs);
      break;
    }
    case Guard::Kind::conjunction: {
      out = guard_clocks(g->lhs);
      auto r = guard_clocks(g->rhs);
      out.insert(r.begin(), r.end());
      break;
    }
    case Guard::Kind::atom:
      out.insert(g->clock_a);
      break;
    case Guard::Kind::diag_atom:
      out.insert(g->clock_a);
      out.insert(g->clock_b);
      break;
  }
  return out;
}

void guard_max_constants(const GuardPtr& g,
                         std::map<std::string, std::int64_t>& acc) {
  if (!g) return;
  switch (g->kind) {
    case Guard::Kind::truth:
      return;
    case Guard::Kind::negation:
      guard_max_constants(g->lhs, acc);
      return;
    case Guard::Kind::conjunction:
      guard_max_constants(g->lhs, acc);
      guard_max_constants(g->rhs, acc);
      return;
    case Guard::Kind::atom: {
      auto& v = acc[g->clock_a];
      v = std::max(v, g->constant);
      return;
    }
    case Guard::Kind::diag_atom: {
      auto& a = acc[g->clock_a];
      a = std::max(a, g->constant);
      auto& b = acc[g->clock_b];
      b = std::max(b, g->constant);
      return;
    }
  }
}

namespace {

bool strict_lower_rec(const GuardPtr& g, bool negated) {
  if (!g) return false;
  switch (g->kind) {
    case Guard::Kind::truth:
      return false;
    case Guard::Kind::negation:
      return strict_lower_rec(g->lhs, !negated);
    case Guard::Kind::conjunction:
      return strict_lower_rec(g->lhs, negated) ||
             strict_lower_rec(g->rhs, negated);
    case Guard::Kind::atom:
    case Guard::Kind::diag_atom:
      // Negated weak uppers turn into strict lowers: !(x <= d) is x > d,
      // and !(x = d) has an x > d disjunct.
      if (negated) return g->op == CmpOp::le || g->op == CmpOp::eq;
      return g->op == CmpOp::gt;
  }
  return false;
}

}  // namespace

bool guard_has_strict_lower(const GuardPtr& g) {
  return strict_lower_rec(g, false);
}

IntervalSet guard_instants(const GuardPtr& g, const ClockValuation& nu) {
  if (!g) return IntervalSet::all();
  switch (g->kind) {
    case Guard::Kind::truth:
      return IntervalSet::all();
    case Guard::Kind::negation:
      return guard_instants(g->lhs, nu).complement();
    case Guard::Kind::conjunction:
      return guard_instants(g->lhs, nu).intersect(guard_instants(g->rhs, nu));
    case Guard::Kind::diag_atom: {
      // (nu_a + delta) - (nu_b + delta) never changes.
      Rational diff = val_lookup(nu, g->clock_a) - val_lookup(nu, g->clock_b);
      return cmp_holds(diff, g->op, g->constant) ? IntervalSet::all()
                                                 : IntervalSet::empty();
    }
    case Guard::Kind::atom: {
      Rational rest = Rational(g->constant) - val_lookup(nu, g->clock_a);
      Interval iv;
      switch (g->op) {
        case CmpOp::lt:
          iv = {Rational(0), false, rest, true};
          break;
        case CmpOp::le:
          iv = {Rational(0), false, rest, false};
          break;
        case CmpOp::eq:
          if (rest < Rational(0)) return IntervalSet::empty();
          iv = {rest, false, rest, false};
          break;
        case CmpOp::ge:
          iv = {std::max(Rational(0), rest), false, std::nullopt, false};
          break;
        case CmpOp::gt:
          if (rest < Rational(0)) {
            iv = {Rational(0), false, std::nullopt, false};
          } else {
            iv = {rest, true, std::nullopt, false};
          }
          break;
      }
      return IntervalSet::of(iv);
    }
  }
  return IntervalSet::empty();
}

namespace {

// Precedence: atoms bind tightest, then !, then &&.
void render(const GuardPtr& g, std::string& out) {
  switch (g->kind) {
    case Guard::Kind::truth:
      out += "true";
      return;
    case Guard::Kind::negation:
      out += "!";
      if (g->lhs->kind == Guard::Kind::conjunction) {
        out += "(";
        render(g->lhs, out);
        out += ")";
      } else {
        render(g->lhs, out);
      }
      return;
    case Guard::Kind::conjunction:
      render(g->lhs, out);
      out += " && ";
      render(g->rhs, out);
      return;
    case Guard::Kind::atom:
      out += g->clock_a;
      out += cmp_op_token(g->op);
      out += std::to_string(g->constant);
      return;
    case Guard::Kind::diag_atom:
      out += g->clock_a;
      out += "-";
      out += g->clock_b;
      out += cmp_op_token(g->op);
      out += std::to_string(g->constant);
      return;
  }
}

}  // namespace

std::string render_guard(const GuardPtr& g) {
  if (!g) return "true";
  std::string out;
  render(g, out);
  return out;
}

}  // namespace tst
