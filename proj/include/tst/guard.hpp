#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "tst/clock.hpp"
#include "tst/interval.hpp"
#include "tst/rational.hpp"

namespace tst {

enum class CmpOp { lt, le, eq, ge, gt };

const char* cmp_op_token(CmpOp op);

// Clock guard over one endpoint's clocks:
//   g ::= true | !g | g && g | x <> d | x - y <> d
// Constants d are naturals. Clock references are local names; the owner tag
// is supplied where guards are lowered to zones.
struct Guard;
using GuardPtr = std::shared_ptr<const Guard>;

struct Guard {
  enum class Kind { truth, negation, conjunction, atom, diag_atom };

  Kind kind = Kind::truth;
  GuardPtr lhs;  // negation operand / left conjunct
  GuardPtr rhs;  // right conjunct
  std::string clock_a;
  std::string clock_b;  // diag_atom only
  CmpOp op = CmpOp::le;
  std::int64_t constant = 0;  // natural
};

GuardPtr g_true();
GuardPtr g_not(GuardPtr g);
GuardPtr g_and(GuardPtr a, GuardPtr b);
GuardPtr g_atom(std::string clock, CmpOp op, std::int64_t d);
GuardPtr g_diag(std::string a, std::string b, CmpOp op, std::int64_t d);

bool guard_equal(const GuardPtr& a, const GuardPtr& b);
bool guard_is_true(const GuardPtr& g);

/// nu in [[g]], by structural recursion over the five guard forms.
/// Throws std::invalid_argument("unbound clock ...") if g mentions a clock
/// nu is not defined on.
bool guard_sat(const GuardPtr& g, const ClockValuation& nu);

/// All clock names mentioned by g (atoms and diagonal atoms).
std::set<std::string> guard_clocks(const GuardPtr& g);

/// Accumulates, per clock name, the largest constant the clock is compared
/// against. Diagonal atoms contribute the constant to both clocks.
void guard_max_constants(const GuardPtr& g,
                         std::map<std::string, std::int64_t>& acc);

/// True iff some atom is a strict lower bound (x > d or x - y > d),
/// the guard shape for which an urgent first sync instant may not exist.
bool guard_has_strict_lower(const GuardPtr& g);

/// {delta >= 0 : nu + delta satisfies g}, exactly. Diagonal atoms are
/// delay-invariant; plain atoms give rational-endpoint intervals. This is
/// the concrete-semantics route; it never touches the zone layer.
IntervalSet guard_instants(const GuardPtr& g, const ClockValuation& nu);

std::string render_guard(const GuardPtr& g);

}  // namespace tst
