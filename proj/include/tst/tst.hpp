#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tst/guard.hpp"

namespace tst {

using Action = std::string;

enum class Polarity { output, input };

struct BranchLabel {
  Polarity polarity;
  Action action;

  auto operator<=>(const BranchLabel&) const = default;
};

struct Tst;
using TstPtr = std::shared_ptr<const Tst>;

// One guarded branch (l, g, R, p) of a choice. Polarity lives on the
// enclosing choice: internal choices send, external choices receive.
struct Branch {
  Action action;
  GuardPtr guard;                 // g_true() when omitted in the syntax
  std::set<std::string> resets;   // clock names of the owning endpoint
  TstPtr cont;                    // success when omitted in the syntax
};

// Timed session type:
//   p ::= 1 | (+)_i !a_i{g_i}[R_i].p_i | +_i ?a_i{g_i}[R_i].p_i
//       | rec X . p | X
struct Tst {
  enum class Kind { success, internal_choice, external_choice, rec, var };

  Kind kind = Kind::success;
  std::vector<Branch> branches;  // choices
  std::string var;               // rec binder / variable name
  TstPtr body;                   // rec body
};

TstPtr t_success();
TstPtr t_internal(std::vector<Branch> branches);
TstPtr t_external(std::vector<Branch> branches);
TstPtr t_rec(std::string var, TstPtr body);
TstPtr t_var(std::string name);

bool tst_equal(const TstPtr& a, const TstPtr& b);

/// Grammar side conditions: non-empty finite choices, pairwise distinct
/// actions per choice, guarded recursion, closedness. Empty result means
/// valid.
std::vector<std::string> validate(const TstPtr& p);

/// Unrolls leading recursions: rec X p becomes p{X := rec X p} until the
/// head is not a rec. Identity on everything else. Requires a closed term.
TstPtr unfold(const TstPtr& p);

/// The least set containing unfold(p) that is closed under taking branch
/// continuations and unfolding. Finite for all valid terms.
std::vector<TstPtr> reachable_terms(const TstPtr& p);

/// Per clock name, the largest constant compared against anywhere in
/// reachable_terms(p); diagonal atoms count for both clocks.
std::map<std::string, std::int64_t> max_constant(const TstPtr& p);

/// Clock names in guards or resets of any reachable subterm.
std::set<std::string> term_clocks(const TstPtr& p);

/// True iff some reachable external-choice branch has a strict lower-bound
/// guard, the shape whose first sync instant may be unreachable under
/// urgency.
bool has_urgency_hazard(const TstPtr& p);

}  // namespace tst
