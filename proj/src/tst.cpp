#include "tst/tst.hpp"

#include <algorithm>
#include <stdexcept>

#include "tst/parser.hpp"

namespace tst {

TstPtr t_success() {
  static const TstPtr one = std::make_shared<Tst>();
  return one;
}

namespace {

TstPtr make_choice(Tst::Kind kind, std::vector<Branch> branches) {
  if (branches.empty()) {
    throw std::invalid_argument("choice needs at least one branch");
  }
  auto t = std::make_shared<Tst>();
  t->kind = kind;
  for (auto& b : branches) {
    if (!b.guard) b.guard = g_true();
    if (!b.cont) b.cont = t_success();
  }
  t->branches = std::move(branches);
  return t;
}

}  // namespace

TstPtr t_internal(std::vector<Branch> branches) {
  return make_choice(Tst::Kind::internal_choice, std::move(branches));
}

TstPtr t_external(std::vector<Branch> branches) {
  return make_choice(Tst::Kind::external_choice, std::move(branches));
}

TstPtr t_rec(std::string var, TstPtr body) {
  auto t = std::make_shared<Tst>();
  t->kind = Tst::Kind::rec;
  t->var = std::move(var);
  t->body = std::move(body);
  return t;
}

TstPtr t_var(std::string name) {
  auto t = std::make_shared<Tst>();
  t->kind = Tst::Kind::var;
  t->var = std::move(name);
  return t;
}

bool tst_equal(const TstPtr& a, const TstPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Tst::Kind::success:
      return true;
    case Tst::Kind::var:
      return a->var == b->var;
    case Tst::Kind::rec:
      return a->var == b->var && tst_equal(a->body, b->body);
    case Tst::Kind::internal_choice:
    case Tst::Kind::external_choice: {
      if (a->branches.size() != b->branches.size()) return false;
      for (std::size_t i = 0; i < a->branches.size(); ++i) {
        const Branch& x = a->branches[i];
        const Branch& y = b->branches[i];
        if (x.action != y.action || x.resets != y.resets ||
            !guard_equal(x.guard, y.guard) || !tst_equal(x.cont, y.cont)) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

namespace {

void validate_rec(const TstPtr& p, std::map<std::string, bool>& guarded,
                  std::vector<std::string>& errors) {
  switch (p->kind) {
    case Tst::Kind::success:
      return;
    case Tst::Kind::var: {
      auto it = guarded.find(p->var);
      if (it == guarded.end()) {
        errors.push_back("unbound recursion variable " + p->var);
      } else if (!it->second) {
        errors.push_back("unguarded recursion variable " + p->var);
      }
      return;
    }
    case Tst::Kind::rec: {
      auto saved = guarded;
      guarded[p->var] = false;
      validate_rec(p->body, guarded, errors);
      guarded = saved;
      return;
    }
    case Tst::Kind::internal_choice:
    case Tst::Kind::external_choice: {
      if (p->branches.empty()) {
        errors.push_back("empty choice");
      }
      std::set<Action> seen;
      for (const Branch& b : p->branches) {
        if (b.action.empty()) errors.push_back("empty action name");
        if (!seen.insert(b.action).second) {
          errors.push_back("duplicate action " + b.action + " in choice");
        }
        // Passing a prefix guards every variable in scope.
        auto inner = guarded;
        for (auto& [var, g] : inner) g = true;
        validate_rec(b.cont, inner, errors);
      }
      return;
    }
  }
}

TstPtr substitute(const TstPtr& p, const std::string& var, const TstPtr& r) {
  switch (p->kind) {
    case Tst::Kind::success:
      return p;
    case Tst::Kind::var:
      return p->var == var ? r : p;
    case Tst::Kind::rec:
      if (p->var == var) return p;  // shadowed
      return t_rec(p->var, substitute(p->body, var, r));
    case Tst::Kind::internal_choice:
    case Tst::Kind::external_choice: {
      std::vector<Branch> out = p->branches;
      for (auto& b : out) b.cont = substitute(b.cont, var, r);
      auto t = std::make_shared<Tst>();
      t->kind = p->kind;
      t->branches = std::move(out);
      return t;
    }
  }
  return p;
}

}  // namespace

std::vector<std::string> validate(const TstPtr& p) {
  std::vector<std::string> errors;
  if (!p) {
    errors.push_back("null term");
    return errors;
  }
  std::map<std::string, bool> guarded;
  validate_rec(p, guarded, errors);
  return errors;
}

TstPtr unfold(const TstPtr& p) {
  TstPtr cur = p;
  while (cur->kind == Tst::Kind::rec) {
    cur = substitute(cur->body, cur->var, cur);
  }
  if (cur->kind == Tst::Kind::var) {
    throw std::invalid_argument("unfold on open term (variable " + cur->var +
                                ")");
  }
  return cur;
}

std::vector<TstPtr> reachable_terms(const TstPtr& p) {
  std::vector<TstPtr> out;
  std::set<std::string> seen;
  std::vector<TstPtr> work{unfold(p)};
  while (!work.empty()) {
    TstPtr cur = work.back();
    work.pop_back();
    std::string key = render_tst(cur);
    if (!seen.insert(key).second) continue;
    out.push_back(cur);
    for (const Branch& b : cur->branches) {
      work.push_back(unfold(b.cont));
    }
  }
  return out;
}

std::map<std::string, std::int64_t> max_constant(const TstPtr& p) {
  std::map<std::string, std::int64_t> acc;
  for (const TstPtr& t : reachable_terms(p)) {
    for (const Branch& b : t->branches) {
      guard_max_constants(b.guard, acc);
      for (const auto& clock : b.resets) {
        acc.try_emplace(clock, 0);
      }
    }
  }
  return acc;
}

std::set<std::string> term_clocks(const TstPtr& p) {
  std::set<std::string> out;
  for (const TstPtr& t : reachable_terms(p)) {
    for (const Branch& b : t->branches) {
      auto g = guard_clocks(b.guard);
      out.insert(g.begin(), g.end());
      out.insert(b.resets.begin(), b.resets.end());
    }
  }
  return out;
}

bool has_urgency_hazard(const TstPtr& p) {
  for (const TstPtr& t : reachable_terms(p)) {
    if (t->kind != Tst::Kind::external_choice) continue;
    for (const Branch& b : t->branches) {
      if (guard_has_strict_lower(b.guard)) return true;
    }
  }
  return false;
}

}  // namespace tst
