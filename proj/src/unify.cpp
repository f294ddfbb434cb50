#include "gsep/unify.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "gsep/cayley.hpp"
#include "gsep/errors.hpp"

namespace gsep {

std::string Statement::to_string() const {
  if (is_false()) return "False";
  return render_term(*lhs) + " = " + render_term(*rhs);
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Decompose: return "Decompose";
    case Rule::Coalesce: return "Coalesce";
    case Rule::Check: return "Check";
    case Rule::Eliminate: return "Eliminate";
  }
  return "?";
}

namespace {

Term replace_var(const Term& t, const VarId& x, const Term& a) {
  if (t.is_leaf()) return t.var() == x ? a : t;
  if (!occurs_in(x, t)) return t;
  return Term::node(replace_var(t.left(), x, a), replace_var(t.right(), x, a));
}

Statement replace_var(const Statement& st, const VarId& x, const Term& a) {
  return Statement::equation(replace_var(*st.lhs, x, a), replace_var(*st.rhs, x, a));
}

bool mentions(const Statement& st, const VarId& x) {
  return !st.is_false() && (occurs_in(x, *st.lhs) || occurs_in(x, *st.rhs));
}

// The variable side of a statement that is not term = term.
const VarId& solved_var(const Statement& st) {
  return st.lhs->is_leaf() ? st.lhs->var() : st.rhs->var();
}

struct Entry {
  Statement st;
  bool solved = false;
};

}  // namespace

bool replay(const TraceStep& step) {
  const Statement& c = step.consumed;
  if (c.is_false()) return false;
  switch (step.rule) {
    case Rule::Decompose:
      return !c.lhs->is_leaf() && !c.rhs->is_leaf() && step.rewritten.empty() &&
             step.produced == std::vector<Statement>{
                                  Statement::equation(c.lhs->left(), c.rhs->left()),
                                  Statement::equation(c.lhs->right(), c.rhs->right())};
    case Rule::Check:
      return c.lhs->is_leaf() && !c.rhs->is_leaf() && occurs_in(c.lhs->var(), *c.rhs) &&
             step.produced == std::vector<Statement>{Statement::contradiction()};
    case Rule::Coalesce:
    case Rule::Eliminate: {
      if (!c.lhs->is_leaf()) return false;
      const VarId& x = c.lhs->var();
      if (step.rule == Rule::Coalesce && !c.rhs->is_leaf()) return false;
      if (step.rule == Rule::Eliminate && (c.rhs->is_leaf() || occurs_in(x, *c.rhs))) return false;
      if (step.rewritten.size() != step.produced.size()) return false;
      for (std::size_t i = 0; i < step.rewritten.size(); ++i) {
        if (!mentions(step.rewritten[i], x)) return false;
        if (replace_var(step.rewritten[i], x, *c.rhs) != step.produced[i]) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<Term> Substitution::lookup(const VarId& v) const {
  auto it = bindings_.find(v);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

namespace {

Term apply_once(const Substitution& sigma, const Term& t, bool& changed) {
  if (t.is_leaf()) {
    if (auto b = sigma.lookup(t.var())) {
      if (!(*b == t)) changed = true;
      return *b;
    }
    return t;
  }
  return Term::node(apply_once(sigma, t.left(), changed), apply_once(sigma, t.right(), changed));
}

}  // namespace

Term apply_subst(const Substitution& sigma, const Term& t) {
  Term cur = t;
  // A triangular substitution over k variables settles within k + 1 rounds.
  for (std::size_t round = 0; round <= sigma.bindings().size() + 1; ++round) {
    bool changed = false;
    cur = apply_once(sigma, cur, changed);
    if (!changed) return cur;
  }
  throw InvalidArgument("substitution has cyclic bindings");
}

UnifyOutcome unify(const Term& s, const Term& t) {
  UnifyOutcome out;
  std::vector<Entry> set{{Statement::equation(s, t), false}};
  const auto order = joint_variables(s, t);
  auto rank = [&](const VarId& v) {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
  };

  auto rewrite_all = [&](std::size_t keep, const VarId& x, const Term& a, TraceStep& step) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i == keep || !mentions(set[i].st, x)) continue;
      step.rewritten.push_back(set[i].st);
      set[i].st = replace_var(set[i].st, x, a);
      step.produced.push_back(set[i].st);
    }
  };

  for (;;) {
    // Tautologies a = a carry no information.
    for (std::size_t i = 0; i < set.size();) {
      if (!set[i].solved && *set[i].st.lhs == *set[i].st.rhs) {
        set.erase(set.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }

    bool decomposed = false;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Statement& st = set[i].st;
      if (set[i].solved || st.lhs->is_leaf() || st.rhs->is_leaf()) continue;
      TraceStep step{Rule::Decompose, st, {}, {}};
      step.produced = {Statement::equation(st.lhs->left(), st.rhs->left()),
                       Statement::equation(st.lhs->right(), st.rhs->right())};
      set[i].st = step.produced[0];
      set.insert(set.begin() + static_cast<std::ptrdiff_t>(i) + 1, Entry{step.produced[1], false});
      out.trace.push_back(std::move(step));
      decomposed = true;
      break;
    }
    if (decomposed) continue;

    // Coalesce first; otherwise the statement whose variable occurs latest.
    std::size_t idx = set.size();
    for (std::size_t i = 0; i < set.size() && idx == set.size(); ++i) {
      if (!set[i].solved && set[i].st.lhs->is_leaf() && set[i].st.rhs->is_leaf()) idx = i;
    }
    if (idx == set.size()) {
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i].solved) continue;
        if (idx == set.size() || rank(solved_var(set[i].st)) > rank(solved_var(set[idx].st))) {
          idx = i;
        }
      }
    }
    if (idx == set.size()) break;

    Statement st = set[idx].st;
    if (st.lhs->is_leaf() && st.rhs->is_leaf()) {
      if (rank(st.lhs->var()) < rank(st.rhs->var())) std::swap(st.lhs, st.rhs);
    } else if (!st.lhs->is_leaf()) {
      std::swap(st.lhs, st.rhs);
    }
    set[idx].st = st;
    const VarId x = st.lhs->var();
    const Term a = *st.rhs;

    if (a.is_leaf()) {
      TraceStep step{Rule::Coalesce, st, {}, {}};
      rewrite_all(idx, x, a, step);
      out.trace.push_back(std::move(step));
    } else if (occurs_in(x, a)) {
      out.trace.push_back({Rule::Check, st, {}, {Statement::contradiction()}});
      return out;
    } else {
      TraceStep step{Rule::Eliminate, st, {}, {}};
      rewrite_all(idx, x, a, step);
      out.trace.push_back(std::move(step));
    }
    set[idx].solved = true;
  }

  std::map<VarId, Term> bindings;
  for (const auto& e : set) bindings.emplace(e.st.lhs->var(), *e.st.rhs);
  Substitution sigma(std::move(bindings));
  if (!(apply_subst(sigma, s) == apply_subst(sigma, t))) {
    throw std::logic_error("unifier does not equate the input terms");
  }
  out.unifier = std::move(sigma);
  return out;
}

AbstractSeparability decide_abstract_separability(const Term& s, const Term& t) {
  const UnifyOutcome u = unify(s, t);
  if (!u.unifiable()) return {AbstractVerdict::SeparableInSomeGroupoid, std::nullopt};
  const Term x = Term::var("x");
  std::map<VarId, Term> collapse;
  std::map<VarId, Term> witness;
  const auto vars = joint_variables(s, t);
  for (const auto& v : vars) collapse.emplace(v, x);
  // Variables left free by the unifier may also appear in its bindings.
  for (const auto& [v, b] : u.unifier->bindings()) {
    for (const auto& w : variables(b)) collapse.emplace(w, x);
  }
  const Substitution to_x(std::move(collapse));
  for (const auto& v : vars) {
    witness.emplace(v, apply_subst(to_x, apply_subst(*u.unifier, Term::var(v))));
  }
  return {AbstractVerdict::NotSeparableInAnyGroupoid, Substitution(std::move(witness))};
}

}  // namespace gsep
