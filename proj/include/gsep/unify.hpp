#pragma once

// Syntactic unification of groupoid terms by the Decompose / Coalesce /
// Check / Eliminate rules, with a replayable derivation trace.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsep/term.hpp"

namespace gsep {

// lhs = rhs, or the contradiction False.
struct Statement {
  std::optional<Term> lhs;
  std::optional<Term> rhs;

  static Statement equation(Term l, Term r) { return {std::move(l), std::move(r)}; }
  static Statement contradiction() { return {}; }
  bool is_false() const noexcept { return !lhs.has_value(); }
  std::string to_string() const;
  friend bool operator==(const Statement&, const Statement&) = default;
};

enum class Rule { Decompose, Coalesce, Check, Eliminate };
const char* rule_name(Rule r);

// One rule application. For Decompose and Check, `consumed` is the statement
// acted on and `produced` its consequences (False for Check). For Coalesce
// and Eliminate, `consumed` is x = a, `rewritten` lists every other statement
// that mentioned x and `produced` the same statements after replacing x by a.
struct TraceStep {
  Rule rule;
  Statement consumed;
  std::vector<Statement> rewritten;
  std::vector<Statement> produced;
};

// Re-applies the rule to the recorded inputs and compares with the outputs.
bool replay(const TraceStep& step);

class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<VarId, Term> bindings) : bindings_(std::move(bindings)) {}

  const std::map<VarId, Term>& bindings() const noexcept { return bindings_; }
  bool empty() const noexcept { return bindings_.empty(); }
  std::optional<Term> lookup(const VarId& v) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<VarId, Term> bindings_;
};

// Simultaneous replacement, applied repeatedly until no bound variable remains.
// Throws InvalidArgument on cyclic bindings.
Term apply_subst(const Substitution& sigma, const Term& t);

struct UnifyOutcome {
  // Fully applied bindings, ordered by variable name.
  std::optional<Substitution> unifier;
  std::vector<TraceStep> trace;

  bool unifiable() const noexcept { return unifier.has_value(); }
};

// Strategy: drop tautologies and decompose every term = term statement
// first. Then Coalesce the first x = y, replacing whichever variable occurs
// later in s and t by the earlier one. With none left, take the statement
// whose variable occurs latest and apply Check, then Eliminate.
UnifyOutcome unify(const Term& s, const Term& t);

enum class AbstractVerdict { SeparableInSomeGroupoid, NotSeparableInAnyGroupoid };

struct AbstractSeparability {
  AbstractVerdict verdict;
  // For NotSeparable: every variable of s and t mapped to a term over the
  // single variable x, equating s and t in the free groupoid on x.
  std::optional<Substitution> witness;
};

AbstractSeparability decide_abstract_separability(const Term& s, const Term& t);

}  // namespace gsep
