#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "gsep/cayley.hpp"
#include "gsep/errors.hpp"
#include "gsep/unify.hpp"

using namespace gsep;

namespace {

// Terms over the single variable x with at most `max_leaves` leaves, as text.
std::vector<std::string> one_variable_terms(std::size_t max_leaves) {
  std::vector<std::vector<std::string>> by_size(max_leaves + 1);
  by_size[1] = {"x"};
  for (std::size_t n = 2; n <= max_leaves; ++n) {
    for (std::size_t l = 1; l < n; ++l) {
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[n - l]) by_size[n].push_back("(" + a + "*" + b + ")");
    }
  }
  std::vector<std::string> all;
  for (const auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

std::string instantiate(const Term& t, const std::map<std::string, std::string>& sigma) {
  if (t.is_leaf()) return sigma.at(t.var().name());
  return "(" + instantiate(t.left(), sigma) + "*" + instantiate(t.right(), sigma) + ")";
}

// Searches for an instantiation of every variable by a one-variable term.
bool brute_unifiable(const Term& s, const Term& t, const std::vector<std::string>& pool) {
  std::vector<std::string> vars;
  for (const auto& v : variables(s)) vars.push_back(v.name());
  for (const auto& v : variables(t)) {
    if (std::find(vars.begin(), vars.end(), v.name()) == vars.end()) vars.push_back(v.name());
  }
  std::map<std::string, std::string> sigma;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) return instantiate(s, sigma) == instantiate(t, sigma);
    for (const auto& term : pool) {
      sigma[vars[i]] = term;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

Term random_term(std::mt19937_64& rng, std::size_t leaves) {
  if (leaves == 1) return Term::var(std::string(1, static_cast<char>('x' + rng() % 3)));
  const std::size_t left = 1 + rng() % (leaves - 1);
  return random_term(rng, left) * random_term(rng, leaves - left);
}

}  // namespace

TEST(Unify, SolvableExampleGivesTheExpectedUnifier) {
  const Term s = parse_term("(x*y)*(z*y)");
  const Term t = parse_term("z*((x*y)*(x*x))");
  const UnifyOutcome u = unify(s, t);
  ASSERT_TRUE(u.unifiable());
  EXPECT_EQ(render_term(*u.unifier->lookup(VarId("y"))), "x*x");
  EXPECT_EQ(render_term(*u.unifier->lookup(VarId("z"))), "x*(x*x)");
  EXPECT_FALSE(u.unifier->lookup(VarId("x")).has_value());
  const Term expected = parse_term("(x*(x*x))*((x*(x*x))*(x*x))");
  EXPECT_EQ(apply_subst(*u.unifier, s), expected);
  EXPECT_EQ(apply_subst(*u.unifier, t), expected);
}

TEST(Unify, CycleExampleFailsOnOccursCheck) {
  const UnifyOutcome u =
      unify(parse_term("(x*y)*(z*w)"), parse_term("((w*u)*x)*((y*v)*z)"));
  ASSERT_FALSE(u.unifiable());
  ASSERT_FALSE(u.trace.empty());
  EXPECT_EQ(u.trace.back().rule, Rule::Check);
  EXPECT_EQ(u.trace.back().consumed.to_string(), "x = (x*v)*u");
}

TEST(Unify, AcyclicNonUnifiableExampleDerivesXEqualsXX) {
  const UnifyOutcome u = unify(parse_term("(x*y)*(z*y)"), parse_term("z*((y*y)*(x*x))"));
  ASSERT_FALSE(u.unifiable());
  EXPECT_EQ(u.trace.back().rule, Rule::Check);
  EXPECT_EQ(u.trace.back().consumed.to_string(), "x = x*x");
  EXPECT_EQ(u.trace.back().produced, std::vector<Statement>{Statement::contradiction()});
}

TEST(Unify, SmallCases) {
  const UnifyOutcome same = unify(parse_term("x*(y*x)"), parse_term("x*(y*x)"));
  ASSERT_TRUE(same.unifiable());
  EXPECT_TRUE(same.unifier->empty());

  const UnifyOutcome occurs = unify(parse_term("x"), parse_term("x*x"));
  EXPECT_FALSE(occurs.unifiable());
  ASSERT_EQ(occurs.trace.size(), 1u);
  EXPECT_EQ(occurs.trace[0].rule, Rule::Check);

  const UnifyOutcome swap = unify(parse_term("x*y"), parse_term("y*x"));
  ASSERT_TRUE(swap.unifiable());
  EXPECT_EQ(apply_subst(*swap.unifier, parse_term("x*y")), parse_term("x*x"));
}

TEST(ApplySubst, ReplacesSimultaneouslyAndRejectsCycles) {
  EXPECT_EQ(apply_subst(Substitution(), parse_term("x*y")), parse_term("x*y"));
  Substitution sigma({{VarId("y"), parse_term("x*x")}});
  EXPECT_EQ(apply_subst(sigma, parse_term("x*y")), parse_term("x*(x*x)"));
  Substitution cyclic({{VarId("x"), parse_term("y*y")}, {VarId("y"), parse_term("x")}});
  EXPECT_THROW(apply_subst(cyclic, parse_term("x")), InvalidArgument);
}

TEST(AbstractSeparability, CollapsesToOneVariable) {
  const auto swap = decide_abstract_separability(parse_term("x*y"), parse_term("y*x"));
  ASSERT_EQ(swap.verdict, AbstractVerdict::NotSeparableInAnyGroupoid);
  EXPECT_EQ(*swap.witness->lookup(VarId("x")), parse_term("x"));
  EXPECT_EQ(*swap.witness->lookup(VarId("y")), parse_term("x"));

  const Term s = parse_term("(x*y)*z"), t = parse_term("(x*x)*(x*x)");
  const auto r = decide_abstract_separability(s, t);
  ASSERT_EQ(r.verdict, AbstractVerdict::NotSeparableInAnyGroupoid);
  EXPECT_EQ(*r.witness->lookup(VarId("y")), parse_term("x"));
  EXPECT_EQ(*r.witness->lookup(VarId("z")), parse_term("x*x"));
  EXPECT_EQ(apply_subst(*r.witness, s), t);

  EXPECT_EQ(decide_abstract_separability(parse_term("(x1*x2)*x3"), parse_term("x1*(x2*x3)")).verdict,
            AbstractVerdict::SeparableInSomeGroupoid);
}

// Soundness and replayability on random pairs, and agreement with a search
// over one-variable instantiations of up to 7 leaves.
TEST(Unify, AgreesWithInstantiationSearch) {
  const auto pool = one_variable_terms(7);
  std::mt19937_64 rng(31);
  int unifiable = 0, checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Term s = random_term(rng, 1 + rng() % 4);
    const Term t = random_term(rng, 1 + rng() % 4);
    const UnifyOutcome u = unify(s, t);
    for (const auto& step : u.trace) ASSERT_TRUE(replay(step)) << rule_name(step.rule);
    if (u.unifiable()) {
      ++unifiable;
      ASSERT_EQ(apply_subst(*u.unifier, s), apply_subst(*u.unifier, t));
      for (const auto& [v, b] : u.unifier->bindings()) {
        for (const auto& [w, unused] : u.unifier->bindings()) ASSERT_FALSE(occurs_in(w, b));
      }
    } else {
      ASSERT_EQ(u.trace.back().rule, Rule::Check);
    }
    // The pool is too large for three free variables; skip those instances.
    if (joint_variables(s, t).size() > 2) continue;
    ++checked;
    ASSERT_EQ(brute_unifiable(s, t, pool), u.unifiable())
        << render_term(s) << " vs " << render_term(t);
  }
  EXPECT_GT(unifiable, 30);
  EXPECT_GT(checked, 100);
}

TEST(Unify, ThreeVariableInstancesAgreeWithSmallerPool) {
  const auto pool = one_variable_terms(4);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const Term s = random_term(rng, 2 + rng() % 3);
    const Term t = random_term(rng, 2 + rng() % 3);
    const bool found = brute_unifiable(s, t, pool);
    if (found) ASSERT_TRUE(unify(s, t).unifiable()) << render_term(s) << " vs " << render_term(t);
  }
}

TEST(Replay, RejectsTamperedSteps) {
  const UnifyOutcome u = unify(parse_term("(x*y)*(z*y)"), parse_term("z*((x*y)*(x*x))"));
  TraceStep step = u.trace.front();
  ASSERT_TRUE(replay(step));
  std::swap(step.produced[0], step.produced[1]);
  EXPECT_FALSE(replay(step));
}
