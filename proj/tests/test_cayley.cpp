#include <gtest/gtest.h>

#include <functional>

#include "gsep/cayley.hpp"
#include "gsep/errors.hpp"
#include "gsep/worked_examples.hpp"

using namespace gsep;

namespace {

std::size_t leaf_depth(const Term& t, bool leftmost) {
  std::size_t d = 0;
  const Term* cur = &t;
  while (!cur->is_leaf()) {
    cur = leftmost ? &cur->left() : &cur->right();
    ++d;
  }
  return d;
}

// All assignments of n elements to `count` variables, first variable slowest.
void for_each_assignment(std::size_t n, std::size_t count,
                         const std::function<void(const std::vector<Element>&)>& f) {
  std::vector<Element> vals(count, 0);
  for (;;) {
    f(vals);
    std::size_t i = count;
    while (i > 0 && ++vals[i - 1] == n) vals[--i] = 0;
    if (i == 0) return;
  }
}

}  // namespace

TEST(CayleyGroupoid, ValidatesTables) {
  EXPECT_THROW(CayleyGroupoid(0, {}), InvalidArgument);
  EXPECT_THROW(CayleyGroupoid(2, {0, 1, 1}), InvalidArgument);
  EXPECT_THROW(CayleyGroupoid(2, {0, 1, 2, 0}), InvalidArgument);
  CayleyGroupoid g(2, {0, 1, 1, 0});
  EXPECT_EQ(g.op(1, 1), 0u);
  Environment env{{VarId("x"), 1}, {VarId("y"), 1}};
  EXPECT_EQ(eval_cayley(g, parse_term("x*y"), env), 0u);
  EXPECT_THROW(eval_cayley(g, parse_term("x*z"), env), InvalidArgument);
}

TEST(Deranged, RejectsFixedPoints) {
  const Element id[] = {0, 1};
  EXPECT_THROW(deranged_groupoid(2, id, Side::Left), InvalidArgument);
  const Element shift[] = {1, 0};
  EXPECT_EQ(deranged_groupoid(2, shift, Side::Right).table(), (std::vector<Element>{1, 0, 1, 0}));
}

// Each ordered term evaluates to its leftmost variable plus that variable's
// depth in the left-deranged Z2, and likewise on the right in Z3.
TEST(Deranged, ValueDependsOnlyOnOuterDepths) {
  const auto z2 = left_deranged_z2();
  const auto z3 = right_deranged_z3();
  for (std::size_t k = 2; k <= 5; ++k) {
    for (const auto& t : enumerate_ordered_terms(k)) {
      const std::size_t dl = leaf_depth(t, true);
      const std::size_t dr = leaf_depth(t, false);
      for (std::size_t n : {2u, 3u}) {
        for_each_assignment(n, k, [&](const std::vector<Element>& v) {
          Environment env;
          for (std::size_t i = 0; i < k; ++i) env.emplace(ordered_var(i + 1), v[i]);
          if (n == 2) {
            ASSERT_EQ(eval_cayley(z2, t, env), (v[0] + dl) % 2);
          } else {
            ASSERT_EQ(eval_cayley(z3, t, env), (v[k - 1] + dr) % 3);
          }
        });
      }
    }
  }
}

TEST(Product, ComponentwiseAndFourAntiassociative) {
  const auto z2 = left_deranged_z2();
  const auto z3 = right_deranged_z3();
  const auto p = product_groupoid(z2, z3);
  ASSERT_EQ(p.order(), 6u);
  for (Element a = 0; a < 6; ++a) {
    for (Element b = 0; b < 6; ++b) {
      EXPECT_EQ(p.op(a, b), z2.op(a / 3, b / 3) * 3 + z3.op(a % 3, b % 3));
    }
  }
  const auto v = is_k_antiassociative(p, 4);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.pairs_checked, 10u);
  EXPECT_FALSE(is_k_antiassociative(z2, 4).holds);
  EXPECT_FALSE(is_k_antiassociative(z3, 4).holds);
  EXPECT_THROW(product_groupoid(p, p, 30), BudgetExceeded);
}

TEST(Subgroupoid, RestrictsClosedSubsets) {
  CayleyGroupoid g(3, {0, 0, 2, 0, 1, 2, 2, 2, 2});
  const Element sub[] = {0, 2};
  const auto h = subgroupoid(g, sub);
  EXPECT_EQ(h.table(), (std::vector<Element>{0, 1, 1, 1}));
  const Element open[] = {0, 1};
  EXPECT_THROW(subgroupoid(CayleyGroupoid(3, {2, 2, 2, 2, 2, 2, 2, 2, 2}), open),
               InvalidArgument);
}

TEST(JointVariables, SFirstThenNewVariablesOfT) {
  const auto vars = joint_variables(parse_term("(y*x)*y"), parse_term("z*(x*w)"));
  std::vector<std::string> names;
  for (const auto& v : vars) names.push_back(v.name());
  EXPECT_EQ(names, (std::vector<std::string>{"y", "x", "z", "w"}));
}

// Counterexample is the first equating assignment in odometer order.
TEST(SeparatesExhaustive, FirstCounterexampleMatchesScan) {
  CayleyGroupoid g(3, {1, 2, 0, 0, 0, 1, 2, 1, 1});
  const Term s = parse_term("(x*y)*z");
  const Term t = parse_term("x*(y*z)");
  std::optional<std::vector<Element>> first;
  for_each_assignment(3, 3, [&](const std::vector<Element>& v) {
    if (first) return;
    Environment env{{VarId("x"), v[0]}, {VarId("y"), v[1]}, {VarId("z"), v[2]}};
    if (eval_cayley(g, s, env) == eval_cayley(g, t, env)) first = v;
  });
  const auto verdict = separates_exhaustive(g, s, t);
  ASSERT_EQ(verdict.separated, !first.has_value());
  if (first) {
    ASSERT_TRUE(verdict.counterexample.has_value());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ((*verdict.counterexample)[i].second, (*first)[i]);
  }
  EXPECT_THROW(separates_exhaustive(g, s, t, 26), BudgetExceeded);
  EXPECT_FALSE(separates_exhaustive(g, s, s).separated);
}

TEST(Antiassociativity, AssociativeTablesFail) {
  CayleyGroupoid z2_add(2, {0, 1, 1, 0});
  const auto v = is_k_antiassociative(z2_add, 3);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.failing_pair.has_value());
  EXPECT_TRUE(v.counterexample.has_value());
  EXPECT_TRUE(is_k_antiassociative(left_deranged_z2(), 3).holds);
}
