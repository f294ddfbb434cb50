#include <gtest/gtest.h>

#include <random>

#include "gsep/errors.hpp"
#include "gsep/synthesis.hpp"
#include "gsep/verification.hpp"
#include "gsep/worked_examples.hpp"

using namespace gsep;

namespace {

Term random_term(std::mt19937_64& rng, std::size_t leaves, std::size_t nvars) {
  if (leaves == 1) return Term::var(std::string(1, static_cast<char>('a' + rng() % nvars)));
  const std::size_t left = 1 + rng() % (leaves - 1);
  return random_term(rng, left, nvars) * random_term(rng, leaves - left, nvars);
}

// Direct scan for a variable whose path in one term properly extends its
// path in the other.
bool has_cover(const Term& s, const Term& t) {
  for (const auto& a : occurrences(s)) {
    for (const auto& b : occurrences(t)) {
      if (a.var == b.var && a.path != b.path &&
          (a.path.is_prefix_of(b.path) || b.path.is_prefix_of(a.path))) {
        return true;
      }
    }
  }
  return false;
}

bool brute_separated(const VecGroupoid& g, const Term& s, const Term& t) {
  return separates_exhaustive(to_cayley(g), s, t).separated;
}

std::vector<std::string> sorted_summands(const OpSum& sum) {
  std::vector<std::string> out;
  for (const auto& op : sum.summands()) out.push_back(op.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(CoverPair, Examples) {
  auto w = find_cover_pair(parse_term("(x1*x2)*x3"), parse_term("x1*(x2*x3)"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->variable.name(), "x1");
  EXPECT_EQ(w->shallow.str(), "l");
  EXPECT_EQ(w->shallow_side, TermSide::T);
  EXPECT_EQ(w->deep.str(), "ll");
  EXPECT_EQ(w->extension().str(), "l");

  auto w2 = find_cover_pair(parse_term("x*p"), parse_term("(x*y)*q"));
  ASSERT_TRUE(w2.has_value());
  EXPECT_EQ(w2->variable.name(), "x");
  EXPECT_EQ(w2->shallow.str(), "l");
  EXPECT_EQ(w2->deep.str(), "ll");

  EXPECT_FALSE(find_cover_pair(parse_term("x*y"), parse_term("y*x")).has_value());
}

TEST(CoverPair, ExistenceMatchesDirectScan) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const Term s = random_term(rng, 1 + rng() % 5, 3);
    const Term t = random_term(rng, 1 + rng() % 5, 3);
    const auto w = find_cover_pair(s, t);
    ASSERT_EQ(w.has_value(), has_cover(s, t));
    if (!w) continue;
    const Term& shallow_term = w->shallow_side == TermSide::S ? s : t;
    const Term& deep_term = w->deep_side == TermSide::S ? s : t;
    EXPECT_EQ(subterm_at(shallow_term, w->shallow), Term::var(w->variable));
    EXPECT_EQ(subterm_at(deep_term, w->deep), Term::var(w->variable));
    EXPECT_TRUE(w->shallow.is_proper_prefix_of(w->deep));
  }
}

TEST(SynthCover, AssociativityPairGivesFourElementAntiassociativeGroupoid) {
  const Term s = parse_term("(x1*x2)*x3"), t = parse_term("x1*(x2*x3)");
  const Certificate c = synth_cover(*find_cover_pair(s, t));
  EXPECT_EQ(c.opsum.to_string(), "||1,l,0|| + ||1,l,1||'");
  EXPECT_EQ(c.lambda, (std::vector<Register>{0}));
  const CayleyGroupoid table = to_cayley(c.groupoid);
  ASSERT_EQ(table.order(), 4u);
  EXPECT_TRUE(is_k_antiassociative(table, 3).holds);
}

TEST(SynthCover, DeeperShallowPath) {
  const auto terms = enumerate_ordered_terms(4);
  const auto w = cover_from_disagreement(terms[0], terms[1]);
  EXPECT_EQ(w.shallow.str(), "ll");
  EXPECT_EQ(w.extension().str(), "l");
  const Certificate c = synth_cover(w);
  EXPECT_EQ(c.opsum.to_string(), "||1,ll,0|| + ||1,l,1||'");
  EXPECT_TRUE(brute_separated(c.groupoid, terms[0], terms[1]));
}

TEST(SynthCover, BareVariableUsesOnlyTheTweakedSummand) {
  const Term s = parse_term("x"), t = parse_term("(y*x)*y");
  const auto w = find_cover_pair(s, t);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->shallow.empty());
  const Certificate c = synth_cover(*w);
  EXPECT_EQ(c.opsum.to_string(), "||1,lr,1||'");
  EXPECT_EQ(c.lambda, (std::vector<Register>{1}));
  EXPECT_TRUE(verify_parity_certificate(c.groupoid, s, t, c.lambda));
  EXPECT_TRUE(brute_separated(c.groupoid, s, t));
}

// Component 0 of the shallow term is x[1]; of the deep term x[1] + 1.
TEST(SynthCover, ComponentZeroCarriesTheVariable) {
  std::mt19937_64 rng(40);
  int covered = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Term s = random_term(rng, 2 + rng() % 4, 3);
    const Term t = random_term(rng, 2 + rng() % 4, 3);
    const auto w = find_cover_pair(s, t);
    if (!w || w->shallow.empty()) continue;
    ++covered;
    const Certificate c = synth_cover(*w);
    const Term& shallow_term = w->shallow_side == TermSide::S ? s : t;
    const Term& deep_term = w->deep_side == TermSide::S ? s : t;
    const auto vars = joint_variables(s, t);
    for (int k = 0; k < 20; ++k) {
      VecEnvironment env;
      for (const auto& v : vars) {
        BitVec b(c.groupoid.dim());
        for (std::size_t i = 0; i < b.size(); ++i) b.set(i, rng() & 1);
        env.emplace(v, b);
      }
      const bool x1 = env.at(w->variable).get(*c.groupoid.position(1));
      const std::size_t z = *c.groupoid.position(0);
      ASSERT_EQ(eval_term_vec(c.groupoid, shallow_term, env).get(z), x1);
      ASSERT_EQ(eval_term_vec(c.groupoid, deep_term, env).get(z), !x1);
    }
  }
  EXPECT_GT(covered, 50);
}

TEST(FindCycle, ThreeVariableExample) {
  const auto w = find_cycle(cycle_example_s(), cycle_example_t());
  ASSERT_TRUE(w.has_value());
  ASSERT_EQ(w->k(), 3u);
  std::vector<std::string> vars, p, q;
  for (std::size_t i = 0; i < 3; ++i) {
    vars.push_back(w->entries[i].var.name());
    p.push_back(w->p[i].str());
    q.push_back(w->q[i].str());
  }
  EXPECT_EQ(vars, (std::vector<std::string>{"y0", "y1", "y2"}));
  EXPECT_EQ(p, (std::vector<std::string>{"ll", "lr", "rr"}));
  EXPECT_EQ(q, (std::vector<std::string>{"r", "", "r"}));
  EXPECT_EQ(w->f, (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_TRUE(w->related(1, 2));
  EXPECT_FALSE(w->related(0, 1));
  EXPECT_TRUE(w->equivalent(1, 2));
  EXPECT_FALSE(w->in_n(1));
  EXPECT_EQ(w->entries[0].up.side, TermSide::S);
  EXPECT_EQ(w->entries[1].down.path.str(), "llr");
  EXPECT_EQ(w->entries[0].down.path.str(), "rrr");
  EXPECT_NO_THROW(validate_cycle(*w));
}

TEST(FindCycle, FourVariableExample) {
  const auto w = find_cycle(parse_term("(x*y)*(z*w)"), parse_term("((w*u)*x)*((y*v)*z)"));
  ASSERT_TRUE(w.has_value());
  std::vector<std::string> vars;
  for (const auto& e : w->entries) vars.push_back(e.var.name());
  EXPECT_EQ(vars, (std::vector<std::string>{"x", "w", "z", "y"}));
  EXPECT_EQ(w->entries[0].up.side, TermSide::S);
  EXPECT_EQ(w->entries[1].down.side, TermSide::T);
  EXPECT_EQ(w->entries[1].up.side, TermSide::S);
  EXPECT_EQ(w->entries[2].down.side, TermSide::T);
  const Certificate c = synth_cycle(*w);
  EXPECT_TRUE(verify_parity_certificate(c.groupoid, parse_term("(x*y)*(z*w)"),
                                        parse_term("((w*u)*x)*((y*v)*z)"), c.lambda));
}

TEST(FindCycle, TwoCycleWrapsTheClassAround) {
  const Term s = parse_term("y0*y1"), t = parse_term("(y1*z)*y0");
  const auto w = find_cycle(s, t);
  ASSERT_TRUE(w.has_value());
  ASSERT_EQ(w->k(), 2u);
  EXPECT_EQ(w->q[0].str(), "l");
  EXPECT_TRUE(w->q[1].empty());
  EXPECT_EQ(w->f, (std::vector<std::size_t>{0, 0}));
  const Certificate c = synth_cycle(*w);
  EXPECT_TRUE(affine_separation_decision(c.groupoid, s, t).separated);
  EXPECT_TRUE(brute_separated(c.groupoid, s, t));
}

TEST(FindCycle, NoLongCycleForAssociativity) {
  EXPECT_FALSE(find_cycle(parse_term("(x1*x2)*x3"), parse_term("x1*(x2*x3)")).has_value());
  EXPECT_FALSE(find_cycle(search_example_s(), search_example_t()).has_value());
}

TEST(SynthCycle, ReproducesTheFiveSummands) {
  const auto w = *find_cycle(cycle_example_s(), cycle_example_t());
  const Certificate c = synth_cycle(w);
  std::vector<std::string> expected{"||3,ll,0||", "||4,lr,1||", "||4,rr,2||", "||4,r,3||'",
                                    "||3,r,4||"};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(sorted_summands(c.opsum), expected);
  EXPECT_EQ(c.lambda, (std::vector<Register>{0, 1, 2}));
}

// Sum of components 0..2 is y1[4] for s and y1[4] + 1 for t.
TEST(SynthCycle, ParityOfTheFirstThreeComponents) {
  const Term s = cycle_example_s(), t = cycle_example_t();
  const Certificate c = synth_cycle(*find_cycle(s, t));
  const auto vars = joint_variables(s, t);
  BitVec lambda(c.groupoid.dim());
  for (Register r : {0u, 1u, 2u}) lambda.set(*c.groupoid.position(r), true);
  const auto ps = term_parity_form(c.groupoid, s, vars, lambda);
  const auto pt = term_parity_form(c.groupoid, t, vars, lambda);
  const BitVec y1_4 = BitVec::unit(c.groupoid.dim(), *c.groupoid.position(4));
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const BitVec want = vars[i].name() == "y1" ? y1_4 : BitVec(c.groupoid.dim());
    EXPECT_EQ(ps.row[i], want) << vars[i].name();
    EXPECT_EQ(pt.row[i], want) << vars[i].name();
  }
  EXPECT_FALSE(ps.constant);
  EXPECT_TRUE(pt.constant);
  EXPECT_TRUE(affine_separation_decision(c.groupoid, s, t).separated);
}

TEST(SynthCycle, UntweakedOperationGivesEqualParity) {
  const Term s = cycle_example_s(), t = cycle_example_t();
  const auto w = *find_cycle(s, t);
  const auto specs = cycle_op_specs(w, false);
  const VecGroupoid g = compile(build_op_sum(specs));
  std::mt19937_64 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    VecEnvironment env;
    for (const auto& v : joint_variables(s, t)) {
      BitVec b(g.dim());
      for (std::size_t i = 0; i < b.size(); ++i) b.set(i, rng() & 1);
      env.emplace(v, b);
    }
    const BitVec vs = eval_term_vec(g, s, env), vt = eval_term_vec(g, t, env);
    bool sum = false;
    for (Register r : {0u, 1u, 2u}) sum ^= vs.get(*g.position(r)) ^ vt.get(*g.position(r));
    ASSERT_FALSE(sum);
  }
}

TEST(CycleWitness, ValidationRejectsBrokenWitnesses) {
  const auto good = *find_cycle(cycle_example_s(), cycle_example_t());
  EXPECT_NO_THROW(make_cycle_witness(good.entries));

  auto bad_f = good;
  bad_f.f = {0, 1, 2};
  EXPECT_THROW(validate_cycle(bad_f), InvalidArgument);

  auto rotated = good.entries;
  std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
  EXPECT_THROW(make_cycle_witness(rotated), InvalidArgument);  // q0 empty

  auto repeated = good;
  repeated.entries[2].var = repeated.entries[0].var;
  EXPECT_THROW(validate_cycle(repeated), InvalidArgument);
  EXPECT_THROW(synth_cycle(repeated), InvalidArgument);
}

// Pairs with a cycle and no cover: the witness is valid, the columns match
// the occurrences, and the construction separates.
TEST(SynthCycle, RandomCyclicPairs) {
  std::mt19937_64 rng(55);
  int cycles = 0;
  for (int trial = 0; trial < 4000 && cycles < 60; ++trial) {
    const Term s = random_term(rng, 3 + rng() % 4, 4);
    const Term t = random_term(rng, 3 + rng() % 4, 4);
    if (find_cover_pair(s, t)) continue;
    const auto w = find_cycle(s, t);
    if (!w) continue;
    ++cycles;
    ASSERT_NO_THROW(validate_cycle(*w)) << render_term(s) << " vs " << render_term(t);
    for (std::size_t i = 0; i < w->k(); ++i) {
      const auto& next = w->entries[(i + 1) % w->k()];
      ASSERT_EQ(w->p[i] + w->q[i], next.down.path);
    }
    const Certificate c = synth_cycle(*w);
    ASSERT_TRUE(verify_parity_certificate(c.groupoid, s, t, c.lambda))
        << render_term(s) << " vs " << render_term(t);
    ASSERT_FALSE(unify(s, t).unifiable());
  }
  EXPECT_GT(cycles, 10);
}

TEST(Antiassociative, FactorCountsAndVerification) {
  const std::size_t expected[] = {1, 10, 91};
  for (std::size_t k = 3; k <= 5; ++k) {
    const AntiassocBuild b = build_k_antiassociative(k);
    ASSERT_EQ(b.factors.size(), expected[k - 3]);
    std::size_t dims = 0;
    for (const auto& f : b.factors) dims += f.certificate.groupoid.dim();
    EXPECT_EQ(b.groupoid.dim(), dims);
    const AntiassocCheck check = verify_antiassoc_build(b);
    EXPECT_TRUE(check.ok());
    if (k == 4) EXPECT_EQ(check.exhaustive_count(), 10u);
  }
  const AntiassocBuild k3 = build_k_antiassociative(3);
  EXPECT_EQ(to_cayley(k3.groupoid).order(), 4u);
  EXPECT_TRUE(is_k_antiassociative(to_cayley(k3.groupoid), 3).holds);
  EXPECT_THROW(build_k_antiassociative(2), InvalidArgument);
  EXPECT_THROW(build_k_antiassociative(6, 100), BudgetExceeded);
}

TEST(Antiassociative, VerificationCatchesTampering) {
  AntiassocBuild b = build_k_antiassociative(4);
  b.factors[3].certificate.lambda = {};
  EXPECT_FALSE(verify_antiassoc_build(b).ok());
  AntiassocBuild swapped = build_k_antiassociative(4);
  std::swap(swapped.factors[0].certificate.groupoid, swapped.factors[9].certificate.groupoid);
  const AntiassocCheck check = verify_antiassoc_build(swapped);
  EXPECT_FALSE(check.factors[0].compiled_matches);
  EXPECT_FALSE(check.ok());
  AntiassocBuild missing = build_k_antiassociative(4);
  missing.factors.pop_back();
  EXPECT_FALSE(verify_antiassoc_build(missing).ok());
}

TEST(Search, SeededOperationIsCertified) {
  SearchOptions opt;
  opt.seeds = {search_example_seed()};
  const auto r = search_separator(search_example_s(), search_example_t(), opt);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(r.candidates_tested, 1u);
  EXPECT_EQ(r.certificate->lambda, (std::vector<Register>{0, 1, 2}));
  EXPECT_EQ(r.certificate->opsum.to_string(),
            "||3,l,0|| + ||3,rl,1|| + ||4,rr,2|| + ||4,l,3|| + ||4,l,4||'");
  EXPECT_TRUE(brute_separated(r.certificate->groupoid, search_example_s(), search_example_t()));
}

TEST(Search, ZeroBudgetIsUnknown) {
  SearchOptions opt;
  opt.budget = 0;
  opt.seeds = {search_example_seed()};
  const auto r = search_separator(search_example_s(), search_example_t(), opt);
  EXPECT_FALSE(r.certificate.has_value());
  EXPECT_EQ(r.candidates_tested, 0u);
}

TEST(Search, UnseededSearchFindsASeparator) {
  const auto r = search_separator(search_example_s(), search_example_t());
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_TRUE(brute_separated(r.certificate->groupoid, search_example_s(), search_example_t()));
}

TEST(Search, CoveredPairsNeedAtMostTwoSummands) {
  std::mt19937_64 rng(61);
  int covered = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Term s = random_term(rng, 2 + rng() % 3, 3);
    const Term t = random_term(rng, 2 + rng() % 3, 3);
    if (!find_cover_pair(s, t)) continue;
    ++covered;
    SearchOptions opt;
    opt.max_summands = 2;
    const auto r = search_separator(s, t, opt);
    ASSERT_TRUE(r.certificate.has_value()) << render_term(s) << " vs " << render_term(t);
    EXPECT_LE(r.certificate->opsum.summands().size(), 2u);
  }
  EXPECT_GT(covered, 30);
}

TEST(Decide, PipelineExamples) {
  const auto swap = decide_finite_separability(parse_term("x*y"), parse_term("y*x"));
  EXPECT_EQ(swap.verdict, FiniteVerdict::NotSeparable);
  EXPECT_EQ(swap.construction, Construction::Unifier);
  EXPECT_TRUE(swap.unifier.has_value());
  EXPECT_FALSE(swap.certificate.has_value());

  const auto assoc = decide_finite_separability(parse_term("(x1*x2)*x3"), parse_term("x1*(x2*x3)"));
  EXPECT_EQ(assoc.verdict, FiniteVerdict::Separated);
  EXPECT_EQ(assoc.construction, Construction::Cover);

  const auto fig = decide_finite_separability(cycle_example_s(), cycle_example_t());
  EXPECT_EQ(fig.verdict, FiniteVerdict::Separated);
  EXPECT_EQ(fig.construction, Construction::Cycle);
  EXPECT_TRUE(fig.cycle.has_value());

  const auto hard = decide_finite_separability(search_example_s(), search_example_t());
  EXPECT_EQ(hard.verdict, FiniteVerdict::Separated);
  EXPECT_EQ(hard.construction, Construction::Search);

  SearchOptions none;
  none.budget = 0;
  const auto unknown = decide_finite_separability(search_example_s(), search_example_t(), none);
  EXPECT_EQ(unknown.verdict, FiniteVerdict::Unknown);
  EXPECT_FALSE(unknown.certificate.has_value());
}

// Never both a unifier and a certificate; certificates agree with brute force.
TEST(Decide, UnifierAndCertificateAreExclusive) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 300; ++trial) {
    const Term s = random_term(rng, 1 + rng() % 4, 3);
    const Term t = random_term(rng, 1 + rng() % 4, 3);
    const auto r = decide_finite_separability(s, t);
    ASSERT_FALSE(r.unifier.has_value() && r.certificate.has_value());
    ASSERT_EQ(r.verdict == FiniteVerdict::NotSeparable, unify(s, t).unifiable());
    ASSERT_NE(r.verdict, FiniteVerdict::Unknown) << render_term(s) << " vs " << render_term(t);
    if (r.certificate) {
      const auto& g = r.certificate->groupoid;
      const std::size_t bits = g.dim() * joint_variables(s, t).size();
      if (g.dim() <= 10 && bits <= 22) ASSERT_TRUE(brute_separated(g, s, t));
    }
  }
}
