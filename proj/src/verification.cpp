#include "gsep/verification.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gsep {

namespace {

BitVec lambda_vector(const VecGroupoid& g, const std::vector<Register>& lambda) {
  BitVec v(g.dim());
  for (Register r : lambda) {
    auto pos = g.position(r);
    if (!pos) throw InvalidArgument("register " + std::to_string(r) + " not in groupoid");
    v.flip(*pos);
  }
  return v;
}

}  // namespace

bool verify_parity_certificate(const VecGroupoid& g, const Term& s, const Term& t,
                               const std::vector<Register>& lambda) {
  const auto vars = joint_variables(s, t);
  const BitVec l = lambda_vector(g, lambda);
  const auto ps = term_parity_form(g, s, vars, l);
  const auto pt = term_parity_form(g, t, vars, l);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if ((ps.row[i] ^ pt.row[i]).any()) return false;
  }
  return ps.constant != pt.constant;
}

AffineDecision affine_separation_decision(const VecGroupoid& g, const Term& s, const Term& t) {
  const auto vars = joint_variables(s, t);
  const std::size_t d = g.dim();
  const auto fs = term_affine_form(g, s, vars);
  const auto ft = term_affine_form(g, t, vars);

  BitMatrix stacked(d, 0);
  for (std::size_t i = 0; i < vars.size(); ++i) stacked = stacked.hstack(fs.coeff[i] + ft.coeff[i]);
  const BitVec d0 = fs.constant ^ ft.constant;

  AffineDecision out;
  const SolveResult r = solve(stacked, d0);
  if (r.obstruction) {
    out.separated = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (r.obstruction->get(i)) out.lambda.push_back(g.indices()[i]);
    }
    if (!verify_parity_certificate(g, s, t, out.lambda)) {
      throw std::logic_error("affine decision produced an invalid parity certificate");
    }
    return out;
  }
  VecAssignment assignment;
  VecEnvironment env;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    BitVec v = r.solution->slice(i * d, d);
    env.emplace(vars[i], v);
    assignment.emplace_back(vars[i], std::move(v));
  }
  if (eval_term_vec(g, s, env) != eval_term_vec(g, t, env)) {
    throw std::logic_error("affine decision produced an assignment that does not equate the terms");
  }
  out.assignment = std::move(assignment);
  return out;
}

bool cross_check(const VecGroupoid& g, const Term& s, const Term& t, std::uint64_t budget) {
  const std::size_t nvars = joint_variables(s, t).size();
  const std::size_t bits = g.dim() * nvars;
  if (bits >= 64 || (std::uint64_t{1} << bits) > budget) {
    throw BudgetExceeded("cross check needs 2^" + std::to_string(bits) + " assignments");
  }
  const bool affine = affine_separation_decision(g, s, t).separated;
  const bool brute = separates_exhaustive(to_cayley(g), s, t, budget).separated;
  return affine == brute;
}

namespace {

Term random_term(std::mt19937_64& rng, std::size_t leaves, std::size_t nvars) {
  static const char* names[] = {"u", "v", "w"};
  if (leaves == 1) {
    return Term::var(names[std::uniform_int_distribution<std::size_t>(0, nvars - 1)(rng)]);
  }
  const std::size_t left = std::uniform_int_distribution<std::size_t>(1, leaves - 1)(rng);
  return Term::node(random_term(rng, left, nvars), random_term(rng, leaves - left, nvars));
}

Path random_path(std::mt19937_64& rng, std::size_t length) {
  std::string s;
  for (std::size_t i = 0; i < length; ++i) s.push_back(rng() & 1 ? 'r' : 'l');
  return Path::parse(s);
}

struct LemmaInstance {
  Term term;
  Path path;
  std::vector<OpSpec> specs;  // specs[0] is the summand under test
};

LemmaInstance random_instance(std::mt19937_64& rng) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t leaves = pick(2, 6);
  Term term = random_term(rng, leaves, pick(1, 3));
  auto nodes = node_paths(term);
  nodes.erase(nodes.begin());  // root
  Path p = nodes[pick(0, nodes.size() - 1)];

  std::vector<OpSpec> specs;
  const Register m = static_cast<Register>(pick(0, 3));
  const Register n = static_cast<Register>(pick(0, 3));
  specs.push_back({m, p, n, false});
  std::vector<Register> used_targets{n};
  const std::size_t extras = pick(0, 2);
  for (std::size_t e = 0; e < extras; ++e) {
    const Register target = static_cast<Register>(pick(0, 5));
    if (std::find(used_targets.begin(), used_targets.end(), target) != used_targets.end()) continue;
    used_targets.push_back(target);
    specs.push_back({static_cast<Register>(pick(0, 5)), random_path(rng, pick(1, 3)), target,
                     (rng() & 1) != 0});
  }
  return {std::move(term), std::move(p), std::move(specs)};
}

}  // namespace

LemmaReport lemma_harness(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LemmaReport report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    LemmaInstance inst = random_instance(rng);
    const Term sub = subterm_at(inst.term, inst.path);
    const auto vars = variables(inst.term);
    for (bool tweaked : {false, true}) {
      inst.specs[0].tweaked = tweaked;
      const OpSum sum = build_op_sum(inst.specs);
      const VecGroupoid g = compile(sum);
      const std::size_t out_pos = *g.position(inst.specs[0].n);
      const std::size_t in_pos = *g.position(inst.specs[0].m);
      const std::size_t bits = g.dim() * vars.size();
      const bool exhaustive = bits <= 16;
      const std::uint64_t count = exhaustive ? (std::uint64_t{1} << bits) : 256;
      if (exhaustive && !tweaked) ++report.exhaustive_trials;

      for (std::uint64_t a = 0; a < count; ++a) {
        VecEnvironment env;
        for (std::size_t i = 0; i < vars.size(); ++i) {
          BitVec v(g.dim());
          for (std::size_t b = 0; b < g.dim(); ++b) {
            const bool bit = exhaustive ? ((a >> (i * g.dim() + b)) & 1u) : (rng() & 1u);
            v.set(b, bit);
          }
          env.emplace(vars[i], std::move(v));
        }
        ++report.assignments_checked;
        const bool whole = eval_term_vec(g, inst.term, env).get(out_pos);
        const bool part = eval_term_vec(g, sub, env).get(in_pos);
        if (whole != (part != tweaked)) {
          (tweaked ? report.tweaked_lemma_failures : report.path_lemma_failures)++;
          if (report.failures.size() < 5) {
            std::ostringstream os;
            os << render_term(inst.term) << " at " << inst.path.display() << " under "
               << sum.to_string();
            report.failures.push_back(os.str());
          }
          break;
        }
      }
    }
    ++report.trials;
  }
  return report;
}

}  // namespace gsep
