#include "gsep/cayley.hpp"

#include <set>
#include <string>

#include "gsep/errors.hpp"

namespace gsep {

CayleyGroupoid::CayleyGroupoid(std::size_t order, std::vector<Element> table)
    : order_(order), table_(std::move(table)) {
  if (order_ == 0) throw InvalidArgument("groupoid order must be at least 1");
  if (table_.size() != order_ * order_) throw InvalidArgument("table must have n*n entries");
  for (auto e : table_) {
    if (e >= order_) throw InvalidArgument("table entry " + std::to_string(e) + " out of range");
  }
}

Element eval_cayley(const CayleyGroupoid& g, const Term& t, const Environment& env) {
  if (t.is_leaf()) {
    auto it = env.find(t.var());
    if (it == env.end()) throw InvalidArgument("no value for variable '" + t.var().name() + "'");
    if (it->second >= g.order()) {
      throw InvalidArgument("value of '" + t.var().name() + "' is not an element");
    }
    return it->second;
  }
  return g.op(eval_cayley(g, t.left(), env), eval_cayley(g, t.right(), env));
}

CayleyGroupoid deranged_groupoid(std::size_t n, std::span<const Element> f, Side side) {
  if (n < 2) throw InvalidArgument("a deranged groupoid needs at least 2 elements");
  if (f.size() != n) throw InvalidArgument("map must be defined on every element");
  for (Element x = 0; x < n; ++x) {
    if (f[x] >= n) throw InvalidArgument("map leaves the carrier");
    if (f[x] == x) throw InvalidArgument("map has fixed point " + std::to_string(x));
  }
  std::vector<Element> table(n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) table[x * n + y] = side == Side::Left ? f[x] : f[y];
  }
  return CayleyGroupoid(n, std::move(table));
}

CayleyGroupoid product_groupoid(const CayleyGroupoid& g, const CayleyGroupoid& h,
                                std::size_t max_order) {
  const std::size_t m = g.order();
  const std::size_t k = h.order();
  if (m * k > max_order) {
    throw BudgetExceeded("product order " + std::to_string(m * k) + " exceeds bound " +
                         std::to_string(max_order));
  }
  const std::size_t n = m * k;
  std::vector<Element> table(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Element first = g.op(a / k, b / k);
      const Element second = h.op(a % k, b % k);
      table[a * n + b] = static_cast<Element>(first * k + second);
    }
  }
  return CayleyGroupoid(n, std::move(table));
}

CayleyGroupoid subgroupoid(const CayleyGroupoid& g, std::span<const Element> elements) {
  std::vector<long> index(g.order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] >= g.order() || index[elements[i]] != -1) {
      throw InvalidArgument("subgroupoid elements must be distinct members of the groupoid");
    }
    index[elements[i]] = static_cast<long>(i);
  }
  const std::size_t n = elements.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const long c = index[g.op(elements[a], elements[b])];
      if (c < 0) throw InvalidArgument("subset is not closed under the operation");
      table[a * n + b] = static_cast<Element>(c);
    }
  }
  return CayleyGroupoid(n, std::move(table));
}

std::vector<VarId> joint_variables(const Term& s, const Term& t) {
  auto vars = variables(s);
  std::set<VarId> seen(vars.begin(), vars.end());
  for (auto& v : variables(t)) {
    if (seen.insert(v).second) vars.push_back(v);
  }
  return vars;
}

namespace {

// A term flattened to postfix form over variable slots, for fast repeated
// evaluation. Negative entries are the operation, others are slot indices.
class Program {
 public:
  Program(const Term& t, const std::vector<VarId>& vars) {
    compile(t, vars);
    stack_.resize(code_.size());
  }

  Element run(const CayleyGroupoid& g, const std::vector<Element>& values) {
    std::size_t sp = 0;
    for (int c : code_) {
      if (c >= 0) {
        stack_[sp++] = values[static_cast<std::size_t>(c)];
      } else {
        const Element r = stack_[--sp];
        const Element l = stack_[--sp];
        stack_[sp++] = g.op(l, r);
      }
    }
    return stack_[0];
  }

 private:
  void compile(const Term& t, const std::vector<VarId>& vars) {
    if (t.is_leaf()) {
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == t.var()) {
          code_.push_back(static_cast<int>(i));
          return;
        }
      }
      throw InvalidArgument("variable missing from the variable list");
    }
    compile(t.left(), vars);
    compile(t.right(), vars);
    code_.push_back(-1);
  }

  std::vector<int> code_;
  std::vector<Element> stack_;
};

}  // namespace

SeparationVerdict separates_exhaustive(const CayleyGroupoid& g, const Term& s, const Term& t,
                                       std::uint64_t budget) {
  const auto vars = joint_variables(s, t);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (total > budget / g.order()) {
      throw BudgetExceeded("exhaustive search over " + std::to_string(vars.size()) +
                           " variables exceeds the evaluation budget " + std::to_string(budget));
    }
    total *= g.order();
  }
  Program ps(s, vars);
  Program pt(t, vars);
  std::vector<Element> values(vars.size(), 0);
  const Element n = static_cast<Element>(g.order());
  for (std::uint64_t count = 0; count < total; ++count) {
    if (ps.run(g, values) == pt.run(g, values)) {
      Assignment a;
      for (std::size_t i = 0; i < vars.size(); ++i) a.emplace_back(vars[i], values[i]);
      return {false, std::move(a)};
    }
    // Odometer with the first variable most significant.
    for (std::size_t i = vars.size(); i-- > 0;) {
      if (++values[i] < n) break;
      values[i] = 0;
    }
  }
  return {true, std::nullopt};
}

AntiassociativityVerdict is_k_antiassociative(const CayleyGroupoid& g, std::size_t k,
                                              std::uint64_t budget) {
  if (k < 2) throw InvalidArgument("k-antiassociativity needs k >= 2");
  const auto terms = enumerate_ordered_terms(k);
  AntiassociativityVerdict out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      auto v = separates_exhaustive(g, terms[i], terms[j], budget);
      ++out.pairs_checked;
      if (!v.separated) {
        out.failing_pair.emplace(terms[i], terms[j]);
        out.counterexample = std::move(v.counterexample);
        return out;
      }
    }
  }
  out.holds = true;
  return out;
}

}  // namespace gsep
