#pragma once

// Explicit finite groupoids given by their Cayley tables, and exhaustive
// separation checks over them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gsep/term.hpp"

namespace gsep {

using Element = std::uint32_t;

class CayleyGroupoid {
 public:
  // `table` is row-major: table[a * n + b] = a * b.
  CayleyGroupoid(std::size_t order, std::vector<Element> table);

  std::size_t order() const noexcept { return order_; }
  Element op(Element a, Element b) const noexcept { return table_[a * order_ + b]; }
  const std::vector<Element>& table() const noexcept { return table_; }

  friend bool operator==(const CayleyGroupoid&, const CayleyGroupoid&) = default;

 private:
  std::size_t order_;
  std::vector<Element> table_;
};

using Environment = std::map<VarId, Element>;
using Assignment = std::vector<std::pair<VarId, Element>>;

Element eval_cayley(const CayleyGroupoid& g, const Term& t, const Environment& env);

enum class Side { Left, Right };

// x*y = f(x) (Left) or x*y = f(y) (Right) for a fixpoint-free f.
CayleyGroupoid deranged_groupoid(std::size_t n, std::span<const Element> f, Side side);

inline constexpr std::size_t kDefaultMaxProductOrder = std::size_t{1} << 16;

// Componentwise operation on pairs; (i, j) is encoded as i * |H| + j.
CayleyGroupoid product_groupoid(const CayleyGroupoid& g, const CayleyGroupoid& h,
                                std::size_t max_order = kDefaultMaxProductOrder);

// Restriction of g to `elements`, which must be closed under the operation.
// Element i of the result is elements[i].
CayleyGroupoid subgroupoid(const CayleyGroupoid& g, std::span<const Element> elements);

inline constexpr std::uint64_t kDefaultEvalBudget = std::uint64_t{1} << 26;

// Variables of s followed by the new variables of t, each in order of first
// occurrence. Assignments are enumerated lexicographically in this order.
std::vector<VarId> joint_variables(const Term& s, const Term& t);

struct SeparationVerdict {
  bool separated = false;
  // Lexicographically first assignment making s and t equal.
  std::optional<Assignment> counterexample;
};

// Throws BudgetExceeded when n^(#variables) exceeds `budget`.
SeparationVerdict separates_exhaustive(const CayleyGroupoid& g, const Term& s, const Term& t,
                                       std::uint64_t budget = kDefaultEvalBudget);

struct AntiassociativityVerdict {
  bool holds = false;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<Term, Term>> failing_pair;
  std::optional<Assignment> counterexample;
};

// Checks every pair of distinct k-ary ordered terms; the budget applies to
// each pair.
AntiassociativityVerdict is_k_antiassociative(const CayleyGroupoid& g, std::size_t k,
                                              std::uint64_t budget = kDefaultEvalBudget);

}  // namespace gsep
