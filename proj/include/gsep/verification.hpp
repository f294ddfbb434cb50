#pragma once

// Exact separation decisions for affine GF(2) groupoids and the harnesses
// that cross-check them against brute force.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsep/cayley.hpp"
#include "gsep/vec_groupoid.hpp"

namespace gsep {

using VecAssignment = std::vector<std::pair<VarId, BitVec>>;

struct AffineDecision {
  bool separated = false;
  // Set when separated: registers whose sum takes different constant values
  // on s and t.
  std::vector<Register> lambda;
  // Set when not separated: an assignment making s and t equal.
  std::optional<VecAssignment> assignment;
};

// With S + T = sum_i D_i.v_i + d0, the terms are separated iff d0 is not in
// the column space of [D_1 | ... | D_r]. Both kinds of witness are checked
// before returning.
AffineDecision affine_separation_decision(const VecGroupoid& g, const Term& s, const Term& t);

// True iff lambda.(s + t) has zero linear part and constant 1.
bool verify_parity_certificate(const VecGroupoid& g, const Term& s, const Term& t,
                               const std::vector<Register>& lambda);

// Affine decision versus separates_exhaustive on the Cayley table. Throws
// BudgetExceeded when 2^(dim * #vars) exceeds `budget`.
bool cross_check(const VecGroupoid& g, const Term& s, const Term& t,
                 std::uint64_t budget = kDefaultEvalBudget);

struct LemmaReport {
  std::size_t trials = 0;
  std::size_t exhaustive_trials = 0;
  std::uint64_t assignments_checked = 0;
  std::size_t path_lemma_failures = 0;
  std::size_t tweaked_lemma_failures = 0;
  std::vector<std::string> failures;  // first few, human readable

  bool ok() const noexcept { return path_lemma_failures == 0 && tweaked_lemma_failures == 0; }
};

// Random (op sum, term, path) instances. For each, component n of s must
// equal component m of the subterm at p, plus one when the summand is
// tweaked. Assignments are exhaustive when dim * #vars <= 16.
LemmaReport lemma_harness(std::size_t trials, std::uint64_t seed);

}  // namespace gsep
