#pragma once

// Constructive separation: cover and cycle constructions, the
// k-antiassociative builder, and a bounded search over small op sums.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsep/term.hpp"
#include "gsep/unify.hpp"
#include "gsep/vec_groupoid.hpp"

namespace gsep {

enum class TermSide { S, T };
const char* side_name(TermSide side);

struct OccurrenceRef {
  TermSide side;
  Path path;
  VarId var;
  friend bool operator==(const OccurrenceRef&, const OccurrenceRef&) = default;
};

// A variable occurring at `shallow` in one term and at `deep` = shallow . w
// (w nonempty) in the other.
struct CoverWitness {
  VarId variable;
  TermSide shallow_side;
  Path shallow;
  TermSide deep_side;
  Path deep;

  Path extension() const { return deep.suffix_after(shallow); }
};

// Smallest variable name first, then shortest shallow path, then
// lexicographic on (shallow, deep).
std::optional<CoverWitness> find_cover_pair(const Term& s, const Term& t);
// Cover witness for two distinct ordered terms, from their leftmost
// disagreement.
CoverWitness cover_from_disagreement(const Term& s, const Term& t);

enum class Construction { Cover, Cycle, Search, Unifier };
const char* construction_name(Construction c);

struct Certificate {
  Construction kind;
  OpSum opsum;
  VecGroupoid groupoid;
  // Registers whose GF(2) sum differs between s and t under every assignment.
  std::vector<Register> lambda;
};

// ||1,q,0|| + ||1,w,1||' with lambda = {0}; when q is the root path the
// first summand is dropped and lambda = {1}.
Certificate synth_cover(const CoverWitness& w);

struct CycleEntry {
  VarId var;
  OccurrenceRef up;    // above the down occurrence of the next entry
  OccurrenceRef down;  // below the up occurrence of the previous entry
};

// A cycle y0 -> y1 -> ... -> y(k-1) -> y0 of distinct variables where y_i's
// up occurrence has path p_i and y_(i+1)'s down occurrence has path
// p_i . q_i in the other term, with q_0 nonempty.
struct CycleWitness {
  std::vector<CycleEntry> entries;
  std::vector<Path> p;
  std::vector<Path> q;
  std::vector<std::size_t> f;  // least member of each index's class

  std::size_t k() const noexcept { return entries.size(); }
  // i ~ j iff j = i + 1 (mod k) and q_i is the root path.
  bool related(std::size_t i, std::size_t j) const;
  bool equivalent(std::size_t i, std::size_t j) const { return f[i] == f[j]; }
  bool in_n(std::size_t i) const { return !q[i].empty(); }
};

// Builds p, q and f from the entries. Throws InvalidArgument when the
// entries do not form a cycle of the required kind.
CycleWitness make_cycle_witness(std::vector<CycleEntry> entries);
// Throws InvalidArgument describing the first violated invariant.
void validate_cycle(const CycleWitness& w);

// Minimum-length cycle of length >= 2 with a strict edge, rotated so the
// strict edge comes first. Ties go to the lexicographically smallest
// starting edge (variable name, then path).
std::optional<CycleWitness> find_cycle(const Term& s, const Term& t);

std::vector<OpSpec> cycle_op_specs(const CycleWitness& w, bool tweaked = true);
// lambda = {0, ..., k-1}.
Certificate synth_cycle(const CycleWitness& w);

struct AntiassocFactor {
  std::size_t first;   // index into terms
  std::size_t second;  // index into terms
  CoverWitness witness;
  Certificate certificate;
  Register shift;  // register offset of this factor inside the direct sum
};

struct AntiassocBuild {
  std::size_t k;
  std::vector<Term> terms;
  std::vector<AntiassocFactor> factors;
  VecGroupoid groupoid;
};

inline constexpr std::size_t kDefaultMaxAntiassocPairs = 100000;

AntiassocBuild build_k_antiassociative(std::size_t k,
                                       std::size_t max_pairs = kDefaultMaxAntiassocPairs);

struct FactorCheck {
  std::size_t first;
  std::size_t second;
  bool compiled_matches;  // the op sum recompiles to the stored groupoid
  bool parity_ok;         // lambda certifies the pair in the factor
  bool lifted_ok;         // shifted lambda certifies the pair in the direct sum
  bool affine_separated;
  std::optional<bool> exhaustive_separated;  // when 2^(dim * k) fits the budget

  bool ok() const noexcept {
    return compiled_matches && parity_ok && lifted_ok && affine_separated &&
           exhaustive_separated.value_or(true);
  }
};

struct AntiassocCheck {
  std::vector<FactorCheck> factors;
  bool pairs_complete = false;  // every unordered pair has exactly one factor
  std::size_t exhaustive_count() const noexcept;
  bool ok() const noexcept;
};

AntiassocCheck verify_antiassoc_build(const AntiassocBuild& build,
                                      std::uint64_t eval_budget = std::uint64_t{1} << 26);

struct SearchOptions {
  std::uint64_t budget = 2'000'000;  // candidate op sums
  std::size_t max_summands = 5;
  std::size_t max_registers = 5;
  // Tried first, in order, before the enumeration.
  std::vector<std::vector<OpSpec>> seeds;
};

struct SearchResult {
  std::optional<Certificate> certificate;  // nullopt means Unknown
  std::uint64_t candidates_tested = 0;
};

// Candidates: op sums with exactly one tweaked summand whose paths are
// nonempty substrings of occurrence paths of s or t, ordered by summand
// count, then total path length, then number of distinct named registers.
SearchResult search_separator(const Term& s, const Term& t, const SearchOptions& options = {});

enum class FiniteVerdict { NotSeparable, Separated, Unknown };
const char* verdict_name(FiniteVerdict v);

struct FiniteSeparability {
  FiniteVerdict verdict;
  Construction construction;  // Unifier for NotSeparable; Search for Unknown
  std::optional<Substitution> unifier;
  std::optional<Certificate> certificate;
  std::optional<CoverWitness> cover;
  std::optional<CycleWitness> cycle;
  std::uint64_t candidates_tested = 0;
};

// unify, then cover, then cycle, then search.
FiniteSeparability decide_finite_separability(const Term& s, const Term& t,
                                              const SearchOptions& options = {});

}  // namespace gsep
