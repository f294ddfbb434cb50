#pragma once

// Exhaustive count of 3-antiassociative Cayley tables of a given order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace gsep {

struct CensusOptions {
  std::size_t workers = 0;  // 0: hardware concurrency
  bool allow_long = false;  // required for n = 4
  // Progress is saved here after every completed first-row unit and resumed
  // from when the file exists.
  std::optional<std::string> checkpoint;
  bool progress = false;  // progress lines on stderr
};

struct CensusReport {
  std::size_t n = 0;
  std::uint64_t total_tables = 0;
  std::uint64_t antiassociative_count = 0;
  // Tables x*y = f(x) or x*y = f(y) with f fixpoint-free.
  std::uint64_t literally_deranged_count = 0;
  double elapsed_seconds = 0;
  std::size_t workers = 0;
};

// Depth-first over row-major tables, pruning as soon as an assigned entry
// completes an associative triple. Accepts n in {2, 3, 4}.
CensusReport census(std::size_t n, const CensusOptions& options = {});

// Unpruned recount over all n^(n*n) tables; for small n only.
std::uint64_t census_unpruned(std::size_t n);

std::uint64_t literally_deranged_count(std::size_t n);

}  // namespace gsep
