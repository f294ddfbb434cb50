#include "gsep/census.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gsep/cayley.hpp"
#include "gsep/errors.hpp"

namespace gsep {

namespace {

constexpr std::size_t kMaxOrder = 4;

class TableSearch {
 public:
  explicit TableSearch(std::size_t n) : n_(n), cells_(n * n) {}

  // Counts antiassociative tables whose first row is `row0`.
  std::uint64_t count(const std::vector<std::uint8_t>& row0) {
    for (std::size_t b = 0; b < n_; ++b) {
      table_[b] = row0[b];
      if (violates(b)) return 0;
    }
    return extend(n_);
  }

 private:
  bool assigned(std::size_t a, std::size_t b, std::size_t last) const { return a * n_ + b <= last; }

  // True when (x*y)*z = x*(y*z) is decided and holds.
  bool associative(std::size_t x, std::size_t y, std::size_t z, std::size_t last) const {
    if (!assigned(x, y, last) || !assigned(y, z, last)) return false;
    const std::size_t u = table_[x * n_ + y];
    const std::size_t w = table_[y * n_ + z];
    if (!assigned(u, z, last) || !assigned(x, w, last)) return false;
    return table_[u * n_ + z] == table_[x * n_ + w];
  }

  // Every triple using the entry at `cell` in any of its four lookups.
  bool violates(std::size_t cell) const {
    const std::size_t a = cell / n_;
    const std::size_t b = cell % n_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (associative(a, b, i, cell) || associative(i, a, b, cell)) return true;
    }
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        if (assigned(x, y, cell) && table_[x * n_ + y] == a && associative(x, y, b, cell)) {
          return true;
        }
        if (assigned(x, y, cell) && table_[x * n_ + y] == b && associative(a, x, y, cell)) {
          return true;
        }
      }
    }
    return false;
  }

  std::uint64_t extend(std::size_t cell) {
    if (cell == cells_) return 1;
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      table_[cell] = static_cast<std::uint8_t>(v);
      if (!violates(cell)) total += extend(cell + 1);
    }
    return total;
  }

  std::size_t n_;
  std::size_t cells_;
  std::array<std::uint8_t, kMaxOrder * kMaxOrder> table_{};
};

std::uint64_t power(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::vector<std::uint8_t> unit_row(std::size_t n, std::uint64_t unit) {
  std::vector<std::uint8_t> row(n);
  for (std::size_t b = n; b-- > 0;) {
    row[b] = static_cast<std::uint8_t>(unit % n);
    unit /= n;
  }
  return row;
}

struct Checkpoint {
  std::uint64_t prefix = 0;
  std::uint64_t antiassociative = 0;
};

std::optional<Checkpoint> load_checkpoint(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("unreadable checkpoint " + path + ": " + e.what());
  }
  if (j.at("n").get<std::size_t>() != n) {
    throw InvalidArgument("checkpoint " + path + " is for a different order");
  }
  return Checkpoint{j.at("prefix").get<std::uint64_t>(),
                    j.at("counts").at("antiassociative").get<std::uint64_t>()};
}

void save_checkpoint(const std::string& path, std::size_t n, const Checkpoint& c) {
  nlohmann::json j{{"n", n},
                   {"prefix", c.prefix},
                   {"counts", {{"antiassociative", c.antiassociative}}}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::uint64_t literally_deranged_count(std::size_t n) {
  std::set<std::vector<std::uint8_t>> tables;
  std::vector<std::uint8_t> f(n, 0);
  const std::uint64_t maps = power(n, n);
  for (std::uint64_t code = 0; code < maps; ++code) {
    f = unit_row(n, code);
    bool fixpoint = false;
    for (std::size_t i = 0; i < n; ++i) fixpoint = fixpoint || f[i] == i;
    if (fixpoint) continue;
    std::vector<std::uint8_t> left(n * n);
    std::vector<std::uint8_t> right(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        left[a * n + b] = f[a];
        right[a * n + b] = f[b];
      }
    }
    tables.insert(left);
    tables.insert(right);
  }
  return tables.size();
}

std::uint64_t census_unpruned(std::size_t n) {
  if (n < 1 || n > 3) throw InvalidArgument("unpruned census supports n <= 3");
  const std::size_t cells = n * n;
  const std::uint64_t total = power(n, cells);
  std::vector<Element> table(cells);
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < cells; ++i) {
      table[i] = static_cast<Element>(c % n);
      c /= n;
    }
    if (is_k_antiassociative(CayleyGroupoid(n, table), 3).holds) ++count;
  }
  return count;
}

CensusReport census(std::size_t n, const CensusOptions& options) {
  if (n < 2 || n > kMaxOrder) {
    throw InvalidArgument("census supports orders 2 to 4, got " + std::to_string(n));
  }
  if (n == 4 && !options.allow_long) {
    throw InvalidArgument("the order-4 census is a long run and must be requested explicitly");
  }
  const auto start = std::chrono::steady_clock::now();
  std::size_t workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  const std::uint64_t units = power(n, n);
  Checkpoint done;
  if (options.checkpoint) {
    if (auto c = load_checkpoint(*options.checkpoint, n)) done = *c;
  }

  std::vector<std::uint64_t> results(units, 0);
  std::vector<bool> finished(units, false);
  std::atomic<std::uint64_t> next{done.prefix};
  std::mutex mu;

  auto work = [&] {
    TableSearch search(n);
    for (;;) {
      const std::uint64_t unit = next.fetch_add(1);
      if (unit >= units) return;
      const std::uint64_t c = search.count(unit_row(n, unit));
      std::lock_guard lock(mu);
      results[unit] = c;
      finished[unit] = true;
      bool advanced = false;
      while (done.prefix < units && finished[done.prefix]) {
        done.antiassociative += results[done.prefix];
        ++done.prefix;
        advanced = true;
      }
      if (advanced && options.checkpoint) save_checkpoint(*options.checkpoint, n, done);
      if (options.progress) {
        std::cerr << "census n=" << n << ": " << done.prefix << "/" << units
                  << " first-row units, " << done.antiassociative << " antiassociative\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  CensusReport report;
  report.n = n;
  report.total_tables = power(n, n * n);
  report.antiassociative_count = done.antiassociative;
  report.literally_deranged_count = literally_deranged_count(n);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.workers = workers;
  return report;
}

}  // namespace gsep
