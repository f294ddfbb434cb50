#include "gsep/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "gsep/errors.hpp"
#include "gsep/verification.hpp"

namespace gsep {

const char* side_name(TermSide side) { return side == TermSide::S ? "s" : "t"; }

const char* construction_name(Construction c) {
  switch (c) {
    case Construction::Cover: return "cover";
    case Construction::Cycle: return "cycle";
    case Construction::Search: return "search";
    case Construction::Unifier: return "unifier";
  }
  return "?";
}

const char* verdict_name(FiniteVerdict v) {
  switch (v) {
    case FiniteVerdict::NotSeparable: return "not-separable";
    case FiniteVerdict::Separated: return "separated";
    case FiniteVerdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::vector<OccurrenceRef> all_occurrences(const Term& s, const Term& t) {
  std::vector<OccurrenceRef> out;
  for (auto& o : occurrences(s)) out.push_back({TermSide::S, o.path, o.var});
  for (auto& o : occurrences(t)) out.push_back({TermSide::T, o.path, o.var});
  return out;
}

auto occ_key(const OccurrenceRef& o) { return std::tie(o.side, o.path); }

}  // namespace

std::optional<CoverWitness> find_cover_pair(const Term& s, const Term& t) {
  const auto occ = all_occurrences(s, t);
  std::optional<CoverWitness> best;
  auto key = [](const CoverWitness& w) {
    return std::make_tuple(w.variable, w.shallow.size(), w.shallow, w.deep.size(), w.deep,
                           w.shallow_side);
  };
  for (const auto& a : occ) {
    for (const auto& b : occ) {
      if (a.side == b.side || !(a.var == b.var) || !a.path.is_proper_prefix_of(b.path)) continue;
      CoverWitness w{a.var, a.side, a.path, b.side, b.path};
      if (!best || key(w) < key(*best)) best = w;
    }
  }
  return best;
}

CoverWitness cover_from_disagreement(const Term& s, const Term& t) {
  const Disagreement d = leftmost_disagreement(s, t);
  const VarId v = ordered_var(d.index);
  if (d.in_s.is_proper_prefix_of(d.in_t)) return {v, TermSide::S, d.in_s, TermSide::T, d.in_t};
  if (d.in_t.is_proper_prefix_of(d.in_s)) return {v, TermSide::T, d.in_t, TermSide::S, d.in_s};
  throw std::logic_error("leftmost disagreement without a prefix relation");
}

namespace {

Certificate certify(Construction kind, const std::vector<OpSpec>& specs,
                    std::vector<Register> lambda) {
  OpSum sum = build_op_sum(specs);
  VecGroupoid g = compile(sum);
  return {kind, std::move(sum), std::move(g), std::move(lambda)};
}

}  // namespace

Certificate synth_cover(const CoverWitness& w) {
  if (!w.shallow.is_proper_prefix_of(w.deep) || w.shallow_side == w.deep_side) {
    throw InvalidArgument("cover witness needs a proper prefix in the other term");
  }
  const Path ext = w.extension();
  if (w.shallow.empty()) return certify(Construction::Cover, {{1, ext, 1, true}}, {1});
  return certify(Construction::Cover, {{1, w.shallow, 0, false}, {1, ext, 1, true}}, {0});
}

bool CycleWitness::related(std::size_t i, std::size_t j) const {
  return j == (i + 1) % k() && q[i].empty();
}

namespace {

std::vector<std::size_t> class_minima(const std::vector<Path>& q) {
  const std::size_t k = q.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < k; ++i) {
    if (!q[i].empty()) continue;
    const std::size_t a = find(i);
    const std::size_t b = find((i + 1) % k);
    parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> f(k);
  for (std::size_t i = 0; i < k; ++i) f[i] = find(i);
  return f;
}

}  // namespace

void validate_cycle(const CycleWitness& w) {
  const std::size_t k = w.k();
  if (k < 2) throw InvalidArgument("cycle needs at least two variables");
  if (w.p.size() != k || w.q.size() != k || w.f.size() != k) {
    throw InvalidArgument("cycle columns have inconsistent lengths");
  }
  for (std::size_t i = 0; i < k; ++i) {
    const CycleEntry& e = w.entries[i];
    const CycleEntry& next = w.entries[(i + 1) % k];
    for (std::size_t j = 0; j < i; ++j) {
      if (w.entries[j].var == e.var) throw InvalidArgument("cycle repeats variable " + e.var.name());
    }
    if (!(e.up.var == e.var) || !(e.down.var == e.var)) {
      throw InvalidArgument("occurrence does not belong to " + e.var.name());
    }
    if (e.up.side == next.down.side) {
      throw InvalidArgument("consecutive occurrences lie in the same term");
    }
    if (!(w.p[i] == e.up.path) || !(w.p[i] + w.q[i] == next.down.path)) {
      throw InvalidArgument("p/q columns do not match the occurrences");
    }
  }
  if (w.q[0].empty()) throw InvalidArgument("first edge of the cycle is not strict");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && w.p[i].is_prefix_of(w.p[j])) {
        throw InvalidArgument("p" + std::to_string(i) + " = " + w.p[i].display() +
                              " is an initial part of p" + std::to_string(j) + " = " +
                              w.p[j].display());
      }
    }
  }
  if (w.f != class_minima(w.q)) throw InvalidArgument("f is not the class-minimum map");
}

CycleWitness make_cycle_witness(std::vector<CycleEntry> entries) {
  CycleWitness w;
  const std::size_t k = entries.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Path& up = entries[i].up.path;
    const Path& down = entries[(i + 1) % k].down.path;
    if (!up.is_prefix_of(down)) {
      throw InvalidArgument("up occurrence of " + entries[i].var.name() +
                            " is not above the next down occurrence");
    }
    w.p.push_back(up);
    w.q.push_back(down.suffix_after(up));
  }
  w.entries = std::move(entries);
  w.f = class_minima(w.q);
  validate_cycle(w);
  return w;
}

namespace {

struct Edge {
  OccurrenceRef up;
  OccurrenceRef down;
  bool strict() const { return up.path.size() < down.path.size(); }
};

bool edge_less(const Edge& a, const Edge& b) {
  return std::make_tuple(a.up.var, a.down.var, occ_key(a.up), occ_key(a.down)) <
         std::make_tuple(b.up.var, b.down.var, occ_key(b.up), occ_key(b.down));
}

}  // namespace

std::optional<CycleWitness> find_cycle(const Term& s, const Term& t) {
  const auto occ = all_occurrences(s, t);
  std::vector<Edge> edges;
  for (const auto& a : occ) {
    for (const auto& b : occ) {
      if (a.side != b.side && !(a.var == b.var) && a.path.is_prefix_of(b.path)) {
        edges.push_back({a, b});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), edge_less);

  std::map<VarId, std::vector<VarId>> adj;
  for (const auto& e : edges) {
    auto& out = adj[e.up.var];
    if (std::find(out.begin(), out.end(), e.down.var) == out.end()) out.push_back(e.down.var);
  }
  // Shortest path from `from` to `to`, neighbours in name order.
  auto shortest = [&](const VarId& from, const VarId& to) -> std::optional<std::vector<VarId>> {
    std::map<VarId, VarId> prev;
    std::deque<VarId> queue{from};
    std::set<VarId> seen{from};
    while (!queue.empty()) {
      VarId cur = queue.front();
      queue.pop_front();
      if (cur == to) {
        std::vector<VarId> path{cur};
        while (!(path.back() == from)) path.push_back(prev.at(path.back()));
        std::reverse(path.begin(), path.end());
        return path;
      }
      for (const auto& nb : adj[cur]) {
        if (seen.insert(nb).second) {
          prev.emplace(nb, cur);
          queue.push_back(nb);
        }
      }
    }
    return std::nullopt;
  };

  std::optional<Edge> first;
  std::vector<VarId> cycle;
  for (const auto& e : edges) {
    if (!e.strict()) continue;
    auto back = shortest(e.down.var, e.up.var);
    if (!back) continue;
    // back runs y1 .. y0; the cycle is y0, y1, ..., y(k-1)
    std::vector<VarId> vars{e.up.var};
    vars.insert(vars.end(), back->begin(), back->end() - 1);
    if (!first || vars.size() < cycle.size()) {
      first = e;
      cycle = std::move(vars);
    }
  }
  if (!first) return std::nullopt;

  const std::size_t k = cycle.size();
  std::vector<Edge> chosen{*first};
  for (std::size_t i = 1; i < k; ++i) {
    const VarId& from = cycle[i];
    const VarId& to = cycle[(i + 1) % k];
    for (const auto& e : edges) {
      if (e.up.var == from && e.down.var == to) {
        chosen.push_back(e);
        break;
      }
    }
  }
  std::vector<CycleEntry> entries;
  for (std::size_t i = 0; i < k; ++i) {
    entries.push_back({cycle[i], chosen[i].up, chosen[(i + k - 1) % k].down});
  }
  CycleWitness w;
  for (std::size_t i = 0; i < k; ++i) {
    w.p.push_back(chosen[i].up.path);
    w.q.push_back(chosen[i].down.path.suffix_after(chosen[i].up.path));
  }
  w.entries = std::move(entries);
  w.f = class_minima(w.q);
  return w;
}

std::vector<OpSpec> cycle_op_specs(const CycleWitness& w, bool tweaked) {
  const std::size_t k = w.k();
  auto reg = [&](std::size_t i) { return static_cast<Register>(k + w.f[i % k]); };
  std::vector<OpSpec> specs;
  for (std::size_t i = 0; i < k; ++i) specs.push_back({reg(i), w.p[i], static_cast<Register>(i)});
  for (std::size_t i = 1; i < k; ++i) {
    if (w.in_n(i)) specs.push_back({reg(i + 1), w.q[i], reg(i)});
  }
  specs.push_back({reg(1), w.q[0], reg(0), tweaked});
  return specs;
}

Certificate synth_cycle(const CycleWitness& w) {
  validate_cycle(w);
  std::vector<Register> lambda(w.k());
  std::iota(lambda.begin(), lambda.end(), Register{0});
  return certify(Construction::Cycle, cycle_op_specs(w, true), std::move(lambda));
}

AntiassocBuild build_k_antiassociative(std::size_t k, std::size_t max_pairs) {
  if (k < 3) throw InvalidArgument("k-antiassociativity needs k >= 3");
  AntiassocBuild out{k, enumerate_ordered_terms(k), {}, VecGroupoid({}, {}, {}, {})};
  const std::size_t n = out.terms.size();
  const std::size_t pairs = n * (n - 1) / 2;
  if (pairs > max_pairs) {
    throw BudgetExceeded(std::to_string(pairs) + " term pairs exceed the bound of " +
                         std::to_string(max_pairs));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      CoverWitness w = cover_from_disagreement(out.terms[i], out.terms[j]);
      Certificate cert = synth_cover(w);
      const Register shift = direct_sum_shift(out.groupoid);
      out.groupoid = direct_sum(out.groupoid, cert.groupoid);
      out.factors.push_back({i, j, std::move(w), std::move(cert), shift});
    }
  }
  return out;
}

std::size_t AntiassocCheck::exhaustive_count() const noexcept {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.exhaustive_separated.has_value();
  return n;
}

bool AntiassocCheck::ok() const noexcept {
  return pairs_complete &&
         std::all_of(factors.begin(), factors.end(), [](const FactorCheck& f) { return f.ok(); });
}

AntiassocCheck verify_antiassoc_build(const AntiassocBuild& build, std::uint64_t eval_budget) {
  AntiassocCheck out;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& f : build.factors) {
    const Term& s = build.terms.at(f.first);
    const Term& t = build.terms.at(f.second);
    const Certificate& c = f.certificate;
    FactorCheck check{f.first, f.second, false, false, false, false, std::nullopt};
    check.compiled_matches = compile(c.opsum) == c.groupoid;
    check.parity_ok = verify_parity_certificate(c.groupoid, s, t, c.lambda);
    std::vector<Register> lifted;
    for (Register r : c.lambda) lifted.push_back(r + f.shift);
    try {
      check.lifted_ok = verify_parity_certificate(build.groupoid, s, t, lifted);
    } catch (const InvalidArgument&) {
      check.lifted_ok = false;
    }
    check.affine_separated = affine_separation_decision(c.groupoid, s, t).separated;
    const std::size_t bits = c.groupoid.dim() * joint_variables(s, t).size();
    if (c.groupoid.dim() <= kDefaultMaxCayleyDim && bits < 64 &&
        (std::uint64_t{1} << bits) <= eval_budget) {
      check.exhaustive_separated =
          separates_exhaustive(to_cayley(c.groupoid), s, t, eval_budget).separated;
    }
    pairs.emplace(std::min(f.first, f.second), std::max(f.first, f.second));
    out.factors.push_back(check);
  }
  const std::size_t n = build.terms.size();
  out.pairs_complete = pairs.size() == build.factors.size() && pairs.size() == n * (n - 1) / 2 &&
                       std::none_of(pairs.begin(), pairs.end(),
                                    [](const auto& p) { return p.first == p.second; });
  return out;
}

namespace {

// Candidate enumeration for search_separator.
class Searcher {
 public:
  Searcher(const Term& s, const Term& t, const SearchOptions& opt) : s_(s), t_(t), opt_(opt) {
    std::set<std::pair<std::size_t, std::string>> pool;
    for (const Term* term : {&s, &t}) {
      for (const auto& o : occurrences(*term)) {
        const auto& str = o.path.str();
        for (std::size_t a = 0; a < str.size(); ++a) {
          for (std::size_t len = 1; a + len <= str.size(); ++len) {
            pool.emplace(len, str.substr(a, len));
          }
        }
      }
    }
    for (const auto& [len, str] : pool) paths_.push_back(Path::parse(str));
  }

  SearchResult run() {
    for (const auto& seed : opt_.seeds) {
      if (exhausted()) return result_;
      if (test(seed)) return result_;
    }
    if (paths_.empty()) return result_;
    const std::size_t max_len = paths_.back().size();
    for (std::size_t c = 1; c <= opt_.max_summands; ++c) {
      for (std::size_t total = c; total <= c * max_len; ++total) {
        std::vector<std::vector<std::size_t>> multisets;
        std::vector<std::size_t> cur;
        collect_multisets(c, total, 0, cur, multisets);
        const std::size_t max_r = std::min(opt_.max_registers, 2 * c);
        for (std::size_t r = 1; r <= max_r; ++r) {
          for (const auto& ms : multisets) {
            for (std::size_t tw = 0; tw < c; ++tw) {
              if (tw > 0 && ms[tw] == ms[tw - 1]) continue;
              if (assign(ms, tw, r)) return result_;
              if (exhausted()) return result_;
            }
          }
        }
      }
    }
    return result_;
  }

 private:
  bool exhausted() const { return result_.candidates_tested >= opt_.budget; }

  void collect_multisets(std::size_t count, std::size_t total, std::size_t from,
                         std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) const {
    if (count == 0) {
      if (total == 0) out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < paths_.size(); ++i) {
      const std::size_t len = paths_[i].size();
      if (len * count > total) break;
      cur.push_back(i);
      collect_multisets(count - 1, total - len, i, cur, out);
      cur.pop_back();
    }
  }

  // Registers over the slots n1, m1, n2, m2, ... as a restricted growth
  // string with exactly r blocks and distinct targets.
  bool assign(const std::vector<std::size_t>& ms, std::size_t tweak, std::size_t r) {
    const std::size_t slots = 2 * ms.size();
    std::vector<Register> regs(slots);
    bool found = false;
    auto rec = [&](auto& self, std::size_t slot, std::size_t blocks) -> void {
      if (found || exhausted()) return;
      if (blocks + (slots - slot) < r) return;
      if (slot == slots) {
        if (blocks != r) return;
        std::vector<OpSpec> specs;
        for (std::size_t i = 0; i < ms.size(); ++i) {
          specs.push_back({regs[2 * i + 1], paths_[ms[i]], regs[2 * i], i == tweak});
        }
        found = test(specs);
        return;
      }
      const std::size_t limit = std::min(blocks + 1, r);
      for (std::size_t v = 0; v < limit; ++v) {
        if (slot % 2 == 0) {
          bool clash = false;
          for (std::size_t j = 0; j < slot; j += 2) clash = clash || regs[j] == v;
          if (clash) continue;
        }
        regs[slot] = static_cast<Register>(v);
        self(self, slot + 1, std::max(blocks, v + 1));
        if (found || exhausted()) return;
      }
    };
    rec(rec, 0, 0);
    return found;
  }

  bool test(const std::vector<OpSpec>& specs) {
    ++result_.candidates_tested;
    OpSum sum = build_op_sum(specs);
    VecGroupoid g = compile(sum);
    AffineDecision d = affine_separation_decision(g, s_, t_);
    if (!d.separated) return false;
    result_.certificate = Certificate{Construction::Search, std::move(sum), std::move(g),
                                      std::move(d.lambda)};
    return true;
  }

  const Term& s_;
  const Term& t_;
  const SearchOptions& opt_;
  std::vector<Path> paths_;
  SearchResult result_;
};

void check_certificate(const Certificate& c, const Term& s, const Term& t) {
  if (!verify_parity_certificate(c.groupoid, s, t, c.lambda) ||
      !affine_separation_decision(c.groupoid, s, t).separated) {
    throw std::logic_error(std::string(construction_name(c.kind)) +
                           " construction produced a non-separating groupoid");
  }
}

}  // namespace

SearchResult search_separator(const Term& s, const Term& t, const SearchOptions& options) {
  return Searcher(s, t, options).run();
}

FiniteSeparability decide_finite_separability(const Term& s, const Term& t,
                                              const SearchOptions& options) {
  FiniteSeparability out{FiniteVerdict::Unknown, Construction::Search, {}, {}, {}, {}, 0};
  UnifyOutcome u = unify(s, t);
  if (u.unifiable()) {
    out.verdict = FiniteVerdict::NotSeparable;
    out.construction = Construction::Unifier;
    out.unifier = std::move(u.unifier);
    return out;
  }
  if (auto cover = find_cover_pair(s, t)) {
    out.certificate = synth_cover(*cover);
    out.cover = std::move(cover);
    out.construction = Construction::Cover;
  } else if (auto cycle = find_cycle(s, t)) {
    try {
      out.certificate = synth_cycle(*cycle);
      out.cycle = std::move(cycle);
      out.construction = Construction::Cycle;
    } catch (const InvalidArgument&) {
    }
  }
  if (!out.certificate) {
    SearchResult r = search_separator(s, t, options);
    out.candidates_tested = r.candidates_tested;
    out.certificate = std::move(r.certificate);
    out.construction = Construction::Search;
  }
  if (out.certificate) {
    check_certificate(*out.certificate, s, t);
    out.verdict = FiniteVerdict::Separated;
  }
  return out;
}

}  // namespace gsep
