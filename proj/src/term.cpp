#include "gsep/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <set>
#include <utility>

#include "gsep/errors.hpp"

namespace gsep {

namespace {

bool valid_var_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

constexpr std::string_view kChiUtf8 = "\xCF\x87";  // χ
constexpr std::string_view kStarUtf8 = "\xE2\x8B\x86";  // ⋆

}  // namespace

VarId::VarId(std::string name) : name_(std::move(name)) {
  if (!valid_var_name(name_)) throw InvalidArgument("invalid variable name '" + name_ + "'");
}

VarId VarId::chi() { return VarId("chi"); }

bool VarId::is_chi() const noexcept { return name_ == "chi"; }

Path Path::parse(std::string_view text) {
  Path p;
  if (text == "^") return p;
  for (char c : text) {
    if (c != 'l' && c != 'r') throw InvalidPath("path may only contain 'l' and 'r'");
    p.steps_.push_back(c);
  }
  return p;
}

Path Path::child(Dir d) const {
  Path p = *this;
  p.steps_.push_back(static_cast<char>(d));
  return p;
}

Path Path::prefix(std::size_t length) const {
  if (length > size()) throw InvalidPath("prefix longer than path");
  Path p;
  p.steps_ = steps_.substr(0, length);
  return p;
}

Path Path::suffix_after(const Path& head) const {
  if (!head.is_prefix_of(*this)) throw InvalidPath("'" + head.str() + "' is not a prefix of '" + steps_ + "'");
  Path p;
  p.steps_ = steps_.substr(head.size());
  return p;
}

Path Path::substring(std::size_t offset, std::size_t length) const {
  if (offset + length > size()) throw InvalidPath("substring out of range");
  Path p;
  p.steps_ = steps_.substr(offset, length);
  return p;
}

bool Path::is_prefix_of(const Path& other) const noexcept {
  return size() <= other.size() && other.steps_.compare(0, size(), steps_) == 0;
}

Path operator+(const Path& a, const Path& b) {
  Path p;
  p.steps_ = a.steps_ + b.steps_;
  return p;
}

struct Term::Node {
  std::optional<VarId> var;
  std::optional<Term> left;
  std::optional<Term> right;
  std::size_t leaves = 1;
  std::size_t depth = 0;
};

Term Term::var(VarId v) {
  auto n = std::make_shared<Node>();
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::node(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->leaves = left.leaf_count() + right.leaf_count();
  n->depth = 1 + std::max(left.depth(), right.depth());
  n->left = std::move(left);
  n->right = std::move(right);
  return Term(std::move(n));
}

bool Term::is_leaf() const noexcept { return node_->var.has_value(); }
const VarId& Term::var() const { return *node_->var; }
const Term& Term::left() const { return *node_->left; }
const Term& Term::right() const { return *node_->right; }
std::size_t Term::leaf_count() const noexcept { return node_->leaves; }
std::size_t Term::depth() const noexcept { return node_->depth; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.leaf_count() != b.leaf_count() || a.depth() != b.depth()) return false;
  if (a.is_leaf()) return a.var() == b.var();
  return a.left() == b.left() && a.right() == b.right();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = primary();
    skip_ws();
    if (at_star()) {
      consume_star();
      t = Term::node(std::move(t), primary());
    }
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_star() const {
    return pos_ < text_.size() &&
           (text_[pos_] == '*' || text_.substr(pos_, kStarUtf8.size()) == kStarUtf8);
  }

  void consume_star() {
    if (!at_star()) throw ParseError("expected '*'", pos_);
    pos_ += text_[pos_] == '*' ? 1 : kStarUtf8.size();
  }

  Term primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      Term l = primary();
      skip_ws();
      consume_star();
      Term r = primary();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return Term::node(std::move(l), std::move(r));
    }
    if (text_.substr(pos_, kChiUtf8.size()) == kChiUtf8) {
      pos_ += kChiUtf8.size();
      return Term::var(VarId::chi());
    }
    const std::size_t start = pos_;
    if (!std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected variable or '('", pos_);
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return Term::var(VarId(std::string(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Term& t, std::string& out, bool outer) {
  if (t.is_leaf()) {
    out += t.var().name();
    return;
  }
  if (!outer) out += '(';
  render_into(t.left(), out, false);
  out += '*';
  render_into(t.right(), out, false);
  if (!outer) out += ')';
}

void collect_occurrences(const Term& t, const Path& path, std::vector<Occurrence>& out) {
  if (t.is_leaf()) {
    out.push_back({path, t.var()});
    return;
  }
  collect_occurrences(t.left(), path.child(Dir::L), out);
  collect_occurrences(t.right(), path.child(Dir::R), out);
}

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

std::string render_term(const Term& t) {
  std::string out;
  render_into(t, out, true);
  return out;
}

std::vector<Occurrence> occurrences(const Term& t) {
  std::vector<Occurrence> out;
  out.reserve(t.leaf_count());
  collect_occurrences(t, Path(), out);
  return out;
}

std::vector<VarId> variables(const Term& t) {
  std::vector<VarId> out;
  std::set<VarId> seen;
  for (auto& occ : occurrences(t)) {
    if (seen.insert(occ.var).second) out.push_back(occ.var);
  }
  return out;
}

bool occurs_in(const VarId& v, const Term& t) {
  if (t.is_leaf()) return t.var() == v;
  return occurs_in(v, t.left()) || occurs_in(v, t.right());
}

Term subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (cur->is_leaf()) {
      throw InvalidPath("path '" + p.str() + "' leaves the tree at step " + std::to_string(i));
    }
    cur = p[i] == Dir::L ? &cur->left() : &cur->right();
  }
  return *cur;
}

std::vector<Path> node_paths(const Term& t) {
  std::vector<Path> out;
  std::function<void(const Term&, const Path&)> walk = [&](const Term& u, const Path& p) {
    out.push_back(p);
    if (u.is_leaf()) return;
    walk(u.left(), p.child(Dir::L));
    walk(u.right(), p.child(Dir::R));
  };
  walk(t, Path());
  return out;
}

Shape shape_of(const Term& t) {
  if (t.is_leaf()) return {Term::var(VarId::chi())};
  return {Term::node(shape_of(t.left()).term, shape_of(t.right()).term)};
}

std::uint64_t catalan(unsigned m) {
  // C(i+1) = C(i) * 2(2i+1) / (i+2), exact at every step.
  unsigned __int128 c = 1;
  for (unsigned i = 0; i < m; ++i) {
    c = c * (2 * (2 * static_cast<unsigned __int128>(i) + 1)) / (i + 2);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw Overflow("catalan(" + std::to_string(m) + ") does not fit in 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

VarId ordered_var(std::size_t i) { return VarId("x" + std::to_string(i)); }

namespace {

std::vector<Term> ordered_terms_on(std::size_t first, std::size_t count) {
  if (count == 1) return {Term::var(ordered_var(first))};
  std::vector<Term> out;
  for (std::size_t left = count - 1; left >= 1; --left) {
    const auto ls = ordered_terms_on(first, left);
    const auto rs = ordered_terms_on(first + left, count - left);
    for (const auto& l : ls) {
      for (const auto& r : rs) out.push_back(Term::node(l, r));
    }
  }
  return out;
}

}  // namespace

std::vector<Term> enumerate_ordered_terms(std::size_t k, std::size_t max_k) {
  if (k < 1) throw InvalidArgument("ordered terms need k >= 1");
  if (k > max_k) {
    throw BudgetExceeded("k = " + std::to_string(k) + " exceeds the configured bound " +
                         std::to_string(max_k));
  }
  return ordered_terms_on(1, k);
}

std::optional<std::size_t> ordered_arity(const Term& t) {
  const auto occ = occurrences(t);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i].var != ordered_var(i + 1)) return std::nullopt;
  }
  return occ.size();
}

Disagreement leftmost_disagreement(const Term& s, const Term& t) {
  const auto ks = ordered_arity(s);
  const auto kt = ordered_arity(t);
  if (!ks || !kt || *ks != *kt) {
    throw InvalidArgument("leftmost_disagreement needs two ordered terms on the same variables");
  }
  if (s == t) throw InvalidArgument("leftmost_disagreement needs distinct terms");
  const auto os = occurrences(s);
  const auto ot = occurrences(t);
  for (std::size_t i = 0; i < os.size(); ++i) {
    if (os[i].path != ot[i].path) return {i + 1, os[i].path, ot[i].path};
  }
  // Unreachable: equal leaf paths in order imply equal trees.
  throw InvalidArgument("terms agree on every variable");
}

}  // namespace gsep
