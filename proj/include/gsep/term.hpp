#pragma once

// Groupoid terms as immutable binary trees over named variables, plus the
// l/r path addressing used throughout the library.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gsep {

// A variable name: a letter followed by letters, digits or underscores.
// "chi" is reserved as the shape sentinel; the parser also accepts the
// UTF-8 spelling "χ" for it.
class VarId {
 public:
  explicit VarId(std::string name);
  static VarId chi();

  const std::string& name() const noexcept { return name_; }
  bool is_chi() const noexcept;

  friend auto operator<=>(const VarId&, const VarId&) = default;

 private:
  std::string name_;
};

enum class Dir : char { L = 'l', R = 'r' };

// A finite string over {l, r}; the empty path is the root.
class Path {
 public:
  Path() = default;
  // Accepts "" or "^" for the root path.
  static Path parse(std::string_view text);

  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  Dir operator[](std::size_t i) const noexcept { return static_cast<Dir>(steps_[i]); }

  Path child(Dir d) const;
  Path prefix(std::size_t length) const;
  // The part of this path after `head`; `head` must be a prefix.
  Path suffix_after(const Path& head) const;
  Path substring(std::size_t offset, std::size_t length) const;

  bool is_prefix_of(const Path& other) const noexcept;
  bool is_proper_prefix_of(const Path& other) const noexcept {
    return size() < other.size() && is_prefix_of(other);
  }

  // "" for the root, as used in data files.
  const std::string& str() const noexcept { return steps_; }
  // "^" for the root, as used in human-readable output.
  std::string display() const { return steps_.empty() ? "^" : steps_; }

  friend Path operator+(const Path& a, const Path& b);
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::string steps_;
};

class Term {
 public:
  static Term var(VarId v);
  static Term var(std::string_view name) { return var(VarId(std::string(name))); }
  static Term node(Term left, Term right);

  bool is_leaf() const noexcept;
  // Leaf accessors; undefined on nodes.
  const VarId& var() const;
  // Node accessors; undefined on leaves.
  const Term& left() const;
  const Term& right() const;

  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline Term operator*(const Term& a, const Term& b) { return Term::node(a, b); }

struct Occurrence {
  Path path;
  VarId var;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct Shape {
  Term term;
  friend bool operator==(const Shape&, const Shape&) = default;
};

// Grammar: term := var | '(' term '*' term ')'; the outermost parentheses are
// optional and whitespace is ignored.
Term parse_term(std::string_view text);
// Renders without the outermost parentheses, e.g. "(x1*x2)*x3".
std::string render_term(const Term& t);

// Leaves in inorder, i.e. sorted by path.
std::vector<Occurrence> occurrences(const Term& t);
// Distinct variables in order of first occurrence.
std::vector<VarId> variables(const Term& t);
bool occurs_in(const VarId& v, const Term& t);

Term subterm_at(const Term& t, const Path& p);
// Paths of all nodes (internal and leaves), root included, in preorder.
std::vector<Path> node_paths(const Term& t);

Shape shape_of(const Term& t);

// m-th Catalan number; throws Overflow when it does not fit in 64 bits.
std::uint64_t catalan(unsigned m);

inline constexpr std::size_t kDefaultMaxOrderedArity = 14;

// The variable x_i (1-based).
VarId ordered_var(std::size_t i);

// All ordered terms on x1..xk. Order: at every level the top split puts as
// many variables as possible on the left first, which lists the 4-ary terms
// as ((x1*x2)*x3)*x4, (x1*(x2*x3))*x4, (x1*x2)*(x3*x4), x1*((x2*x3)*x4),
// x1*(x2*(x3*x4)).
std::vector<Term> enumerate_ordered_terms(std::size_t k,
                                          std::size_t max_k = kDefaultMaxOrderedArity);

// Arity if t is an ordered term on x1..xk, nullopt otherwise.
std::optional<std::size_t> ordered_arity(const Term& t);

struct Disagreement {
  std::size_t index;  // m, 1-based
  Path in_s;
  Path in_t;
};

// The leftmost variable x_m whose paths differ in s and t. One of the two
// returned paths is always a proper prefix of the other.
Disagreement leftmost_disagreement(const Term& s, const Term& t);

}  // namespace gsep
