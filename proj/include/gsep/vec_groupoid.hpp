#pragma once

// Component-transfer operations ||m,p,n|| over GF(2) bit vectors, their
// duplicate-free sums, and the affine groupoids x*y = A.x + B.y + c they
// compile to.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsep/cayley.hpp"
#include "gsep/errors.hpp"
#include "gsep/gf2.hpp"
#include "gsep/term.hpp"

namespace gsep {

using Register = std::uint32_t;

// Which argument of z = x * y an equation reads from.
enum class Operand { X, Y };

// z[target] := operand[source] (+ 1 when plus_one).
struct Equation {
  Register target;
  Operand operand;
  Register source;
  bool plus_one = false;
  friend bool operator==(const Equation&, const Equation&) = default;
};

class DuplicateTarget : public InvalidArgument {
 public:
  explicit DuplicateTarget(Register r)
      : InvalidArgument("duplicate target register " + std::to_string(r)), register_(r) {}
  Register reg() const noexcept { return register_; }
  const char* kind() const noexcept override { return "duplicate-target"; }

 private:
  Register register_;
};

// Hands out fresh internal registers from a counter.
class RegisterAllocator {
 public:
  explicit RegisterAllocator(Register first_free = 0) : next_(first_free) {}
  Register next() { return next_++; }
  Register peek() const noexcept { return next_; }

 private:
  Register next_;
};

// ||m,p,n||, optionally tweaked. For p = p0 p1 ... pj with internal
// registers a0..a(j-1) the equations are
//   z[n]    := (x|y by p0)[a0]        (+1 when tweaked)
//   z[ai]   := (x|y by p(i+1))[a(i+1)]
//   z[a(j-1)] := (x|y by pj)[m]
// and for |p| = 1 simply z[n] := (x|y by p0)[m].
class BasicOp {
 public:
  BasicOp(Register m, Path p, Register n, bool tweaked, std::vector<Register> internal);

  Register source() const noexcept { return m_; }
  const Path& path() const noexcept { return p_; }
  Register target() const noexcept { return n_; }
  bool tweaked() const noexcept { return tweaked_; }
  const std::vector<Register>& internal() const noexcept { return internal_; }

  std::vector<Equation> equations() const;
  std::vector<Register> registers() const;
  // ASCII rendering, e.g. "||4,r,3||'".
  std::string to_string() const;

  friend bool operator==(const BasicOp&, const BasicOp&) = default;

 private:
  Register m_;
  Path p_;
  Register n_;
  bool tweaked_;
  std::vector<Register> internal_;
};

BasicOp basic_op(Register m, const Path& p, Register n, bool tweaked, RegisterAllocator& alloc);

// A validated duplicate-free, collision-free sum of basic operations.
class OpSum {
 public:
  OpSum() = default;

  const std::vector<BasicOp>& summands() const noexcept { return summands_; }
  std::vector<Equation> equations() const;
  // Every register mentioned, sorted.
  std::vector<Register> registers() const;
  std::string to_string() const;

  friend OpSum op_sum(std::vector<BasicOp> ops);

 private:
  std::vector<BasicOp> summands_;
};

// Throws DuplicateTarget when two equations assign the same register and
// InvalidArgument when an internal register of one summand is used by another.
OpSum op_sum(std::vector<BasicOp> ops);

// User-level description of a summand; internal registers are allocated.
struct OpSpec {
  Register m;
  Path p;
  Register n;
  bool tweaked = false;
  friend bool operator==(const OpSpec&, const OpSpec&) = default;
};

// Allocates internal registers from one past the largest register named in
// `specs`, in summand order.
OpSum build_op_sum(std::span<const OpSpec> specs);
std::vector<OpSpec> specs_of(const OpSum& sum);

class VecGroupoid {
 public:
  // `indices` sorted and distinct; matrix rows/columns follow that order.
  VecGroupoid(std::vector<Register> indices, BitMatrix a, BitMatrix b, BitVec c);

  std::size_t dim() const noexcept { return indices_.size(); }
  const std::vector<Register>& indices() const noexcept { return indices_; }
  const BitMatrix& a() const noexcept { return a_; }
  const BitMatrix& b() const noexcept { return b_; }
  const BitVec& c() const noexcept { return c_; }
  std::optional<std::size_t> position(Register r) const;

  friend bool operator==(const VecGroupoid&, const VecGroupoid&) = default;

 private:
  std::vector<Register> indices_;
  BitMatrix a_;
  BitMatrix b_;
  BitVec c_;
};

// Rows are targets, columns sources; unassigned targets give zero rows.
VecGroupoid compile(const OpSum& sum);
// x*y = A.x + B.y + c with registers 0..d-1.
VecGroupoid affine_groupoid(BitMatrix a, BitMatrix b, BitVec c);

BitVec eval_vec(const VecGroupoid& g, const BitVec& x, const BitVec& y);

using VecEnvironment = std::map<VarId, BitVec>;
BitVec eval_term_vec(const VecGroupoid& g, const Term& t, const VecEnvironment& env);

// t(v1..vr) = sum_i coeff[i].vi + constant.
struct AffineTermForm {
  std::vector<VarId> vars;
  std::vector<BitMatrix> coeff;
  BitVec constant;

  const BitMatrix& coefficient(const VarId& v) const;
  BitVec eval(std::span<const BitVec> values) const;
};

AffineTermForm term_affine_form(const VecGroupoid& g, const Term& t);
// Form over an explicit variable list, which must contain every variable of t.
AffineTermForm term_affine_form(const VecGroupoid& g, const Term& t, const std::vector<VarId>& vars);

// The functional lambda applied to a term: lambda.t(v) = sum_i row[i].vi + constant.
struct ParityForm {
  std::vector<VarId> vars;
  std::vector<BitVec> row;
  bool constant = false;
};

// Computed top-down with row vectors, so it stays cheap for large groupoids.
ParityForm term_parity_form(const VecGroupoid& g, const Term& t, const std::vector<VarId>& vars,
                            const BitVec& lambda);

// Shift applied to the second summand's registers by direct_sum.
Register direct_sum_shift(const VecGroupoid& first);
// Block-diagonal sum; registers of `second` are shifted past those of `first`.
VecGroupoid direct_sum(const VecGroupoid& first, const VecGroupoid& second);

inline constexpr std::size_t kDefaultMaxCayleyDim = 12;

// Element index = sum of bit i * 2^i, bit i being the component at the i-th
// register in sorted order.
CayleyGroupoid to_cayley(const VecGroupoid& g, std::size_t max_dim = kDefaultMaxCayleyDim);
BitVec element_bits(Element e, std::size_t dim);
Element element_index(const BitVec& bits);

}  // namespace gsep
