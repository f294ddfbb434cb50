#include "gsep/vec_groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace gsep {

namespace {

Operand operand_of(Dir d) { return d == Dir::L ? Operand::X : Operand::Y; }

}  // namespace

BasicOp::BasicOp(Register m, Path p, Register n, bool tweaked, std::vector<Register> internal)
    : m_(m), p_(std::move(p)), n_(n), tweaked_(tweaked), internal_(std::move(internal)) {
  if (p_.empty()) throw InvalidArgument("||m,p,n|| needs a nonempty path");
  if (internal_.size() != p_.size() - 1) {
    throw InvalidArgument("||m,p,n|| needs |p| - 1 internal registers");
  }
  std::set<Register> seen(internal_.begin(), internal_.end());
  if (seen.size() != internal_.size() || seen.count(m_) || seen.count(n_)) {
    throw InvalidArgument("internal registers of " + to_string() + " collide");
  }
}

std::vector<Equation> BasicOp::equations() const {
  std::vector<Equation> out;
  out.reserve(p_.size());
  const std::size_t j = p_.size() - 1;
  for (std::size_t i = 0; i <= j; ++i) {
    const Register target = i == 0 ? n_ : internal_[i - 1];
    const Register source = i == j ? m_ : internal_[i];
    out.push_back({target, operand_of(p_[i]), source, i == 0 && tweaked_});
  }
  return out;
}

std::vector<Register> BasicOp::registers() const {
  std::vector<Register> out{m_, n_};
  out.insert(out.end(), internal_.begin(), internal_.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string BasicOp::to_string() const {
  std::ostringstream os;
  os << "||" << m_ << ',' << p_.display() << ',' << n_ << "||" << (tweaked_ ? "'" : "");
  return os.str();
}

BasicOp basic_op(Register m, const Path& p, Register n, bool tweaked, RegisterAllocator& alloc) {
  if (p.empty()) throw InvalidArgument("||m,p,n|| needs a nonempty path");
  std::vector<Register> internal;
  for (std::size_t i = 1; i < p.size(); ++i) internal.push_back(alloc.next());
  return BasicOp(m, p, n, tweaked, std::move(internal));
}

std::vector<Equation> OpSum::equations() const {
  std::vector<Equation> out;
  for (const auto& op : summands_) {
    auto eqs = op.equations();
    out.insert(out.end(), eqs.begin(), eqs.end());
  }
  return out;
}

std::vector<Register> OpSum::registers() const {
  std::set<Register> regs;
  for (const auto& op : summands_) {
    for (auto r : op.registers()) regs.insert(r);
  }
  return {regs.begin(), regs.end()};
}

std::string OpSum::to_string() const {
  if (summands_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (i) out += " + ";
    out += summands_[i].to_string();
  }
  return out;
}

OpSum op_sum(std::vector<BasicOp> ops) {
  std::set<Register> targets;
  for (const auto& op : ops) {
    for (const auto& eq : op.equations()) {
      if (!targets.insert(eq.target).second) throw DuplicateTarget(eq.target);
    }
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (Register r : ops[i].internal()) {
      for (std::size_t j = 0; j < ops.size(); ++j) {
        if (i == j) continue;
        const auto regs = ops[j].registers();
        if (std::binary_search(regs.begin(), regs.end(), r)) {
          throw InvalidArgument("internal register " + std::to_string(r) + " of " +
                                ops[i].to_string() + " is also used by " + ops[j].to_string());
        }
      }
    }
  }
  OpSum sum;
  sum.summands_ = std::move(ops);
  return sum;
}

OpSum build_op_sum(std::span<const OpSpec> specs) {
  Register first_free = 0;
  for (const auto& s : specs) first_free = std::max({first_free, s.m + 1, s.n + 1});
  RegisterAllocator alloc(first_free);
  std::vector<BasicOp> ops;
  ops.reserve(specs.size());
  for (const auto& s : specs) ops.push_back(basic_op(s.m, s.p, s.n, s.tweaked, alloc));
  return op_sum(std::move(ops));
}

std::vector<OpSpec> specs_of(const OpSum& sum) {
  std::vector<OpSpec> out;
  for (const auto& op : sum.summands()) {
    out.push_back({op.source(), op.path(), op.target(), op.tweaked()});
  }
  return out;
}

VecGroupoid::VecGroupoid(std::vector<Register> indices, BitMatrix a, BitMatrix b, BitVec c)
    : indices_(std::move(indices)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  const std::size_t d = indices_.size();
  if (!std::is_sorted(indices_.begin(), indices_.end()) ||
      std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("register indices must be sorted and distinct");
  }
  if (a_.rows() != d || a_.cols() != d || b_.rows() != d || b_.cols() != d || c_.size() != d) {
    throw InvalidArgument("affine groupoid dimension mismatch");
  }
}

std::optional<std::size_t> VecGroupoid::position(Register r) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), r);
  if (it == indices_.end() || *it != r) return std::nullopt;
  return static_cast<std::size_t>(it - indices_.begin());
}

VecGroupoid compile(const OpSum& sum) {
  const auto regs = sum.registers();
  const std::size_t d = regs.size();
  std::map<Register, std::size_t> pos;
  for (std::size_t i = 0; i < d; ++i) pos[regs[i]] = i;
  BitMatrix a(d, d);
  BitMatrix b(d, d);
  BitVec c(d);
  for (const auto& eq : sum.equations()) {
    BitMatrix& m = eq.operand == Operand::X ? a : b;
    m.set(pos[eq.target], pos[eq.source], true);
    if (eq.plus_one) c.set(pos[eq.target], true);
  }
  return VecGroupoid(regs, std::move(a), std::move(b), std::move(c));
}

VecGroupoid affine_groupoid(BitMatrix a, BitMatrix b, BitVec c) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() ||
      c.size() != a.rows()) {
    throw InvalidArgument("affine groupoid needs square matrices of equal size and a matching constant");
  }
  std::vector<Register> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Register>(i);
  return VecGroupoid(std::move(idx), std::move(a), std::move(b), std::move(c));
}

BitVec eval_vec(const VecGroupoid& g, const BitVec& x, const BitVec& y) {
  if (x.size() != g.dim() || y.size() != g.dim()) throw InvalidArgument("argument length mismatch");
  BitVec z = g.a() * x;
  z ^= g.b() * y;
  z ^= g.c();
  return z;
}

BitVec eval_term_vec(const VecGroupoid& g, const Term& t, const VecEnvironment& env) {
  if (t.is_leaf()) {
    auto it = env.find(t.var());
    if (it == env.end()) throw InvalidArgument("no value for variable '" + t.var().name() + "'");
    if (it->second.size() != g.dim()) throw InvalidArgument("argument length mismatch");
    return it->second;
  }
  return eval_vec(g, eval_term_vec(g, t.left(), env), eval_term_vec(g, t.right(), env));
}

const BitMatrix& AffineTermForm::coefficient(const VarId& v) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == v) return coeff[i];
  }
  throw InvalidArgument("variable '" + v.name() + "' not in form");
}

BitVec AffineTermForm::eval(std::span<const BitVec> values) const {
  if (values.size() != vars.size()) throw InvalidArgument("wrong number of values");
  BitVec out = constant;
  for (std::size_t i = 0; i < vars.size(); ++i) out ^= coeff[i] * values[i];
  return out;
}

namespace {

std::size_t slot_of(const std::vector<VarId>& vars, const VarId& v) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == v) return i;
  }
  throw InvalidArgument("variable '" + v.name() + "' missing from the variable list");
}

// Walks the tree carrying the product of A/B along the path from the root.
void accumulate_form(const VecGroupoid& g, const Term& t, const BitMatrix& prefix,
                     AffineTermForm& form) {
  if (t.is_leaf()) {
    form.coeff[slot_of(form.vars, t.var())] += prefix;
    return;
  }
  form.constant ^= prefix * g.c();
  accumulate_form(g, t.left(), prefix * g.a(), form);
  accumulate_form(g, t.right(), prefix * g.b(), form);
}

void accumulate_parity(const VecGroupoid& g, const Term& t, const BitVec& prefix, ParityForm& form) {
  if (t.is_leaf()) {
    form.row[slot_of(form.vars, t.var())] ^= prefix;
    return;
  }
  form.constant ^= prefix.dot(g.c());
  accumulate_parity(g, t.left(), prefix * g.a(), form);
  accumulate_parity(g, t.right(), prefix * g.b(), form);
}

}  // namespace

AffineTermForm term_affine_form(const VecGroupoid& g, const Term& t) {
  return term_affine_form(g, t, variables(t));
}

AffineTermForm term_affine_form(const VecGroupoid& g, const Term& t, const std::vector<VarId>& vars) {
  const std::size_t d = g.dim();
  AffineTermForm form{vars, std::vector<BitMatrix>(vars.size(), BitMatrix(d, d)), BitVec(d)};
  accumulate_form(g, t, BitMatrix::identity(d), form);
  return form;
}

ParityForm term_parity_form(const VecGroupoid& g, const Term& t, const std::vector<VarId>& vars,
                            const BitVec& lambda) {
  if (lambda.size() != g.dim()) throw InvalidArgument("functional length mismatch");
  ParityForm form{vars, std::vector<BitVec>(vars.size(), BitVec(g.dim())), false};
  accumulate_parity(g, t, lambda, form);
  return form;
}

Register direct_sum_shift(const VecGroupoid& first) {
  return first.indices().empty() ? 0 : first.indices().back() + 1;
}

VecGroupoid direct_sum(const VecGroupoid& first, const VecGroupoid& second) {
  const Register shift = direct_sum_shift(first);
  const std::size_t d1 = first.dim();
  const std::size_t d = d1 + second.dim();
  std::vector<Register> idx = first.indices();
  for (auto r : second.indices()) idx.push_back(r + shift);
  BitMatrix a(d, d);
  BitMatrix b(d, d);
  auto copy_block = [](BitMatrix& dst, const BitMatrix& src, std::size_t off) {
    for (std::size_t r = 0; r < src.rows(); ++r) {
      for (std::size_t c = 0; c < src.cols(); ++c) {
        if (src.get(r, c)) dst.set(off + r, off + c, true);
      }
    }
  };
  copy_block(a, first.a(), 0);
  copy_block(a, second.a(), d1);
  copy_block(b, first.b(), 0);
  copy_block(b, second.b(), d1);
  return VecGroupoid(std::move(idx), std::move(a), std::move(b), first.c().concat(second.c()));
}

BitVec element_bits(Element e, std::size_t dim) {
  BitVec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v.set(i, (e >> i) & 1u);
  return v;
}

Element element_index(const BitVec& bits) {
  if (bits.size() > 32) throw InvalidArgument("bit vector too long for an element index");
  Element e = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.get(i)) e |= Element{1} << i;
  }
  return e;
}

CayleyGroupoid to_cayley(const VecGroupoid& g, std::size_t max_dim) {
  const std::size_t d = g.dim();
  if (d > max_dim) {
    throw BudgetExceeded("groupoid has " + std::to_string(d) + " registers, table bound is " +
                         std::to_string(max_dim));
  }
  const std::size_t n = std::size_t{1} << d;
  std::vector<Element> ax(n);
  std::vector<Element> by(n);
  for (Element e = 0; e < n; ++e) {
    const BitVec v = element_bits(e, d);
    ax[e] = element_index(g.a() * v);
    by[e] = element_index(g.b() * v);
  }
  const Element c = element_index(g.c());
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = ax[x] ^ by[y] ^ c;
  }
  return CayleyGroupoid(n, std::move(table));
}

}  // namespace gsep
