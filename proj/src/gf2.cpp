#include "gsep/gf2.hpp"

#include <bit>
#include <cassert>
#include <utility>

#include "gsep/errors.hpp"

namespace gsep {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

BitVec::BitVec(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVec BitVec::from_string(const std::string& bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw InvalidArgument("bit string may only contain 0 and 1");
    }
  }
  return v;
}

BitVec BitVec::unit(std::size_t size, std::size_t index) {
  BitVec v(size);
  v.set(index, true);
  return v;
}

bool BitVec::any() const noexcept {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::size_t BitVec::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitVec::dot(const BitVec& other) const {
  if (other.size_ != size_) throw InvalidArgument("bit vector length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (other.size_ != size_) throw InvalidArgument("bit vector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVec BitVec::concat(const BitVec& other) const {
  BitVec out(size_ + other.size_);
  for (std::size_t i = 0; i < size_; ++i) out.set(i, get(i));
  for (std::size_t i = 0; i < other.size_; ++i) out.set(size_ + i, other.get(i));
  return out;
}

BitVec BitVec::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > size_) throw InvalidArgument("slice out of range");
  BitVec out(length);
  for (std::size_t i = 0; i < length; ++i) out.set(i, get(offset + i));
  return out;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), data_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0 && rows[r][c] != 1) {
        throw InvalidArgument("matrix entries must be 0 or 1");
      }
      m.set(r, c, rows[r][c] == 1);
    }
  }
  return m;
}

BitVec BitMatrix::row(std::size_t r) const {
  BitVec v(cols_);
  auto w = v.words();
  for (std::size_t i = 0; i < wpr_; ++i) w[i] = data_[r * wpr_ + i];
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
  if (v.size() != cols_) throw InvalidArgument("row length mismatch");
  auto w = v.words();
  for (std::size_t i = 0; i < wpr_; ++i) data_[r * wpr_ + i] = w[i];
}

bool BitMatrix::is_zero() const noexcept {
  for (auto w : data_) {
    if (w != 0) return false;
  }
  return true;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

BitMatrix BitMatrix::hstack(const BitMatrix& other) const {
  if (other.rows_ != rows_) throw InvalidArgument("hstack row mismatch");
  BitMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) out.set(r, c, true);
    }
    for (std::size_t c = 0; c < other.cols_; ++c) {
      if (other.get(r, c)) out.set(r, cols_ + c, true);
    }
  }
  return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw InvalidArgument("matrix dimension mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= other.data_[i];
  return *this;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix dimension mismatch");
  BitMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    std::uint64_t* dst = &out.data_[r * out.wpr_];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!a.get(r, k)) continue;
      const std::uint64_t* src = &b.data_[k * b.wpr_];
      for (std::size_t i = 0; i < b.wpr_; ++i) dst[i] ^= src[i];
    }
  }
  return out;
}

BitVec operator*(const BitMatrix& a, const BitVec& v) {
  if (a.cols_ != v.size()) throw InvalidArgument("matrix/vector dimension mismatch");
  BitVec out(a.rows_);
  auto vw = v.words();
  for (std::size_t r = 0; r < a.rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.wpr_; ++i) acc ^= a.data_[r * a.wpr_ + i] & vw[i];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

BitVec operator*(const BitVec& v, const BitMatrix& a) {
  if (a.rows_ != v.size()) throw InvalidArgument("vector/matrix dimension mismatch");
  BitVec out(a.cols_);
  auto ow = out.words();
  for (std::size_t r = 0; r < a.rows_; ++r) {
    if (!v.get(r)) continue;
    for (std::size_t i = 0; i < a.wpr_; ++i) ow[i] ^= a.data_[r * a.wpr_ + i];
  }
  return out;
}

std::vector<std::vector<int>> BitMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = get(r, c) ? 1 : 0;
  }
  return out;
}

// Gauss-Jordan elimination on [M | b] while tracking, for every row, which
// original rows were combined into it.
class LinearSystem {
 public:
  LinearSystem(const BitMatrix& m, const BitVec& b)
      : cols_(m.cols()), aug_(m.hstack(column(b))), combo_(BitMatrix::identity(m.rows())) {}

  SolveResult solve() {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < aug_.rows(); ++c) {
      std::size_t p = r;
      while (p < aug_.rows() && !aug_.get(p, c)) ++p;
      if (p == aug_.rows()) continue;
      swap_rows(p, r);
      for (std::size_t i = 0; i < aug_.rows(); ++i) {
        if (i != r && aug_.get(i, c)) add_row(r, i);
      }
      pivot_cols.push_back(c);
      ++r;
    }
    SolveResult result;
    for (std::size_t i = r; i < aug_.rows(); ++i) {
      if (aug_.get(i, cols_)) {
        result.obstruction = combo_.row(i);
        return result;
      }
    }
    BitVec x(cols_);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      if (aug_.get(i, cols_)) x.set(pivot_cols[i], true);
    }
    result.solution = std::move(x);
    rank_ = r;
    return result;
  }

  std::size_t rank() {
    solve();
    return rank_;
  }

 private:
  static BitMatrix column(const BitVec& b) {
    BitMatrix m(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) m.set(i, 0, b.get(i));
    return m;
  }

  static void swap_rows(BitMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.wpr_; ++i) {
      std::swap(m.data_[a * m.wpr_ + i], m.data_[b * m.wpr_ + i]);
    }
  }
  static void add_row(BitMatrix& m, std::size_t src, std::size_t dst) {
    for (std::size_t i = 0; i < m.wpr_; ++i) m.data_[dst * m.wpr_ + i] ^= m.data_[src * m.wpr_ + i];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    swap_rows(aug_, a, b);
    swap_rows(combo_, a, b);
  }
  void add_row(std::size_t src, std::size_t dst) {
    add_row(aug_, src, dst);
    add_row(combo_, src, dst);
  }

  std::size_t cols_;
  BitMatrix aug_;
  BitMatrix combo_;
  std::size_t rank_ = 0;
};

SolveResult solve(const BitMatrix& m, const BitVec& b) {
  if (b.size() != m.rows()) throw InvalidArgument("right-hand side length mismatch");
  return LinearSystem(m, b).solve();
}

std::size_t rank(const BitMatrix& m) {
  return LinearSystem(m, BitVec(m.rows())).rank();
}

}  // namespace gsep
