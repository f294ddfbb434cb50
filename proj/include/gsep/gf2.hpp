#pragma once

// Dense vectors and matrices over GF(2), packed 64 bits per word.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsep {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t size);
  static BitVec from_string(const std::string& bits);  // "0110"
  static BitVec unit(std::size_t size, std::size_t index);

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept {
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept;
  // Inner product mod 2.
  bool dot(const BitVec& other) const;

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  // Concatenation: this followed by other.
  BitVec concat(const BitVec& other) const;
  BitVec slice(std::size_t offset, std::size_t length) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }
  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value) noexcept {
    std::uint64_t& w = data_[r * wpr_ + (c >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    w = value ? (w | mask) : (w & ~mask);
  }

  BitVec row(std::size_t r) const;
  void set_row(std::size_t r, const BitVec& v);
  bool is_zero() const noexcept;

  BitMatrix transpose() const;
  // Horizontal concatenation [this | other].
  BitMatrix hstack(const BitMatrix& other) const;

  BitMatrix& operator+=(const BitMatrix& other);
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend BitVec operator*(const BitMatrix& a, const BitVec& v);
  // Row vector times matrix.
  friend BitVec operator*(const BitVec& v, const BitMatrix& a);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  std::vector<std::vector<int>> to_rows() const;

 private:
  friend class LinearSystem;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;  // words per row
  std::vector<std::uint64_t> data_;
};

// Result of solving M·x = b over GF(2). Exactly one of the two members is
// set: a particular solution (free variables zero), or a row vector y with
// y·M = 0 and y·b = 1 proving that no solution exists.
struct SolveResult {
  std::optional<BitVec> solution;
  std::optional<BitVec> obstruction;
};

SolveResult solve(const BitMatrix& m, const BitVec& b);
std::size_t rank(const BitMatrix& m);

}  // namespace gsep
