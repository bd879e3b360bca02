// Copyright 2026 The eahkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact rational scalars, vectors and matrices.
//
// Rat is GMP's mpq_class. Every arithmetic operator of mpq_class returns a
// canonical (reduced, positive denominator) value; the only way to obtain a
// non-canonical value is the two-argument constructor, which is why callers
// should go through frac() or parse_rat() instead.

#ifndef EAHKIT_RATIONAL_HPP_
#define EAHKIT_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eahkit {

using Rat = mpq_class;

/// Canonical num/den. Throws kInvalidArgument on a zero denominator.
Rat frac(long num, long den);

/// Parses "p/q", "p", with an optional leading '-' (or U+2212).
Rat parse_rat(std::string_view text);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rat& r);

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Total bit length of an object's coefficients.
struct EncodingLength {
  std::uint64_t bits = 0;

  friend auto operator<=>(const EncodingLength&, const EncodingLength&) = default;
  EncodingLength& operator+=(EncodingLength other) {
    bits += other.bits;
    return *this;
  }
  friend EncodingLength operator+(EncodingLength a, EncodingLength b) { return a += b; }
};

class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::size_t n) : v_(n) {}
  RatVec(std::initializer_list<Rat> init) : v_(init) {}
  explicit RatVec(std::vector<Rat> v) : v_(std::move(v)) {}

  static RatVec unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  Rat& operator[](std::size_t i) { return v_[i]; }
  const Rat& operator[](std::size_t i) const { return v_[i]; }
  Rat& at(std::size_t i);
  const Rat& at(std::size_t i) const;

  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }

  const std::vector<Rat>& values() const noexcept { return v_; }

  bool is_zero() const;

  RatVec& operator+=(const RatVec& o);
  RatVec& operator-=(const RatVec& o);
  RatVec& operator*=(const Rat& s);
  RatVec& operator/=(const Rat& s);

  friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
  friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
  friend RatVec operator*(RatVec a, const Rat& s) { return a *= s; }
  friend RatVec operator*(const Rat& s, RatVec a) { return a *= s; }
  friend RatVec operator/(RatVec a, const Rat& s) { return a /= s; }
  RatVec operator-() const;

  friend bool operator==(const RatVec& a, const RatVec& b) { return a.v_ == b.v_; }
  friend bool operator<(const RatVec& a, const RatVec& b) { return a.v_ < b.v_; }

 private:
  std::vector<Rat> v_;
};

Rat dot(const RatVec& a, const RatVec& b);
/// Concatenation a ++ b.
RatVec concat(const RatVec& a, const RatVec& b);

class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  RatMat(std::initializer_list<std::initializer_list<Rat>> init);

  /// All rows must have `cols` entries; `cols` fixes the width of an empty matrix.
  static RatMat from_rows(const std::vector<RatVec>& rows, std::size_t cols);
  static RatMat identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RatVec row(std::size_t i) const;
  RatVec col(std::size_t j) const;
  RatMat transpose() const;

  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

RatVec operator*(const RatMat& m, const RatVec& x);
/// Row vector times matrix, x^T M.
RatVec left_multiply(const RatVec& x, const RatMat& m);
RatMat operator*(const RatMat& a, const RatMat& b);
RatMat operator-(const RatMat& a, const RatMat& b);

EncodingLength encoding_length(const Rat& r);
EncodingLength encoding_length(const RatVec& v);
EncodingLength encoding_length(const RatMat& m);
/// Length of the inequality a.x <= b (or equality): coefficients plus bound.
EncodingLength encoding_length(const RatVec& a, const Rat& b);

std::ostream& operator<<(std::ostream& os, const RatVec& v);
std::ostream& operator<<(std::ostream& os, const RatMat& m);

}  // namespace eahkit

#endif  // EAHKIT_RATIONAL_HPP_
