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

#include "eahkit/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "eahkit/error.hpp"

namespace eahkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnboundedInput: return "UnboundedInput";
    case ErrorCode::kPointOutsideSet: return "PointOutsideSet";
    case ErrorCode::kEmptyInputSet: return "EmptyInputSet";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kOracleContractViolation: return "OracleContractViolation";
    case ErrorCode::kGerContractViolation: return "GerContractViolation";
    case ErrorCode::kVerificationFailedAfterMaxEscalations:
      return "VerificationFailedAfterMaxEscalations";
    case ErrorCode::kGradientOracleFailure: return "GradientOracleFailure";
    case ErrorCode::kNoFixedPoint: return "NoFixedPoint";
    case ErrorCode::kPurificationFailure: return "PurificationFailure";
    case ErrorCode::kCertificateFailure: return "CertificateFailure";
    case ErrorCode::kImperfectRecall: return "ImperfectRecall";
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

Rat frac(long num, long den) {
  EAHKIT_CHECK(den != 0, ErrorCode::kInvalidArgument, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  } else if (s.substr(0, 3) == "\xE2\x88\x92") {
    negative = true;
    s.remove_prefix(3);
  }
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

RatVec RatVec::unit(std::size_t n, std::size_t i) {
  RatVec v(n);
  v.at(i) = 1;
  return v;
}

Rat& RatVec::at(std::size_t i) {
  EAHKIT_CHECK(i < v_.size(), ErrorCode::kDimensionMismatch, "index out of range");
  return v_[i];
}

const Rat& RatVec::at(std::size_t i) const {
  EAHKIT_CHECK(i < v_.size(), ErrorCode::kDimensionMismatch, "index out of range");
  return v_[i];
}

bool RatVec::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rat& r) { return sgn(r) == 0; });
}

RatVec& RatVec::operator+=(const RatVec& o) {
  EAHKIT_CHECK(size() == o.size(), ErrorCode::kDimensionMismatch, "vector sizes differ");
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (sgn(o.v_[i]) != 0) v_[i] += o.v_[i];
  }
  return *this;
}

RatVec& RatVec::operator-=(const RatVec& o) {
  EAHKIT_CHECK(size() == o.size(), ErrorCode::kDimensionMismatch, "vector sizes differ");
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (sgn(o.v_[i]) != 0) v_[i] -= o.v_[i];
  }
  return *this;
}

RatVec& RatVec::operator*=(const Rat& s) {
  for (auto& x : v_) {
    if (sgn(x) != 0) x *= s;
  }
  return *this;
}

RatVec& RatVec::operator/=(const Rat& s) {
  EAHKIT_CHECK(sgn(s) != 0, ErrorCode::kInvalidArgument, "division by zero");
  for (auto& x : v_) {
    if (sgn(x) != 0) x /= s;
  }
  return *this;
}

RatVec RatVec::operator-() const {
  RatVec r(*this);
  for (auto& x : r.v_) x = -x;
  return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
  EAHKIT_CHECK(a.size() == b.size(), ErrorCode::kDimensionMismatch,
               "dot of sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RatVec concat(const RatVec& a, const RatVec& b) {
  std::vector<Rat> v(a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return RatVec(std::move(v));
}

RatMat::RatMat(std::initializer_list<std::initializer_list<Rat>> init)
    : rows_(init.size()), cols_(init.size() == 0 ? 0 : init.begin()->size()) {
  a_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    EAHKIT_CHECK(r.size() == cols_, ErrorCode::kDimensionMismatch, "ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

RatMat RatMat::from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
  RatMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EAHKIT_CHECK(rows[i].size() == cols, ErrorCode::kDimensionMismatch, "row width mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return m;
}

RatMat RatMat::identity(std::size_t n) {
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVec RatMat::row(std::size_t i) const {
  EAHKIT_CHECK(i < rows_, ErrorCode::kDimensionMismatch, "row index out of range");
  return RatVec(std::vector<Rat>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                 a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
}

RatVec RatMat::col(std::size_t j) const {
  EAHKIT_CHECK(j < cols_, ErrorCode::kDimensionMismatch, "column index out of range");
  RatVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatVec operator*(const RatMat& m, const RatVec& x) {
  EAHKIT_CHECK(m.cols() == x.size(), ErrorCode::kDimensionMismatch, "matrix-vector size mismatch");
  RatVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(i, j)) != 0 && sgn(x[j]) != 0) s += m(i, j) * x[j];
    }
    y[i] = s;
  }
  return y;
}

RatVec left_multiply(const RatVec& x, const RatMat& m) {
  EAHKIT_CHECK(m.rows() == x.size(), ErrorCode::kDimensionMismatch, "vector-matrix size mismatch");
  RatVec y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(i, j)) != 0) y[j] += x[i] * m(i, j);
    }
  }
  return y;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  EAHKIT_CHECK(a.cols() == b.rows(), ErrorCode::kDimensionMismatch, "matrix product size mismatch");
  RatMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) != 0) c(i, j) += a(i, k) * b(k, j);
      }
    }
  return c;
}

RatMat operator-(const RatMat& a, const RatMat& b) {
  EAHKIT_CHECK(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kDimensionMismatch,
               "matrix difference size mismatch");
  RatMat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

// Numerator magnitude in ceil(log2(|p|+1)) bits and q-1 in ceil(log2 q) bits,
// each at least one bit, plus a sign bit and a separator.
EncodingLength encoding_length(const Rat& r) {
  mpz_class num = abs(r.get_num());
  mpz_class den_minus_one = r.get_den() - 1;
  return EncodingLength{mpz_sizeinbase(num.get_mpz_t(), 2) +
                        mpz_sizeinbase(den_minus_one.get_mpz_t(), 2) + 2};
}

EncodingLength encoding_length(const RatVec& v) {
  EncodingLength total;
  for (const auto& x : v) total += encoding_length(x);
  return total;
}

EncodingLength encoding_length(const RatMat& m) {
  EncodingLength total;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) total += encoding_length(m(i, j));
  return total;
}

EncodingLength encoding_length(const RatVec& a, const Rat& b) {
  return encoding_length(a) + encoding_length(b);
}

std::ostream& operator<<(std::ostream& os, const RatVec& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const RatMat& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "; " : "") << m.row(i);
  return os << ']';
}

}  // namespace eahkit
