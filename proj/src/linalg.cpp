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

#include "eahkit/linalg.hpp"

#include "eahkit/error.hpp"

namespace eahkit {

namespace {

using Rows = std::vector<std::vector<Rat>>;

Rows to_rows(const RatMat& m) {
  Rows r(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

// In-place Gauss-Jordan on `rows`; returns pivot columns. Only the first
// `ncols` columns are eligible as pivots (the rest ride along).
std::vector<std::size_t> gauss_jordan(Rows& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rat inv = 1 / rows[r][c];
    for (auto& x : rows[r]) {
      if (sgn(x) != 0) x *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

RowEchelon rref(const RatMat& m) {
  Rows rows = to_rows(m);
  auto pivots = gauss_jordan(rows, m.cols());
  RatMat reduced(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) reduced(i, j) = rows[i][j];
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const RatMat& m) { return rref(m).pivots.size(); }

RatMat null_space(const RatMat& m) {
  const auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  RatMat basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -reduced(i, f);
  }
  return basis;
}

std::optional<RatVec> solve_any(const RatMat& m, const RatVec& rhs) {
  EAHKIT_CHECK(m.rows() == rhs.size(), ErrorCode::kDimensionMismatch, "solve_any size mismatch");
  Rows rows = to_rows(m);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
  auto pivots = gauss_jordan(rows, m.cols() + 1);
  RatVec x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;  // 0 = nonzero
    x[pivots[i]] = rows[i][m.cols()];
  }
  return x;
}

}  // namespace eahkit
