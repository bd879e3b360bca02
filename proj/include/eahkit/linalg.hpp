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

// Exact Gauss-Jordan elimination and the helpers built on it.

#ifndef EAHKIT_LINALG_HPP_
#define EAHKIT_LINALG_HPP_

#include <optional>
#include <vector>

#include "eahkit/rational.hpp"

namespace eahkit {

struct RowEchelon {
  RatMat reduced;                    // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row of `reduced`
};

RowEchelon rref(const RatMat& m);
std::size_t rank(const RatMat& m);

/// Columns form a basis of {x : M x = 0}; free variables carry identity entries.
RatMat null_space(const RatMat& m);

/// Some solution of M x = rhs, or nullopt when inconsistent.
std::optional<RatVec> solve_any(const RatMat& m, const RatVec& rhs);

}  // namespace eahkit

#endif  // EAHKIT_LINALG_HPP_
