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

// Exact two-phase simplex over the rationals.
//
// Programs are stated over free variables:
//
//     max / min  c.x   s.t.  A x <= b,  E x = f.
//
// Internally single-variable rows are turned into bounds (a row -x_j <= -l
// becomes x_j >= l; a row e x_j = f fixes x_j), free variables are eliminated
// by Gauss-Jordan steps, and the remaining standard-form program over
// nonnegative variables is solved with Bland's rule in both phases. Every
// outcome comes back in terms of the original rows: optimal points are basic
// (vertices, when the feasible region has one), infeasibility comes with a
// Farkas multiplier vector, unboundedness with an improving ray.

#ifndef EAHKIT_LP_HPP_
#define EAHKIT_LP_HPP_

#include <optional>
#include <variant>
#include <vector>

#include "eahkit/rational.hpp"

namespace eahkit {

/// A x <= b together with E x = f, all over the same columns.
struct LinearSystem {
  RatMat ineq_lhs;
  RatVec ineq_rhs;
  RatMat eq_lhs;
  RatVec eq_rhs;

  /// Empty system over `dim` columns.
  static LinearSystem empty(std::size_t dim) {
    return {RatMat(0, dim), RatVec(), RatMat(0, dim), RatVec()};
  }

  std::size_t dim() const { return ineq_lhs.cols(); }
  void validate() const;
};

enum class Sense { kMaximize, kMinimize };

struct LpOptimal {
  RatVec point;
  Rat value;
  /// Structural variables that are basic in the final basis, ascending.
  std::vector<std::size_t> basis;
};

/// u >= 0 on inequality rows, v free on equality rows, with
/// u^T A + v^T E = 0 and u^T b + v^T f < 0.
struct LpInfeasible {
  RatVec ineq_multipliers;
  RatVec eq_multipliers;
};

/// `point` is feasible and `point + t * ray` stays feasible for all t >= 0
/// while strictly improving the objective.
struct LpUnbounded {
  RatVec point;
  RatVec ray;
};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

LpOutcome lp_solve(const RatVec& objective, const LinearSystem& system, Sense sense);

/// Feasibility-only convenience: a basic feasible point, or nullopt.
std::optional<RatVec> lp_find_point(const LinearSystem& system);

bool satisfies(const LinearSystem& system, const RatVec& x);
bool verify_farkas(const LinearSystem& system, const LpInfeasible& cert);
bool verify_ray(const LinearSystem& system, const RatVec& objective, Sense sense,
                const LpUnbounded& unbounded);

}  // namespace eahkit

#endif  // EAHKIT_LP_HPP_
