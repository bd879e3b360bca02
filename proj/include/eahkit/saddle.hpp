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


// Ellipsoid Against Hope for bilinear zero-sum games max_x min_y x^T A y
// with value 0, accessed only through a good-enough-response oracle.

#ifndef EAHKIT_SADDLE_HPP_
#define EAHKIT_SADDLE_HPP_

#include <any>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "eahkit/ellipsoid.hpp"
#include "eahkit/polytope.hpp"
#include "eahkit/rational.hpp"

namespace eahkit {

/// A strategy x of the max player (opaque) and its row x^T A.
struct GerResponse {
  std::any handle;
  RatVec row;
};

/// Given y in Y, must return x with x^T A y >= 0.
struct GerOracle {
  std::function<GerResponse(const RatVec&)> respond;
  /// Declared bound on encoding_length(row); informational.
  EncodingLength declared_bound{};
};

/// [[A, 0], [0, -opt]]: the bilinear form of (x, 1) and (y, 1) is x^T A y - opt.
RatMat shift_to_zero(const RatMat& a, const Rat& opt);

struct CombinedAnswer {
  Halfspace cut;
  std::optional<GerResponse> response;
};

/// One step of the separation oracle for {y' in cone : x^T A y' <= -1 for all x}.
/// `cone` is homogenize(Y, anchor). The apex yields the constant row 0 <= -1.
CombinedAnswer combined_oracle(const GerOracle& ger, const HPolytope& cone, std::size_t anchor,
                               const RatVec& y_prime);

struct SaddleConfig {
  long r_exp_cap = 8;
  long eps_exp_cap = 32;
  /// Number of reruns with doubled exponent caps after the first run.
  int escalation_cap = 6;
  /// Iteration limit of the first run, doubled on each escalation; 0 uses
  /// the derived max_iters.
  std::size_t max_iters_override = 0;
  std::size_t vertex_dim_limit = kDefaultVertexDimLimit;
  /// Try to solve the compressed program while the ellipsoid is running.
  bool early_certify = true;
  /// Replay the ellipsoid against the collected responses only and check
  /// that it never finds a point.
  bool replay_check = false;
  std::ostream* transcript = nullptr;
};

struct SaddleStats {
  std::size_t ger_calls = 0;
  std::size_t distinct_responses = 0;
  std::size_t ellipsoid_dim = 0;
  int escalations = 0;
  std::size_t ellipsoid_iterations = 0;
  /// max_iters of each ellipsoid run that was started.
  std::vector<std::size_t> max_iters;
  /// Upper bound on the support of a basic solution: dim aff(Y) + 1.
  std::size_t support_bound = 0;
};

struct SaddleSolution {
  std::vector<std::pair<GerResponse, Rat>> mixture;
  RatVec mixed_row;
  /// min over Y of mixed_row . y, exactly; >= 0.
  Rat value_check;
  SaddleStats stats;
};

SaddleSolution solve_saddle(const GerOracle& ger, const HPolytope& y_set, EncodingLength phi_bound,
                            const SaddleConfig& config = {});

/// Value max_x min_y x^T A y over the simplices, by an exact LP.
Rat matrix_game_value(const RatMat& a);

/// Best response over the vertices of X for the (already shifted) matrix A.
GerOracle vertex_best_response_oracle(const RatMat& a, const HPolytope& x_set);

}  // namespace eahkit

#endif  // EAHKIT_SADDLE_HPP_
