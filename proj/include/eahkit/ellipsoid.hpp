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


// Central-cut ellipsoid method driven by an exact separation oracle.
//
// The ellipsoid {z : (z - a)^T P^{-1} (z - a) <= 1} is stored in binary
// floating point (gmp mpf) with a per-step blow-up factor; every center is
// converted exactly to a rational before it is shown to the oracle, and every
// answer is checked exactly against that rational center.

#ifndef EAHKIT_ELLIPSOID_HPP_
#define EAHKIT_ELLIPSOID_HPP_

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "eahkit/polytope.hpp"
#include "eahkit/rational.hpp"

namespace eahkit {

/// Radius R = 2^r_exp, volume threshold eps = 2^-eps_exp.
struct EllipsoidParams {
  long r_exp = 4;
  long eps_exp = 32;
  std::size_t max_iters = 0;  // 0: derived from dim and the exponents
  unsigned precision_bits = 256;

  Rat radius() const;
  Rat eps() const;
  /// 10 * (dim * log2(1/eps) + dim^2 * log2(R)).
  static std::size_t default_max_iters(std::size_t dim, long r_exp, long eps_exp);
  /// r_exp = dim^2 * phi and eps_exp = 5 * dim^3 * phi, each clipped to its cap.
  static EllipsoidParams derived(std::size_t dim, EncodingLength phi, long r_exp_cap,
                                 long eps_exp_cap);
};

using SeparationOracle = std::function<SeparationResult(const RatVec&)>;

enum class EllipsoidOutcome {
  kFeasible,  // the oracle accepted a center
  kEmpty,     // volume fell below eps, or the oracle cut off everything
  kExhausted, // max_iters reached
  kStopped,   // the stop hook asked to end the run
};

struct EllipsoidStep {
  RatVec center;
  SeparationResult answer;
  /// log2 sqrt(det P) of the shape matrix after this step's update.
  double log2_volume = 0;
};

struct EllipsoidTranscript {
  std::vector<EllipsoidStep> steps;  // filled when recording is on
  std::size_t iterations = 0;        // oracle calls made
  EllipsoidOutcome outcome = EllipsoidOutcome::kEmpty;
  std::optional<RatVec> point;       // set for kFeasible
  double final_log2_volume = 0;      // log2 sqrt(det P) at the end
};

struct CentralCutOptions {
  bool record = false;
  /// Called after each cut with the number of oracle calls so far.
  std::function<bool(std::size_t)> stop;
};

EllipsoidTranscript central_cut(const SeparationOracle& oracle, const EllipsoidParams& params,
                                std::size_t dim, const CentralCutOptions& options = {});

/// central_cut with parameters derived from the dimension and facet
/// complexity bound.
EllipsoidTranscript certify_empty_or_point(const SeparationOracle& oracle, std::size_t dim,
                                           EncodingLength phi_bound, long r_exp_cap,
                                           long eps_exp_cap,
                                           const CentralCutOptions& options = {});

/// One line per step: index, center, answer kind, hyperplane.
void write_transcript(std::ostream& os, const EllipsoidTranscript& t);

}  // namespace eahkit

#endif  // EAHKIT_ELLIPSOID_HPP_
