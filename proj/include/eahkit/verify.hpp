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

// Exact equilibrium checking and a brute-force Phi-equilibrium oracle that
// works over the full joint distribution of pure profiles.

#ifndef EAHKIT_VERIFY_HPP_
#define EAHKIT_VERIFY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "eahkit/games.hpp"
#include "eahkit/phi.hpp"

namespace eahkit {

struct Violation {
  std::size_t player = 0;
  RatVec deviation;
  Rat benefit;
};

struct VerifyResult {
  bool pass = false;
  /// Set when some deviation has positive benefit (the largest one found).
  std::optional<Violation> violation;
  /// Set when the mixture itself is malformed (weights, profiles).
  std::string problem;
  std::vector<PlayerCertificate> players;
};

/// Checks every Phi-equilibrium constraint exactly: per player by LP over
/// the deviation polytope and, when it is small enough, by its vertices.
VerifyResult verify_equilibrium(const PolyhedralGame& game, const std::vector<DeviationSet>& devs,
                                const std::vector<std::pair<PureProfile, Rat>>& support,
                                std::size_t vertex_dim_limit = kDefaultVertexDimLimit);

struct BruteForceReport {
  std::vector<PureProfile> profiles;
  /// One weight per profile; empty when infeasible.
  RatVec distribution;
  bool feasible = false;
  std::optional<MixtureEquilibrium> equilibrium;
};

inline constexpr std::size_t kDefaultBruteForceCap = 4096;

/// The cap from EAHKIT_MAX_BRUTE, or the default.
std::size_t brute_force_cap();

/// Solves for a distribution over all pure profiles satisfying every
/// constraint directly. Deviation polytopes with too many dimensions to
/// enumerate are handled through their LP dual. Throws InstanceTooLarge
/// when the number of profiles exceeds `cap`.
BruteForceReport brute_force_equilibrium(const PolyhedralGame& game,
                                         const std::vector<DeviationSet>& devs,
                                         std::size_t cap = brute_force_cap(),
                                         std::size_t vertex_dim_limit = kDefaultVertexDimLimit);

/// Every pure profile, last player fastest. Throws InstanceTooLarge above `cap`.
std::vector<PureProfile> all_pure_profiles(const PolyhedralGame& game, std::size_t cap);

}  // namespace eahkit

#endif  // EAHKIT_VERIFY_HPP_
