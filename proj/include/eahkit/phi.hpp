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

// Linear Phi-equilibria of polyhedral games, computed as saddle points of
// the meta-game between a correlator (distributions over pure profiles) and
// a deviator (one linear map B_p per player).
//
// Orientation: strategies are column vectors and a deviation acts as
// x -> B x, so B[b][a] moves mass from coordinate a to coordinate b.
// Flattened matrices are row-major: B[b][a] sits at b * d + a.

#ifndef EAHKIT_PHI_HPP_
#define EAHKIT_PHI_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "eahkit/games.hpp"
#include "eahkit/polytope.hpp"
#include "eahkit/saddle.hpp"

namespace eahkit {

/// Admissible deviation matrices of one player. The polytope lives over the
/// d*d matrix entries followed by any auxiliary coordinates.
struct DeviationSet {
  std::size_t player = 0;
  std::size_t matrix_dim = 0;
  HPolytope polytope;
  bool includes_identity = false;

  std::size_t aux_dim() const { return polytope.dim() - matrix_dim * matrix_dim; }
  /// The matrix part of a point of the polytope.
  RatMat matrix(const RatVec& point) const;
};

RatVec flatten(const RatMat& b);

/// All column-stochastic d x d matrices (swap deviations, correlated
/// equilibrium in normal-form games).
DeviationSet make_swap_deviations(std::size_t d, std::size_t player = 0);

/// Constant maps x -> z with z in A_p, written as B = z l^T for a linear
/// functional l that equals 1 on A_p. With `anchor` the functional is the
/// unit vector of that coordinate (checked to be fixed to 1); otherwise it
/// is derived from the equality rows of A_p.
DeviationSet make_constant_deviations(const HPolytope& a_p,
                                      std::optional<std::size_t> anchor = std::nullopt,
                                      std::size_t player = 0);

/// Convex hull of the set and the identity matrix, kept in lifted form with
/// a mixing coordinate lambda (and the original auxiliary coordinates scaled
/// by 1 - lambda) appended after the existing ones.
DeviationSet with_identity(const DeviationSet& dev);

/// Whether some point of the set has the identity as its matrix part.
bool contains_identity(const DeviationSet& dev);

/// Checks B A_p within A_p for every vertex B of the set and every vertex of
/// A_p. Returns nullopt when either set is too large to enumerate, otherwise
/// whether the check passed.
std::optional<bool> check_self_map(const DeviationSet& dev, const HPolytope& a_p,
                                   std::size_t vertex_dim_limit = kDefaultVertexDimLimit);

/// Y = Phi_1 x ... x Phi_n x {1}. Coordinates: all matrix blocks in player
/// order, then all auxiliary blocks, then the anchor.
struct MetaGame {
  HPolytope y_set;
  std::vector<std::size_t> matrix_offset;
  std::vector<std::size_t> aux_offset;
  std::vector<std::size_t> dims;
  std::size_t anchor = 0;
  /// N = sum_p d_p^2.
  std::size_t matrix_entries = 0;

  std::vector<RatMat> matrices(const RatVec& y) const;
};

MetaGame build_meta_game(const PolyhedralGame& game, const std::vector<DeviationSet>& devs);

/// Row of the meta-game matrix for a pure profile s: entry of B_p[b][a] is
/// -s_p[a] g_p(s_{-p})[b], the anchor entry is sum_p u_p(s), auxiliary
/// entries are zero.
RatVec meta_row(const PolyhedralGame& game, const MetaGame& meta, const PureProfile& s);

/// g_p(x_{-p}) with every marginal checked against its polytope.
RatVec utility_gradient(const PolyhedralGame& game, std::size_t p,
                        const std::vector<RatVec>& marginals);

/// x in A_p with B x = x exactly. Throws NoFixedPoint.
RatVec fixed_point(const RatMat& b, const HPolytope& a_p);

/// sum_p g_p(x_{-p}) . (x_p - B_p x_p).
Rat product_payoff(const PolyhedralGame& game, const std::vector<RatVec>& marginals,
                   const std::vector<RatMat>& deviations);

/// Called after each player's strategy has been fixed to a vertex, with the
/// product payoff at that moment.
using PurificationObserver = std::function<void(std::size_t player, const Rat& payoff)>;

/// Good-enough response for the meta-game: fixed points, then per-player
/// Caratheodory purification. The handle is a PureProfile.
GerOracle purified_ger(const PolyhedralGame& game, const MetaGame& meta,
                       PurificationObserver observer = nullptr);

/// Benefit of deviating with a particular point of Phi_p (positive means the
/// deviation pays).
struct DeviationBenefit {
  std::size_t player = 0;
  RatVec deviation;
  Rat benefit;
};

struct MixtureEquilibrium {
  std::vector<std::pair<PureProfile, Rat>> support;
  std::vector<DeviationBenefit> certificate;
};

/// E[u_p(B s_p, s_{-p})] - E[u_p(s)] as an affine function c . w - base over
/// points w of the deviation polytope.
struct BenefitFunction {
  RatVec coefficients;
  Rat base;

  Rat operator()(const RatVec& w) const { return dot(coefficients, w) - base; }
};

BenefitFunction benefit_function(const PolyhedralGame& game, const DeviationSet& dev,
                                 const std::vector<std::pair<PureProfile, Rat>>& support);

/// Largest benefit per player, computed twice where possible: by one LP over
/// the deviation polytope and by enumerating its vertices. Throws
/// CertificateFailure if the two disagree.
struct PlayerCertificate {
  std::size_t player = 0;
  Rat max_benefit;
  RatVec argmax;
  /// Every vertex with its benefit, when the polytope was enumerable.
  std::optional<std::vector<DeviationBenefit>> vertices;
};

std::vector<PlayerCertificate> certify(const PolyhedralGame& game,
                                       const std::vector<DeviationSet>& devs,
                                       const std::vector<std::pair<PureProfile, Rat>>& support,
                                       std::size_t vertex_dim_limit = kDefaultVertexDimLimit);

struct PhiOptions {
  // Meta-game Y sets are large; enumerate their vertices only when tiny.
  PhiOptions() { saddle.vertex_dim_limit = 6; }

  SaddleConfig saddle;
  PurificationObserver observer;
  std::size_t certificate_dim_limit = kDefaultVertexDimLimit;
  /// Skip the vertex-by-vertex self-map check of the deviation sets.
  bool skip_self_map_check = false;
};

struct PhiSolution {
  MixtureEquilibrium equilibrium;
  SaddleStats stats;
  EncodingLength phi;
  /// N = sum_p d_p^2.
  std::size_t n_bound = 0;
  /// Players whose set lacked the identity and was solved via with_identity.
  std::vector<bool> lifted;
};

PhiSolution solve_phi_equilibrium(const PolyhedralGame& game, const std::vector<DeviationSet>& devs,
                                  const PhiOptions& options = {});

}  // namespace eahkit

#endif  // EAHKIT_PHI_HPP_
