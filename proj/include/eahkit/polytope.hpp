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


// Rational polyhedra in H-representation.

#ifndef EAHKIT_POLYTOPE_HPP_
#define EAHKIT_POLYTOPE_HPP_

#include <optional>
#include <variant>
#include <vector>

#include "eahkit/lp.hpp"
#include "eahkit/rational.hpp"

namespace eahkit {

/// normal . x <= offset
struct Halfspace {
  RatVec normal;
  Rat offset;
};

struct SeparationResult {
  std::optional<Halfspace> cut;

  bool inside() const { return !cut.has_value(); }
  static SeparationResult Inside() { return {}; }
  static SeparationResult Violated(Halfspace h) { return {std::move(h)}; }
};

/// {x : A x <= b, E x = f}.
class HPolytope {
 public:
  explicit HPolytope(LinearSystem system);
  HPolytope(RatMat a, RatVec b, RatMat e, RatVec f);

  /// {x >= 0, sum x = 1} in d coordinates.
  static HPolytope simplex(std::size_t d);
  /// {lo <= x <= hi}.
  static HPolytope box(const RatVec& lo, const RatVec& hi);

  std::size_t dim() const { return sys_.dim(); }
  std::size_t num_ineq() const { return sys_.ineq_lhs.rows(); }
  std::size_t num_eq() const { return sys_.eq_lhs.rows(); }
  const LinearSystem& system() const { return sys_; }
  /// Largest encoding length of a stored row.
  EncodingLength facet_complexity() const { return phi_; }

  bool contains(const RatVec& x) const { return satisfies(sys_, x); }

 private:
  LinearSystem sys_;
  EncodingLength phi_;
};

/// First violated row in storage order (inequalities, then equalities, the
/// latter oriented the way they are violated).
SeparationResult separate(const HPolytope& p, const RatVec& y);

/// x lies in P and the rows tight at x have full rank.
bool is_vertex(const HPolytope& p, const RatVec& x);

/// P x {1}: one extra trailing coordinate fixed to 1.
HPolytope with_anchor(const HPolytope& p);

/// True when the recession cone is {0}. Empty sets count as bounded.
bool is_bounded(const HPolytope& p);

/// Conic hull of P. With anchor == dim() a fresh last coordinate t is added
/// and every row a.x <= b becomes a.x - b t <= 0; with anchor < dim() the
/// existing coordinate (which must equal 1 on P) plays the role of t.
/// A row t >= 0 is appended in both cases.
HPolytope homogenize(const HPolytope& p, std::size_t anchor);

struct WeightedPoint {
  RatVec point;
  Rat weight;
};

/// At most dim()+1 vertices with positive weights summing to 1 whose
/// combination is exactly x.
std::vector<WeightedPoint> caratheodory(const HPolytope& p, const RatVec& x);

/// x in X with min_{y in Y} x^T A y >= 0.
struct FarkasCase1 {
  RatVec x;
};
/// y in cone(Y) with max_{x in X} x^T A y <= -1; y / scale lies in Y.
struct FarkasCase2 {
  RatVec y;
  Rat scale;
};
using FarkasCase = std::variant<FarkasCase1, FarkasCase2>;

FarkasCase farkas_case(const RatMat& a, const HPolytope& x_set, const HPolytope& y_set);

/// min over Y of x^T A y, exactly.
Rat min_bilinear_over(const RatMat& a, const RatVec& x, const HPolytope& y_set);
/// max over X of x^T A y, exactly.
Rat max_bilinear_over(const RatMat& a, const HPolytope& x_set, const RatVec& y);

inline constexpr std::size_t kDefaultVertexDimLimit = 12;

/// All vertices in lexicographic order. Throws DimensionTooLarge when the
/// affine hull has dimension above the limit.
std::vector<RatVec> enumerate_vertices(const HPolytope& p,
                                       std::size_t dim_limit = kDefaultVertexDimLimit);

/// Affine hull of a nonempty polyhedron as origin + span(basis), together
/// with the remaining inequalities written in chart coordinates. The
/// reduced system is full-dimensional.
struct AffineChart {
  RatVec origin;       // relative interior point
  RatMat basis;        // dim x k
  LinearSystem reduced;  // inequalities over k coordinates
  std::vector<std::size_t> implicit_equalities;  // inequality rows tight on all of P

  std::size_t dim() const { return basis.cols(); }
  RatVec lift(const RatVec& z) const;
  /// Linear functional c on the ambient space, expressed on chart coordinates.
  RatVec pull_back(const RatVec& c) const;
};

/// Throws EmptyInputSet when P is empty.
AffineChart affine_chart(const HPolytope& p);

}  // namespace eahkit

#endif  // EAHKIT_POLYTOPE_HPP_
