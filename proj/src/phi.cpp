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

#include "eahkit/phi.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "eahkit/error.hpp"

namespace eahkit {

namespace {

// Row-wise assembly of a system over a fixed number of columns.
struct Rows {
  std::size_t cols;
  std::vector<RatVec> ineq, eq;
  std::vector<Rat> ineq_rhs, eq_rhs;

  explicit Rows(std::size_t c) : cols(c) {}
  void le(RatVec r, Rat rhs) {
    ineq.push_back(std::move(r));
    ineq_rhs.push_back(std::move(rhs));
  }
  void equal(RatVec r, Rat rhs) {
    eq.push_back(std::move(r));
    eq_rhs.push_back(std::move(rhs));
  }
  HPolytope build() const {
    return HPolytope(RatMat::from_rows(ineq, cols), RatVec(ineq_rhs), RatMat::from_rows(eq, cols),
                     RatVec(eq_rhs));
  }
};

std::optional<std::vector<RatVec>> try_vertices(const HPolytope& p, std::size_t limit) {
  try {
    return enumerate_vertices(p, limit);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDimensionTooLarge) return std::nullopt;
    throw;
  }
}

Rat fixed_coordinate_extreme(const HPolytope& p, std::size_t i, Sense sense) {
  auto out = lp_solve(RatVec::unit(p.dim(), i), p.system(), sense);
  EAHKIT_CHECK(std::holds_alternative<LpOptimal>(out), ErrorCode::kInvalidArgument,
               "strategy set is empty or unbounded");
  return std::get<LpOptimal>(out).value;
}

}  // namespace

RatMat DeviationSet::matrix(const RatVec& point) const {
  EAHKIT_CHECK(point.size() == polytope.dim(), ErrorCode::kDimensionMismatch,
               "deviation point has the wrong length");
  const std::size_t d = matrix_dim;
  RatMat b(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) b(r, c) = point[r * d + c];
  return b;
}

RatVec flatten(const RatMat& b) {
  RatVec v(b.rows() * b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) v[r * b.cols() + c] = b(r, c);
  return v;
}

DeviationSet make_swap_deviations(std::size_t d, std::size_t player) {
  EAHKIT_CHECK(d >= 1, ErrorCode::kInvalidArgument, "swap deviations need d >= 1");
  const std::size_t m = d * d;
  Rows rows(m);
  for (std::size_t i = 0; i < m; ++i) rows.le(-RatVec::unit(m, i), 0);
  for (std::size_t a = 0; a < d; ++a) {
    RatVec col(m);
    for (std::size_t b = 0; b < d; ++b) col[b * d + a] = 1;
    rows.equal(std::move(col), 1);
  }
  return DeviationSet{player, d, rows.build(), true};
}

DeviationSet make_constant_deviations(const HPolytope& a_p, std::optional<std::size_t> anchor,
                                      std::size_t player) {
  const std::size_t d = a_p.dim();
  EAHKIT_CHECK(d >= 1, ErrorCode::kInvalidArgument, "empty strategy space");
  RatVec ell(d);
  if (anchor) {
    EAHKIT_CHECK(*anchor < d, ErrorCode::kInvalidArgument, "anchor coordinate out of range");
    EAHKIT_CHECK(fixed_coordinate_extreme(a_p, *anchor, Sense::kMinimize) == 1 &&
                     fixed_coordinate_extreme(a_p, *anchor, Sense::kMaximize) == 1,
                 ErrorCode::kInvalidArgument, "anchor coordinate is not fixed to 1");
    ell[*anchor] = 1;
  } else {
    const auto& sys = a_p.system();
    std::size_t i = 0;
    while (i < sys.eq_rhs.size() && sgn(sys.eq_rhs[i]) == 0) ++i;
    EAHKIT_CHECK(i < sys.eq_rhs.size(), ErrorCode::kInvalidArgument,
                 "strategy set has no equality with a nonzero right-hand side; pass an anchor");
    ell = sys.eq_lhs.row(i);
    ell /= sys.eq_rhs[i];
  }
  std::size_t a0 = 0;
  while (sgn(ell[a0]) == 0) ++a0;

  const std::size_t m = d * d;
  Rows rows(m);
  // B[b][a] = z_b l_a, so every column is a multiple of column a0.
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t a = 0; a < d; ++a) {
      if (a == a0) continue;
      RatVec r(m);
      r[b * d + a] = ell[a0];
      r[b * d + a0] -= ell[a];
      rows.equal(std::move(r), 0);
    }
  // z = column a0 / l_a0 must lie in A_p.
  auto lift = [&](const RatVec& row) {
    RatVec r(m);
    for (std::size_t b = 0; b < d; ++b) r[b * d + a0] = row[b] / ell[a0];
    return r;
  };
  const auto& sys = a_p.system();
  for (std::size_t i = 0; i < sys.ineq_lhs.rows(); ++i) rows.le(lift(sys.ineq_lhs.row(i)), sys.ineq_rhs[i]);
  for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i) rows.equal(lift(sys.eq_lhs.row(i)), sys.eq_rhs[i]);
  return DeviationSet{player, d, rows.build(), false};
}

DeviationSet with_identity(const DeviationSet& dev) {
  const std::size_t d = dev.matrix_dim;
  const std::size_t m = d * d;
  const std::size_t old_dim = dev.polytope.dim();
  const std::size_t cols = old_dim + 1;
  const std::size_t lambda = old_dim;
  const RatVec eye = flatten(RatMat::identity(d));
  const auto& sys = dev.polytope.system();

  // a.(w - lambda I) + a_u.u <= (1 - lambda) b, i.e. a.w + a_u.u + lambda (b - a.I) <= b.
  auto lift = [&](const RatVec& row, const Rat& rhs) {
    RatVec r(cols);
    Rat on_identity = 0;
    for (std::size_t i = 0; i < old_dim; ++i) r[i] = row[i];
    for (std::size_t i = 0; i < m; ++i) on_identity += row[i] * eye[i];
    r[lambda] = rhs - on_identity;
    return r;
  };
  Rows rows(cols);
  for (std::size_t i = 0; i < sys.ineq_lhs.rows(); ++i)
    rows.le(lift(sys.ineq_lhs.row(i), sys.ineq_rhs[i]), sys.ineq_rhs[i]);
  for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i)
    rows.equal(lift(sys.eq_lhs.row(i), sys.eq_rhs[i]), sys.eq_rhs[i]);
  rows.le(-RatVec::unit(cols, lambda), 0);
  rows.le(RatVec::unit(cols, lambda), 1);
  return DeviationSet{dev.player, d, rows.build(), true};
}

bool contains_identity(const DeviationSet& dev) {
  LinearSystem sys = dev.polytope.system();
  const std::size_t cols = dev.polytope.dim();
  const RatVec eye = flatten(RatMat::identity(dev.matrix_dim));
  std::vector<RatVec> eq;
  std::vector<Rat> rhs;
  for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i) {
    eq.push_back(sys.eq_lhs.row(i));
    rhs.push_back(sys.eq_rhs[i]);
  }
  for (std::size_t i = 0; i < eye.size(); ++i) {
    eq.push_back(RatVec::unit(cols, i));
    rhs.push_back(eye[i]);
  }
  sys.eq_lhs = RatMat::from_rows(eq, cols);
  sys.eq_rhs = RatVec(std::move(rhs));
  return lp_find_point(sys).has_value();
}

std::optional<bool> check_self_map(const DeviationSet& dev, const HPolytope& a_p,
                                   std::size_t vertex_dim_limit) {
  EAHKIT_CHECK(a_p.dim() == dev.matrix_dim, ErrorCode::kDimensionMismatch,
               "deviation set and strategy set disagree on the dimension");
  const auto phi_vertices = try_vertices(dev.polytope, vertex_dim_limit);
  if (!phi_vertices) return std::nullopt;
  const auto a_vertices = try_vertices(a_p, vertex_dim_limit);
  if (!a_vertices) return std::nullopt;
  for (const auto& w : *phi_vertices) {
    const RatMat b = dev.matrix(w);
    for (const auto& x : *a_vertices)
      if (!a_p.contains(b * x)) return false;
  }
  return true;
}

std::vector<RatMat> MetaGame::matrices(const RatVec& y) const {
  EAHKIT_CHECK(y.size() == y_set.dim(), ErrorCode::kDimensionMismatch,
               "meta deviation has the wrong length");
  std::vector<RatMat> out;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    const std::size_t d = dims[p];
    RatMat b(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) b(r, c) = y[matrix_offset[p] + r * d + c];
    out.push_back(std::move(b));
  }
  return out;
}

MetaGame build_meta_game(const PolyhedralGame& game, const std::vector<DeviationSet>& devs) {
  const std::size_t n = game.num_players();
  EAHKIT_CHECK(devs.size() == n, ErrorCode::kDimensionMismatch,
               "need one deviation set per player");
  MetaGame meta{HPolytope(LinearSystem::empty(0)), {}, {}, {}, 0, 0};
  std::size_t next = 0;
  for (std::size_t p = 0; p < n; ++p) {
    EAHKIT_CHECK(devs[p].player == p, ErrorCode::kInvalidArgument,
                 "deviation set " + std::to_string(p) + " belongs to player " +
                     std::to_string(devs[p].player));
    EAHKIT_CHECK(devs[p].matrix_dim == game.strategy_dim(p), ErrorCode::kDimensionMismatch,
                 "deviation matrices of player " + std::to_string(p) + " have the wrong size");
    meta.dims.push_back(devs[p].matrix_dim);
    meta.matrix_offset.push_back(next);
    next += devs[p].matrix_dim * devs[p].matrix_dim;
  }
  meta.matrix_entries = next;
  for (std::size_t p = 0; p < n; ++p) {
    meta.aux_offset.push_back(next);
    next += devs[p].aux_dim();
  }
  meta.anchor = next;
  const std::size_t cols = next + 1;

  Rows rows(cols);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t m = devs[p].matrix_dim * devs[p].matrix_dim;
    auto place = [&](const RatVec& row) {
      RatVec r(cols);
      for (std::size_t i = 0; i < m; ++i) r[meta.matrix_offset[p] + i] = row[i];
      for (std::size_t i = m; i < row.size(); ++i) r[meta.aux_offset[p] + i - m] = row[i];
      return r;
    };
    const auto& sys = devs[p].polytope.system();
    for (std::size_t i = 0; i < sys.ineq_lhs.rows(); ++i) rows.le(place(sys.ineq_lhs.row(i)), sys.ineq_rhs[i]);
    for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i) rows.equal(place(sys.eq_lhs.row(i)), sys.eq_rhs[i]);
  }
  rows.equal(RatVec::unit(cols, meta.anchor), 1);
  meta.y_set = rows.build();
  return meta;
}

RatVec utility_gradient(const PolyhedralGame& game, std::size_t p,
                        const std::vector<RatVec>& marginals) {
  return game.gradient(p, marginals);
}

RatVec meta_row(const PolyhedralGame& game, const MetaGame& meta, const PureProfile& s) {
  const std::size_t n = game.num_players();
  EAHKIT_CHECK(s.strategies.size() == n, ErrorCode::kDimensionMismatch,
               "profile has the wrong number of players");
  RatVec row(meta.y_set.dim());
  for (std::size_t p = 0; p < n; ++p) {
    RatVec g;
    try {
      g = game.gradient(p, s.strategies);
    } catch (const Error& e) {
      throw Error(ErrorCode::kGradientOracleFailure, e.what());
    }
    const std::size_t d = meta.dims[p];
    const RatVec& sp = s.strategies[p];
    for (std::size_t a = 0; a < d; ++a) {
      if (sgn(sp[a]) == 0) continue;
      for (std::size_t b = 0; b < d; ++b) row[meta.matrix_offset[p] + b * d + a] = -sp[a] * g[b];
    }
    row[meta.anchor] += dot(g, sp);
  }
  return row;
}

RatVec fixed_point(const RatMat& b, const HPolytope& a_p) {
  const std::size_t d = a_p.dim();
  EAHKIT_CHECK(b.rows() == d && b.cols() == d, ErrorCode::kDimensionMismatch,
               "deviation matrix does not match the strategy set");
  LinearSystem sys = a_p.system();
  const RatMat shifted = b - RatMat::identity(d);
  std::vector<RatVec> eq;
  std::vector<Rat> rhs;
  for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i) {
    eq.push_back(sys.eq_lhs.row(i));
    rhs.push_back(sys.eq_rhs[i]);
  }
  for (std::size_t i = 0; i < d; ++i) {
    eq.push_back(shifted.row(i));
    rhs.push_back(0);
  }
  sys.eq_lhs = RatMat::from_rows(eq, d);
  sys.eq_rhs = RatVec(std::move(rhs));
  auto x = lp_find_point(sys);
  if (!x) {
    std::ostringstream os;
    os << "no x in the strategy set with B x = x for B = " << b;
    throw Error(ErrorCode::kNoFixedPoint, os.str());
  }
  EAHKIT_CHECK(b * *x == *x, ErrorCode::kInternal, "fixed point residual is nonzero");
  return *x;
}

Rat product_payoff(const PolyhedralGame& game, const std::vector<RatVec>& marginals,
                   const std::vector<RatMat>& deviations) {
  const std::size_t n = game.num_players();
  EAHKIT_CHECK(deviations.size() == n, ErrorCode::kDimensionMismatch,
               "need one deviation matrix per player");
  Rat total = 0;
  for (std::size_t p = 0; p < n; ++p) {
    const RatVec g = game.gradient(p, marginals);
    RatVec diff = marginals[p];
    diff -= deviations[p] * marginals[p];
    total += dot(g, diff);
  }
  return total;
}

GerOracle purified_ger(const PolyhedralGame& game, const MetaGame& meta,
                       PurificationObserver observer) {
  GerOracle ger;
  ger.respond = [&game, meta, observer](const RatVec& y) -> GerResponse {
    const std::size_t n = game.num_players();
    const auto devs = meta.matrices(y);
    std::vector<RatVec> x;
    for (std::size_t p = 0; p < n; ++p) x.push_back(fixed_point(devs[p], game.strategy_set(p)));
    Rat value = product_payoff(game, x, devs);
    EAHKIT_CHECK(sgn(value) == 0, ErrorCode::kPurificationFailure,
                 "product of fixed points scores " + to_string(value));
    for (std::size_t p = 0; p < n; ++p) {
      bool fixed = false;
      for (auto& wp : caratheodory(game.strategy_set(p), x[p])) {
        std::vector<RatVec> trial = x;
        trial[p] = std::move(wp.point);
        Rat v = product_payoff(game, trial, devs);
        if (sgn(v) >= 0) {
          x = std::move(trial);
          value = std::move(v);
          fixed = true;
          break;
        }
      }
      EAHKIT_CHECK(fixed, ErrorCode::kPurificationFailure,
                   "no vertex keeps the payoff nonnegative for player " + std::to_string(p));
      if (observer) observer(p, value);
    }
    PureProfile s{std::move(x)};
    RatVec row = meta_row(game, meta, s);
    const Rat score = dot(row, y);
    EAHKIT_CHECK(score == value, ErrorCode::kPurificationFailure,
                 "meta row disagrees with the product payoff");
    EAHKIT_CHECK(sgn(score) >= 0, ErrorCode::kPurificationFailure, "purified profile scores below 0");
    return GerResponse{std::move(s), std::move(row)};
  };
  return ger;
}

BenefitFunction benefit_function(const PolyhedralGame& game, const DeviationSet& dev,
                                 const std::vector<std::pair<PureProfile, Rat>>& support) {
  const std::size_t p = dev.player;
  const std::size_t d = dev.matrix_dim;
  EAHKIT_CHECK(p < game.num_players() && game.strategy_dim(p) == d, ErrorCode::kDimensionMismatch,
               "deviation set does not match the game");
  BenefitFunction f{RatVec(dev.polytope.dim()), Rat(0)};
  for (const auto& [s, mu] : support) {
    const RatVec g = game.gradient(p, s.strategies);
    const RatVec& sp = s.strategies.at(p);
    for (std::size_t b = 0; b < d; ++b) {
      if (sgn(g[b]) == 0) continue;
      for (std::size_t a = 0; a < d; ++a)
        if (sgn(sp[a]) != 0) f.coefficients[b * d + a] += mu * g[b] * sp[a];
    }
    f.base += mu * dot(g, sp);
  }
  return f;
}

std::vector<PlayerCertificate> certify(const PolyhedralGame& game,
                                       const std::vector<DeviationSet>& devs,
                                       const std::vector<std::pair<PureProfile, Rat>>& support,
                                       std::size_t vertex_dim_limit) {
  std::vector<PlayerCertificate> out;
  for (const auto& dev : devs) {
    const BenefitFunction f = benefit_function(game, dev, support);
    auto lp = lp_solve(f.coefficients, dev.polytope.system(), Sense::kMaximize);
    EAHKIT_CHECK(std::holds_alternative<LpOptimal>(lp), ErrorCode::kCertificateFailure,
                 "deviation set of player " + std::to_string(dev.player) +
                     " is empty or unbounded");
    const auto& opt = std::get<LpOptimal>(lp);
    PlayerCertificate cert{dev.player, opt.value - f.base, opt.point, std::nullopt};
    if (auto vertices = try_vertices(dev.polytope, vertex_dim_limit)) {
      std::vector<DeviationBenefit> list;
      Rat best;
      for (std::size_t i = 0; i < vertices->size(); ++i) {
        Rat v = f((*vertices)[i]);
        if (i == 0 || v > best) best = v;
        list.push_back({dev.player, std::move((*vertices)[i]), std::move(v)});
      }
      EAHKIT_CHECK(best == cert.max_benefit, ErrorCode::kCertificateFailure,
                   "vertex enumeration and LP disagree on the largest benefit of player " +
                       std::to_string(dev.player));
      cert.vertices = std::move(list);
    }
    out.push_back(std::move(cert));
  }
  return out;
}

PhiSolution solve_phi_equilibrium(const PolyhedralGame& game, const std::vector<DeviationSet>& devs,
                                  const PhiOptions& options) {
  // The saddle point only bounds the summed benefit over players; with the
  // identity in every set each term is >= 0, so each is <= 0. Adding the
  // identity scales benefits by 1 - lambda and leaves the equilibria alone.
  std::vector<DeviationSet> solver_devs;
  std::vector<bool> lifted;
  for (const auto& dev : devs) {
    const bool lift = !contains_identity(dev);
    lifted.push_back(lift);
    solver_devs.push_back(lift ? with_identity(dev) : dev);
  }
  const MetaGame meta = build_meta_game(game, solver_devs);
  if (!options.skip_self_map_check) {
    for (std::size_t p = 0; p < devs.size(); ++p) {
      auto ok = check_self_map(devs[p], game.strategy_set(p), options.certificate_dim_limit);
      EAHKIT_CHECK(!ok || *ok, ErrorCode::kInvalidArgument,
                   "deviation set of player " + std::to_string(p) +
                       " does not map the strategy set into itself");
    }
  }

  PhiSolution result;
  result.lifted = std::move(lifted);
  result.n_bound = meta.matrix_entries;
  // phi = max(2 N log u, psi), recomputed from the data at hand.
  const EncodingLength payoff_bits = game.payoff_complexity();
  result.phi = std::max(meta.y_set.facet_complexity(),
                        EncodingLength{2 * meta.matrix_entries * std::max<std::uint64_t>(payoff_bits.bits, 1)});

  GerOracle ger = purified_ger(game, meta, options.observer);
  ger.declared_bound = result.phi;
  SaddleSolution sol = solve_saddle(ger, meta.y_set, result.phi, options.saddle);
  result.stats = sol.stats;

  std::map<PureProfile, Rat> merged;
  std::vector<PureProfile> order;
  for (auto& [resp, w] : sol.mixture) {
    const auto& s = std::any_cast<const PureProfile&>(resp.handle);
    auto [it, inserted] = merged.emplace(s, Rat(0));
    if (inserted) order.push_back(s);
    it->second += w;
  }
  auto& eq = result.equilibrium;
  for (auto& s : order) eq.support.emplace_back(s, merged[s]);

  for (auto& cert : certify(game, devs, eq.support, options.certificate_dim_limit)) {
    EAHKIT_CHECK(sgn(cert.max_benefit) <= 0, ErrorCode::kCertificateFailure,
                 "player " + std::to_string(cert.player) + " gains " +
                     to_string(cert.max_benefit) + " by deviating");
    if (cert.vertices) {
      for (auto& v : *cert.vertices) eq.certificate.push_back(std::move(v));
    } else {
      eq.certificate.push_back({cert.player, std::move(cert.argmax), cert.max_benefit});
    }
  }
  return result;
}

}  // namespace eahkit
