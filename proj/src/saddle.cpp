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


#include "eahkit/saddle.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "eahkit/error.hpp"

namespace eahkit {

RatMat shift_to_zero(const RatMat& a, const Rat& opt) {
  RatMat s(a.rows() + 1, a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  s(a.rows(), a.cols()) = -opt;
  return s;
}

CombinedAnswer combined_oracle(const GerOracle& ger, const HPolytope& cone, std::size_t anchor,
                               const RatVec& y_prime) {
  EAHKIT_CHECK(anchor < cone.dim(), ErrorCode::kDimensionMismatch, "anchor out of range");
  auto sep = separate(cone, y_prime);
  if (!sep.inside()) return {std::move(*sep.cut), std::nullopt};
  const Rat alpha = y_prime[anchor];
  if (sgn(alpha) == 0) return {Halfspace{RatVec(cone.dim()), Rat(-1)}, std::nullopt};
  RatVec y = y_prime;
  y /= alpha;
  GerResponse resp = ger.respond(y);
  EAHKIT_CHECK(resp.row.size() == cone.dim(), ErrorCode::kDimensionMismatch,
               "response row has the wrong length");
  if (sgn(dot(resp.row, y)) < 0) {
    std::ostringstream os;
    os << "response row " << resp.row << " scores " << to_string(dot(resp.row, y)) << " at " << y;
    throw Error(ErrorCode::kGerContractViolation, os.str());
  }
  Halfspace cut{resp.row, Rat(-1)};
  return {std::move(cut), std::move(resp)};
}

Rat matrix_game_value(const RatMat& a) {
  // min v  s.t.  A y <= v 1,  y in the simplex.
  const std::size_t m = a.rows(), n = a.cols();
  EAHKIT_CHECK(m > 0 && n > 0, ErrorCode::kDimensionMismatch, "empty payoff matrix");
  std::vector<RatVec> ineq;
  for (std::size_t i = 0; i < m; ++i) {
    RatVec r(n + 1);
    for (std::size_t j = 0; j < n; ++j) r[j] = a(i, j);
    r[n] = -1;
    ineq.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) ineq.push_back(-RatVec::unit(n + 1, j));
  RatVec ones(n + 1);
  for (std::size_t j = 0; j < n; ++j) ones[j] = 1;
  LinearSystem sys{RatMat::from_rows(ineq, n + 1), RatVec(ineq.size()), RatMat::from_rows({ones}, n + 1),
                   RatVec{1}};
  auto out = lp_solve(RatVec::unit(n + 1, n), sys, Sense::kMinimize);
  EAHKIT_CHECK(std::holds_alternative<LpOptimal>(out), ErrorCode::kInternal, "matrix game LP failed");
  return std::get<LpOptimal>(out).value;
}

GerOracle vertex_best_response_oracle(const RatMat& a, const HPolytope& x_set) {
  EAHKIT_CHECK(a.rows() == x_set.dim(), ErrorCode::kDimensionMismatch,
               "matrix rows do not match the strategy set");
  GerOracle ger;
  ger.respond = [a, x_set](const RatVec& y) {
    auto out = lp_solve(a * y, x_set.system(), Sense::kMaximize);
    EAHKIT_CHECK(std::holds_alternative<LpOptimal>(out), ErrorCode::kEmptyInputSet,
                 "strategy set of the max player is empty or unbounded");
    RatVec x = std::get<LpOptimal>(out).point;
    RatVec row = left_multiply(x, a);
    return GerResponse{std::move(x), std::move(row)};
  };
  return ger;
}

namespace {

// The compressed program over the convex hull of collected rows:
//   max t  s.t.  a in simplex,  sum_i a_i row_i . v >= t  for v in S,
// where S is either all vertices of Y or grows by constraint generation.
class CompressedProgram {
 public:
  CompressedProgram(const HPolytope& y_set, const AffineChart& chart, std::size_t vertex_dim_limit)
      : y_set_(y_set), chart_(chart) {
    if (chart.dim() <= vertex_dim_limit) {
      vertices_ = enumerate_vertices(y_set, vertex_dim_limit);
      enumerated_ = true;
    }
  }

  struct Result {
    std::vector<Rat> weights;  // per collected row
    Rat min_value;             // min over Y of the mixed row
  };

  /// A mixture whose mixed row is nonnegative on Y, if the rows admit one.
  std::optional<Result> solve(const std::vector<RatVec>& rows) {
    if (rows.empty()) return std::nullopt;
    if (!enumerated_ && vertices_.empty()) vertices_.push_back(argmin_over_y(rows.front()).first);
    for (;;) {
      auto [weights, t] = solve_restricted(rows);
      if (sgn(t) < 0) return std::nullopt;
      RatVec mixed(rows.front().size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(weights[i]) == 0) continue;
        RatVec r = rows[i];
        r *= weights[i];
        mixed += r;
      }
      auto [vertex, value] = argmin_over_y(mixed);
      if (enumerated_) {
        EAHKIT_CHECK(value == t, ErrorCode::kInternal,
                     "vertex enumeration and LP disagree on the minimum");
      }
      if (sgn(value) >= 0) return Result{std::move(weights), value};
      EAHKIT_CHECK(!enumerated_, ErrorCode::kInternal, "enumerated vertex set is incomplete");
      vertices_.push_back(std::move(vertex));
    }
  }

  /// min over Y of c . y: a vertex attaining it and the value.
  std::pair<RatVec, Rat> argmin_over_y(const RatVec& c) const {
    const Rat base = dot(c, chart_.origin);
    if (chart_.dim() == 0) return {chart_.origin, base};
    auto out = lp_solve(chart_.pull_back(c), chart_.reduced, Sense::kMinimize);
    EAHKIT_CHECK(std::holds_alternative<LpOptimal>(out), ErrorCode::kInternal,
                 "minimisation over the bounded set Y failed");
    const auto& opt = std::get<LpOptimal>(out);
    return {chart_.lift(opt.point), opt.value + base};
  }

  bool enumerated() const { return enumerated_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }

 private:
  std::pair<std::vector<Rat>, Rat> solve_restricted(const std::vector<RatVec>& rows) {
    const std::size_t l = rows.size();
    // Cache row . vertex values.
    while (values_.size() < vertices_.size()) values_.emplace_back();
    for (std::size_t s = 0; s < vertices_.size(); ++s) {
      auto& vals = values_[s];
      while (vals.size() < l) vals.push_back(dot(rows[vals.size()], vertices_[s]));
    }
    const std::size_t cols = l + 1;
    LinearSystem sys = LinearSystem::empty(cols);
    sys.ineq_lhs = RatMat(l + vertices_.size(), cols);
    sys.ineq_rhs = RatVec(l + vertices_.size());
    for (std::size_t i = 0; i < l; ++i) sys.ineq_lhs(i, i) = -1;
    for (std::size_t s = 0; s < vertices_.size(); ++s) {
      const std::size_t r = l + s;
      for (std::size_t i = 0; i < l; ++i) sys.ineq_lhs(r, i) = -values_[s][i];
      sys.ineq_lhs(r, l) = 1;
    }
    sys.eq_lhs = RatMat(1, cols);
    for (std::size_t i = 0; i < l; ++i) sys.eq_lhs(0, i) = 1;
    sys.eq_rhs = RatVec{1};
    auto out = lp_solve(RatVec::unit(cols, l), sys, Sense::kMaximize);
    EAHKIT_CHECK(std::holds_alternative<LpOptimal>(out), ErrorCode::kInternal,
                 "compressed program is not solvable");
    const auto& opt = std::get<LpOptimal>(out);
    std::vector<Rat> w(opt.point.begin(), opt.point.begin() + static_cast<std::ptrdiff_t>(l));
    return {std::move(w), opt.value};
  }

  const HPolytope& y_set_;
  const AffineChart& chart_;
  bool enumerated_ = false;
  std::vector<RatVec> vertices_;
  std::vector<std::vector<Rat>> values_;
};

}  // namespace

SaddleSolution solve_saddle(const GerOracle& ger, const HPolytope& y_set, EncodingLength phi_bound,
                            const SaddleConfig& config) {
  EAHKIT_CHECK(static_cast<bool>(ger.respond), ErrorCode::kInvalidArgument, "GER oracle is empty");
  EAHKIT_CHECK(is_bounded(y_set), ErrorCode::kUnboundedInput, "Y must be bounded");
  const AffineChart chart = affine_chart(y_set);  // throws EmptyInputSet
  const std::size_t n = y_set.dim();
  const std::size_t k = chart.dim();
  const std::size_t zdim = k + 1;

  // Cone over Y in chart coordinates z = (alpha, v), y' = alpha o + K v.
  std::vector<RatVec> cone_rows;
  for (std::size_t i = 0; i < chart.reduced.ineq_lhs.rows(); ++i)
    cone_rows.push_back(concat(RatVec{-chart.reduced.ineq_rhs[i]}, chart.reduced.ineq_lhs.row(i)));
  cone_rows.push_back(-RatVec::unit(zdim, 0));
  const HPolytope cone(RatMat::from_rows(cone_rows, zdim), RatVec(cone_rows.size()),
                       RatMat(0, zdim), RatVec());

  SaddleSolution solution;
  SaddleStats& stats = solution.stats;
  stats.ellipsoid_dim = zdim;
  stats.support_bound = k + 1;

  std::vector<GerResponse> responses;
  std::vector<RatVec> rows;
  std::vector<RatVec> cuts;  // rows pulled back to chart coordinates
  std::map<RatVec, std::size_t> index;
  CompressedProgram compressed(y_set, chart, config.vertex_dim_limit);

  auto to_chart = [&](const RatVec& row) {
    return concat(RatVec{dot(row, chart.origin)}, chart.pull_back(row));
  };

  SeparationOracle oracle = [&](const RatVec& z) -> SeparationResult {
    auto sep = separate(cone, z);
    if (!sep.inside()) return sep;
    const Rat& alpha = z[0];
    RatVec y;
    if (sgn(alpha) == 0) {
      // Only the apex has alpha = 0 inside the cone; ask at a point of Y.
      y = chart.origin;
    } else {
      std::vector<Rat> v(z.begin() + 1, z.end());
      RatVec vz(std::move(v));
      vz /= alpha;
      y = chart.lift(vz);
    }
    GerResponse resp = ger.respond(y);
    ++stats.ger_calls;
    EAHKIT_CHECK(resp.row.size() == n, ErrorCode::kDimensionMismatch,
                 "response row has " + std::to_string(resp.row.size()) + " entries, expected " +
                     std::to_string(n));
    if (sgn(dot(resp.row, y)) < 0) {
      std::ostringstream os;
      os << "response row " << resp.row << " scores " << to_string(dot(resp.row, y)) << " at "
         << y;
      throw Error(ErrorCode::kGerContractViolation, os.str());
    }
    RatVec cut = to_chart(resp.row);
    if (!index.count(resp.row)) {
      index.emplace(resp.row, rows.size());
      rows.push_back(resp.row);
      cuts.push_back(cut);
      responses.push_back(std::move(resp));
    }
    return SeparationResult::Violated({std::move(cut), Rat(-1)});
  };

  std::optional<CompressedProgram::Result> found;
  EllipsoidParams last_params;
  for (int level = 0; level <= config.escalation_cap && !found; ++level) {
    const long scale = 1L << std::min(level, 30);
    last_params = EllipsoidParams::derived(zdim, phi_bound, config.r_exp_cap * scale,
                                           config.eps_exp_cap * scale);
    if (config.max_iters_override)
      last_params.max_iters = config.max_iters_override * static_cast<std::size_t>(scale);
    stats.max_iters.push_back(last_params.max_iters);
    stats.escalations = level;
    std::size_t next_check = rows.size() + 1;
    CentralCutOptions opts;
    opts.record = config.transcript != nullptr;
    if (config.early_certify) {
      opts.stop = [&](std::size_t) {
        if (rows.size() < next_check) return false;
        next_check = rows.size() + std::max<std::size_t>(1, rows.size() / 4);
        found = compressed.solve(rows);
        return found.has_value();
      };
    }
    const EllipsoidTranscript t = central_cut(oracle, last_params, zdim, opts);
    stats.ellipsoid_iterations += t.iterations;
    EAHKIT_CHECK(t.outcome != EllipsoidOutcome::kFeasible, ErrorCode::kInternal,
                 "the dual program cannot have a feasible point");
    if (config.transcript) {
      *config.transcript << "# ellipsoid run " << level << " dim " << zdim << " R 2^"
                         << last_params.r_exp << " eps 2^-" << last_params.eps_exp
                         << " max_iters " << last_params.max_iters << '\n';
      write_transcript(*config.transcript, t);
    }
    if (!found) found = compressed.solve(rows);
  }
  stats.distinct_responses = rows.size();
  if (!found) {
    throw Error(ErrorCode::kVerificationFailedAfterMaxEscalations,
                "compressed program infeasible after " + std::to_string(config.escalation_cap) +
                    " escalations and " + std::to_string(rows.size()) + " distinct responses");
  }

  RatVec mixed(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rat& w = found->weights[i];
    if (sgn(w) == 0) continue;
    RatVec r = rows[i];
    r *= w;
    mixed += r;
    solution.mixture.emplace_back(responses[i], w);
  }
  // Exact verification, independent of how the program was solved.
  Rat total = 0;
  for (const auto& [resp, w] : solution.mixture) {
    EAHKIT_CHECK(sgn(w) > 0, ErrorCode::kInternal, "nonpositive mixture weight");
    total += w;
  }
  EAHKIT_CHECK(total == 1, ErrorCode::kInternal, "mixture weights do not sum to one");
  EAHKIT_CHECK(solution.mixture.size() <= stats.support_bound, ErrorCode::kInternal,
               "mixture is not basic");
  const Rat lp_min = compressed.argmin_over_y(mixed).second;
  EAHKIT_CHECK(sgn(lp_min) >= 0, ErrorCode::kInternal, "mixed row is negative somewhere on Y");
  if (compressed.enumerated()) {
    for (const auto& v : compressed.vertices())
      EAHKIT_CHECK(sgn(dot(mixed, v)) >= 0, ErrorCode::kInternal,
                   "mixed row is negative at a vertex of Y");
  }
  solution.mixed_row = std::move(mixed);
  solution.value_check = lp_min;

  if (config.replay_check) {
    SeparationOracle compressed_oracle = [&](const RatVec& z) -> SeparationResult {
      auto sep = separate(cone, z);
      if (!sep.inside()) return sep;
      std::size_t best = 0;
      Rat best_val;
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        Rat v = dot(cuts[i], z);
        if (i == 0 || v > best_val) {
          best = i;
          best_val = v;
        }
      }
      if (cuts.empty() || best_val <= -1) return SeparationResult::Inside();
      return SeparationResult::Violated({cuts[best], Rat(-1)});
    };
    const auto t = central_cut(compressed_oracle, last_params, zdim);
    EAHKIT_CHECK(t.outcome != EllipsoidOutcome::kFeasible, ErrorCode::kInternal,
                 "replay against the collected responses found a dual point");
  }
  return solution;
}

}  // namespace eahkit
