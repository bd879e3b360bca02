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

#include "eahkit/verify.hpp"

#include <cstdlib>
#include <string>

#include "eahkit/error.hpp"

namespace eahkit {

namespace {

std::string check_support(const PolyhedralGame& game,
                          const std::vector<std::pair<PureProfile, Rat>>& support) {
  if (support.empty()) return "empty support";
  Rat total = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    const auto& [s, w] = support[k];
    const std::string where = "support entry " + std::to_string(k) + ": ";
    if (sgn(w) <= 0) return where + "nonpositive weight " + to_string(w);
    total += w;
    if (s.strategies.size() != game.num_players()) return where + "wrong number of players";
    for (std::size_t p = 0; p < game.num_players(); ++p) {
      if (s.strategies[p].size() != game.strategy_dim(p))
        return where + "strategy of player " + std::to_string(p) + " has the wrong length";
      if (!is_vertex(game.strategy_set(p), s.strategies[p]))
        return where + "strategy of player " + std::to_string(p) + " is not a pure strategy";
    }
  }
  if (total != 1) return "weights sum to " + to_string(total);
  return {};
}

}  // namespace

VerifyResult verify_equilibrium(const PolyhedralGame& game, const std::vector<DeviationSet>& devs,
                                const std::vector<std::pair<PureProfile, Rat>>& support,
                                std::size_t vertex_dim_limit) {
  VerifyResult r;
  EAHKIT_CHECK(devs.size() == game.num_players(), ErrorCode::kDimensionMismatch,
               "need one deviation set per player");
  r.problem = check_support(game, support);
  if (!r.problem.empty()) return r;
  r.players = certify(game, devs, support, vertex_dim_limit);
  for (const auto& c : r.players) {
    if (sgn(c.max_benefit) <= 0) continue;
    if (!r.violation || c.max_benefit > r.violation->benefit)
      r.violation = Violation{c.player, c.argmax, c.max_benefit};
  }
  r.pass = !r.violation.has_value();
  return r;
}

std::size_t brute_force_cap() {
  const char* env = std::getenv("EAHKIT_MAX_BRUTE");
  if (!env || !*env) return kDefaultBruteForceCap;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(env, &pos);
    if (pos == std::string(env).size()) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, std::string("EAHKIT_MAX_BRUTE is not a count: ") + env);
}

std::vector<PureProfile> all_pure_profiles(const PolyhedralGame& game, std::size_t cap) {
  const std::size_t n = game.num_players();
  std::size_t count = 1;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t c = game.count_pure_strategies(p, cap);
    EAHKIT_CHECK(c <= cap && (c == 0 || count <= cap / c), ErrorCode::kInstanceTooLarge,
                 "more than " + std::to_string(cap) + " pure profiles");
    count *= c;
  }
  std::vector<std::vector<RatVec>> pures;
  for (std::size_t p = 0; p < n; ++p) pures.push_back(game.pure_strategies(p, cap));
  std::vector<PureProfile> out;
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t k = 0; k < count; ++k) {
    PureProfile s;
    for (std::size_t p = 0; p < n; ++p) s.strategies.push_back(pures[p][idx[p]]);
    out.push_back(std::move(s));
    for (std::size_t p = n; p-- > 0;) {
      if (++idx[p] < pures[p].size()) break;
      idx[p] = 0;
    }
  }
  return out;
}

BruteForceReport brute_force_equilibrium(const PolyhedralGame& game,
                                         const std::vector<DeviationSet>& devs,
                                         std::size_t cap, std::size_t vertex_dim_limit) {
  const std::size_t n = game.num_players();
  EAHKIT_CHECK(devs.size() == n, ErrorCode::kDimensionMismatch, "need one deviation set per player");
  BruteForceReport report;
  report.profiles = all_pure_profiles(game, cap);
  const std::size_t k = report.profiles.size();

  // Per (profile, player): C_s[b*d+a] = g[b] s_p[a] and u_p(s), so that the
  // benefit of w is sum_s mu_s (C_s . w - u_p(s)).
  std::vector<std::vector<RatVec>> coeff(n);
  std::vector<std::vector<Rat>> util(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& s : report.profiles) {
      const std::vector<std::pair<PureProfile, Rat>> point{{s, Rat(1)}};
      BenefitFunction f = benefit_function(game, devs[p], point);
      coeff[p].push_back(std::move(f.coefficients));
      util[p].push_back(std::move(f.base));
    }
  }

  // Columns: mu (k), then dual variables for players handled by duality.
  struct DualBlock {
    std::size_t p, ineq_offset, eq_offset;
  };
  std::vector<std::optional<std::vector<RatVec>>> vertices(n);
  std::vector<DualBlock> duals;
  std::size_t cols = k;
  for (std::size_t p = 0; p < n; ++p) {
    try {
      vertices[p] = enumerate_vertices(devs[p].polytope, vertex_dim_limit);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDimensionTooLarge) throw;
      const auto& sys = devs[p].polytope.system();
      duals.push_back({p, cols, cols + sys.ineq_lhs.rows()});
      cols += sys.ineq_lhs.rows() + sys.eq_lhs.rows();
    }
  }

  std::vector<RatVec> ineq, eq;
  std::vector<Rat> ineq_rhs, eq_rhs;
  for (std::size_t i = 0; i < k; ++i) {
    ineq.push_back(-RatVec::unit(cols, i));
    ineq_rhs.push_back(0);
  }
  {
    RatVec sum(cols);
    for (std::size_t i = 0; i < k; ++i) sum[i] = 1;
    eq.push_back(std::move(sum));
    eq_rhs.push_back(1);
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (!vertices[p]) continue;
    for (const auto& w : *vertices[p]) {
      RatVec row(cols);
      for (std::size_t i = 0; i < k; ++i) row[i] = dot(coeff[p][i], w) - util[p][i];
      ineq.push_back(std::move(row));
      ineq_rhs.push_back(0);
    }
  }
  // max_{A w <= b, E w = f} c(mu).w <= u(mu) via the dual:
  //   b.lam + f.nu <= u(mu),  A^T lam + E^T nu = c(mu),  lam >= 0.
  for (const auto& blk : duals) {
    const auto& sys = devs[blk.p].polytope.system();
    const std::size_t mi = sys.ineq_lhs.rows();
    const std::size_t me = sys.eq_lhs.rows();
    RatVec value(cols);
    for (std::size_t i = 0; i < k; ++i) value[i] = -util[blk.p][i];
    for (std::size_t j = 0; j < mi; ++j) value[blk.ineq_offset + j] = sys.ineq_rhs[j];
    for (std::size_t j = 0; j < me; ++j) value[blk.eq_offset + j] = sys.eq_rhs[j];
    ineq.push_back(std::move(value));
    ineq_rhs.push_back(0);
    for (std::size_t j = 0; j < mi; ++j) {
      ineq.push_back(-RatVec::unit(cols, blk.ineq_offset + j));
      ineq_rhs.push_back(0);
    }
    for (std::size_t c = 0; c < devs[blk.p].polytope.dim(); ++c) {
      RatVec row(cols);
      for (std::size_t j = 0; j < mi; ++j) row[blk.ineq_offset + j] = sys.ineq_lhs(j, c);
      for (std::size_t j = 0; j < me; ++j) row[blk.eq_offset + j] = sys.eq_lhs(j, c);
      for (std::size_t i = 0; i < k; ++i) row[i] = -coeff[blk.p][i][c];
      eq.push_back(std::move(row));
      eq_rhs.push_back(0);
    }
  }
  LinearSystem sys{RatMat::from_rows(ineq, cols), RatVec(std::move(ineq_rhs)),
                   RatMat::from_rows(eq, cols), RatVec(std::move(eq_rhs))};
  auto point = lp_find_point(sys);
  if (!point) return report;

  report.feasible = true;
  report.distribution = RatVec(std::vector<Rat>(point->begin(), point->begin() + static_cast<std::ptrdiff_t>(k)));
  MixtureEquilibrium mix;
  for (std::size_t i = 0; i < k; ++i)
    if (sgn(report.distribution[i]) > 0) mix.support.emplace_back(report.profiles[i], report.distribution[i]);
  for (auto& cert : certify(game, devs, mix.support, vertex_dim_limit)) {
    EAHKIT_CHECK(sgn(cert.max_benefit) <= 0, ErrorCode::kInternal,
                 "brute-force distribution violates a constraint");
    if (cert.vertices) {
      for (auto& v : *cert.vertices) mix.certificate.push_back(std::move(v));
    } else {
      mix.certificate.push_back({cert.player, std::move(cert.argmax), cert.max_benefit});
    }
  }
  report.equilibrium = std::move(mix);
  return report;
}

}  // namespace eahkit
