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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "eahkit/linalg.hpp"
#include "eahkit/error.hpp"
#include "eahkit/lp.hpp"

using namespace eahkit;

namespace {

LinearSystem ineqs(RatMat a, RatVec b) {
  const std::size_t n = a.cols();
  return {std::move(a), std::move(b), RatMat(0, n), RatVec()};
}

// Best objective value over all basic solutions of the system, obtained by
// brute force over row subsets. Equalities are included in every subset.
// Returns nullopt if no basic solution is feasible.
std::optional<Rat> brute_force_max(const RatVec& c, const LinearSystem& sys) {
  const std::size_t n = sys.dim();
  const std::size_t m = sys.ineq_lhs.rows();
  std::optional<Rat> best;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<RatVec> rows;
    std::vector<Rat> rhs;
    for (std::size_t k = 0; k < sys.eq_lhs.rows(); ++k) {
      rows.push_back(sys.eq_lhs.row(k));
      rhs.push_back(sys.eq_rhs[k]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        rows.push_back(sys.ineq_lhs.row(i));
        rhs.push_back(sys.ineq_rhs[i]);
      }
    }
    RatMat mat = RatMat::from_rows(rows, n);
    if (rank(mat) != n || rows.size() != n) continue;
    auto x = solve_any(mat, RatVec(rhs));
    if (!x || !satisfies(sys, *x)) continue;
    const Rat v = dot(c, *x);
    if (!best || v > *best) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("box maximum") {
  auto sys = ineqs(RatMat{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, RatVec{1, 1, 0, 0});
  auto out = lp_solve(RatVec{1, 1}, sys, Sense::kMaximize);
  auto* opt = std::get_if<LpOptimal>(&out);
  REQUIRE(opt != nullptr);
  CHECK(opt->point == RatVec{1, 1});
  CHECK(opt->value == 2);
  CHECK(opt->basis == std::vector<std::size_t>{0, 1});
}

TEST_CASE("contradictory bounds give a Farkas certificate") {
  auto sys = ineqs(RatMat{{1}, {-1}}, RatVec{-1, 0});
  auto out = lp_solve(RatVec{0}, sys, Sense::kMaximize);
  auto* cert = std::get_if<LpInfeasible>(&out);
  REQUIRE(cert != nullptr);
  CHECK(cert->ineq_multipliers == RatVec{1, 1});
  CHECK(verify_farkas(sys, *cert));
}

TEST_CASE("unbounded ray") {
  auto sys = ineqs(RatMat{{-1}}, RatVec{0});
  auto out = lp_solve(RatVec{1}, sys, Sense::kMaximize);
  auto* unb = std::get_if<LpUnbounded>(&out);
  REQUIRE(unb != nullptr);
  CHECK(unb->ray == RatVec{1});
  CHECK(verify_ray(sys, RatVec{1}, Sense::kMaximize, *unb));
}

TEST_CASE("free line with cost is unbounded") {
  LinearSystem sys = LinearSystem::empty(2);
  sys.ineq_lhs = RatMat{{0, 1}};
  sys.ineq_rhs = RatVec{3};
  auto out = lp_solve(RatVec{-2, 1}, sys, Sense::kMinimize);
  auto* unb = std::get_if<LpUnbounded>(&out);
  REQUIRE(unb != nullptr);
  CHECK(verify_ray(sys, RatVec{-2, 1}, Sense::kMinimize, *unb));
}

TEST_CASE("equalities, fixed variables and redundant rows") {
  LinearSystem sys = LinearSystem::empty(3);
  sys.eq_lhs = RatMat{{1, 1, 1}, {2, 2, 2}, {0, 0, 3}};
  sys.eq_rhs = RatVec{1, 2, 1};
  sys.ineq_lhs = RatMat{{-1, 0, 0}, {0, -1, 0}};
  sys.ineq_rhs = RatVec{0, 0};
  auto out = lp_solve(RatVec{1, 2, 0}, sys, Sense::kMaximize);
  auto* opt = std::get_if<LpOptimal>(&out);
  REQUIRE(opt != nullptr);
  CHECK(opt->point == RatVec{0, frac(2, 3), frac(1, 3)});
  CHECK(opt->value == frac(4, 3));

  sys.eq_rhs = RatVec{1, 3, 1};
  out = lp_solve(RatVec{1, 2, 0}, sys, Sense::kMaximize);
  auto* cert = std::get_if<LpInfeasible>(&out);
  REQUIRE(cert != nullptr);
  CHECK(verify_farkas(sys, *cert));
}

TEST_CASE("conflicting fixings and bounds") {
  LinearSystem sys = LinearSystem::empty(2);
  sys.eq_lhs = RatMat{{2, 0}, {1, 0}};
  sys.eq_rhs = RatVec{2, 2};
  auto out = lp_solve(RatVec{0, 0}, sys, Sense::kMaximize);
  REQUIRE(std::holds_alternative<LpInfeasible>(out));
  CHECK(verify_farkas(sys, std::get<LpInfeasible>(out)));

  sys = LinearSystem::empty(2);
  sys.ineq_lhs = RatMat{{-1, 0}, {-2, 0}, {1, 1}, {0, -1}};
  sys.ineq_rhs = RatVec{-1, -6, 2, 0};
  out = lp_solve(RatVec{0, 0}, sys, Sense::kMaximize);
  REQUIRE(std::holds_alternative<LpInfeasible>(out));
  CHECK(verify_farkas(sys, std::get<LpInfeasible>(out)));
}

TEST_CASE("dimension mismatch is rejected") {
  auto sys = ineqs(RatMat{{1, 0}}, RatVec{1});
  CHECK_THROWS_AS(lp_solve(RatVec{1}, sys, Sense::kMaximize), Error);
  sys.ineq_rhs = RatVec{1, 2};
  CHECK_THROWS_AS(lp_solve(RatVec{1, 1}, sys, Sense::kMaximize), Error);
}

TEST_CASE("random programs agree with basic-solution enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = 2 + trial % 6;
    const bool boxed = trial % 2 == 0;
    const std::size_t neq = trial % 5 == 0 ? 1 : 0;
    std::vector<RatVec> rows;
    std::vector<Rat> rhs;
    for (std::size_t i = 0; i < m; ++i) {
      RatVec r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = frac(coef(rng), den(rng));
      rows.push_back(r);
      rhs.push_back(frac(coef(rng), den(rng)));
    }
    if (boxed) {
      for (std::size_t j = 0; j < n; ++j) {
        rows.push_back(RatVec::unit(n, j));
        rhs.push_back(Rat(5));
        rows.push_back(-RatVec::unit(n, j));
        rhs.push_back(Rat(5));
      }
    }
    LinearSystem sys = LinearSystem::empty(n);
    sys.ineq_lhs = RatMat::from_rows(rows, n);
    sys.ineq_rhs = RatVec(rhs);
    if (neq) {
      RatVec e(n);
      for (std::size_t j = 0; j < n; ++j) e[j] = Rat(coef(rng));
      sys.eq_lhs = RatMat::from_rows({e}, n);
      sys.eq_rhs = RatVec{Rat(coef(rng))};
    }
    RatVec c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = Rat(coef(rng));
    const Sense sense = trial % 3 == 0 ? Sense::kMinimize : Sense::kMaximize;
    const RatVec cmax = sense == Sense::kMaximize ? c : -c;

    auto out = lp_solve(c, sys, sense);
    if (auto* opt = std::get_if<LpOptimal>(&out)) {
      ++optimal;
      CHECK(satisfies(sys, opt->point));
      CHECK(opt->value == dot(c, opt->point));
      if (boxed) {
        auto best = brute_force_max(cmax, sys);
        REQUIRE(best.has_value());
        CHECK(*best == dot(cmax, opt->point));
      }
    } else if (auto* cert = std::get_if<LpInfeasible>(&out)) {
      ++infeasible;
      CHECK(verify_farkas(sys, *cert));
      if (boxed) CHECK_FALSE(brute_force_max(cmax, sys).has_value());
    } else {
      ++unbounded;
      CHECK_FALSE(boxed);
      CHECK(verify_ray(sys, c, sense, std::get<LpUnbounded>(out)));
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 10);
  CHECK(unbounded > 10);
}

TEST_CASE("optimal points on bounded regions are vertices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3;
    LinearSystem sys = LinearSystem::empty(n);
    std::vector<RatVec> rows;
    std::vector<Rat> rhs;
    for (std::size_t j = 0; j < n; ++j) {
      rows.push_back(-RatVec::unit(n, j));
      rhs.push_back(Rat(0));
    }
    for (int i = 0; i < 3; ++i) {
      RatVec r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = Rat(coef(rng) + 4);
      rows.push_back(r);
      rhs.push_back(Rat(6));
    }
    sys.ineq_lhs = RatMat::from_rows(rows, n);
    sys.ineq_rhs = RatVec(rhs);
    RatVec c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = Rat(coef(rng));
    auto out = lp_solve(c, sys, Sense::kMaximize);
    auto* opt = std::get_if<LpOptimal>(&out);
    REQUIRE(opt != nullptr);
    std::vector<RatVec> tight;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (dot(rows[i], opt->point) == rhs[i]) tight.push_back(rows[i]);
    CHECK(rank(RatMat::from_rows(tight, n)) == n);
  }
}
