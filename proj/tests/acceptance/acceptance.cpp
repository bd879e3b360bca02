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

// Acceptance run: criteria C1-C8, one PASS/FAIL line each. Exit status is
// the number of failed criteria.

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eahkit/cli.hpp"
#include "eahkit/error.hpp"
#include "eahkit/io.hpp"
#include "eahkit/phi.hpp"
#include "eahkit/saddle.hpp"
#include "eahkit/verify.hpp"

using namespace eahkit;
namespace fs = std::filesystem;

namespace {

const std::string kData = EAHKIT_DATA_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;  // keep the first failure
    pass = pass && ok;
  }
};

struct Cli {
  int code;
  std::string out, err;
};

Cli cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// ---- corpus -------------------------------------------------------------

struct CorpusGame {
  std::string shape;  // "3x2x4"
  std::string seed;
  std::vector<std::size_t> actions;
};

std::vector<CorpusGame> make_corpus(std::size_t count) {
  std::mt19937_64 rng(20261015);
  std::vector<CorpusGame> out;
  for (std::size_t i = 0; i < count; ++i) {
    CorpusGame g;
    g.actions.resize(2 + rng() % 2);
    for (auto& a : g.actions) a = 2 + rng() % 3;
    for (std::size_t p = 0; p < g.actions.size(); ++p)
      g.shape += (p ? "x" : "") + std::to_string(g.actions[p]);
    g.seed = std::to_string(1000 + i);
    out.push_back(std::move(g));
  }
  return out;
}

NormalFormGame corpus_game(const CorpusGame& c) {
  std::mt19937_64 rng(std::stoull(c.seed));
  return random_nfg(c.actions, rng);
}

std::vector<DeviationSet> swap_sets(const std::vector<std::size_t>& actions) {
  std::vector<DeviationSet> devs;
  for (std::size_t p = 0; p < actions.size(); ++p) devs.push_back(make_swap_deviations(actions[p], p));
  return devs;
}

std::vector<MixtureEquilibrium> g_corpus_solutions;

// ---- C1 -----------------------------------------------------------------

Outcome c1(const std::vector<CorpusGame>& corpus) {
  Outcome o;
  std::size_t worst_support = 0, worst_n = 0;
  for (const auto& c : corpus) {
    const auto r = cli_run({"solve", "--game", "random:" + c.shape, "--seed", c.seed, "--phi", "swap"});
    o.require(r.code == 0, c.shape + " seed " + c.seed + ": exit " + std::to_string(r.code) + " " + r.err);
    if (r.code != 0) {
      g_corpus_solutions.emplace_back();
      continue;
    }
    std::size_t support = 0, n = 0;
    std::istringstream head(r.out);
    std::string w1, w2;
    head >> w1 >> support >> w2 >> n;
    std::size_t expect_n = 0;
    for (auto a : c.actions) expect_n += a * a;
    o.require(n == expect_n, c.shape + ": reported N " + std::to_string(n));
    std::istringstream body(r.out.substr(r.out.find('\n') + 1));
    MixtureEquilibrium eq = read_equilibrium(body);
    o.require(eq.support.size() == support, c.shape + ": support count mismatch");
    o.require(eq.support.size() <= expect_n, c.shape + ": support above N");
    o.require(!eq.certificate.empty(), c.shape + ": empty certificate");
    for (const auto& b : eq.certificate) o.require(sgn(b.benefit) <= 0, c.shape + ": positive residual");
    if (support * worst_n > worst_support * n || worst_n == 0) {
      worst_support = support;
      worst_n = n;
    }
    g_corpus_solutions.push_back(std::move(eq));
  }
  o.detail = o.pass ? std::to_string(corpus.size()) + " games, all residuals <= 0, largest support/N " +
                          std::to_string(worst_support) + "/" + std::to_string(worst_n)
                    : o.detail;
  return o;
}

// ---- C2 -----------------------------------------------------------------

Outcome c2(const std::vector<CorpusGame>& corpus) {
  Outcome o;
  const std::size_t cap = brute_force_cap();
  std::size_t checked = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto g = corpus_game(corpus[i]);
    std::size_t profiles = 1;
    for (auto a : corpus[i].actions) profiles *= a;
    if (profiles > cap) continue;
    const auto devs = swap_sets(corpus[i].actions);
    const auto brute = brute_force_equilibrium(g, devs, cap);
    o.require(brute.feasible, corpus[i].shape + ": brute force infeasible");
    if (brute.feasible) o.require(verify_equilibrium(g, devs, brute.equilibrium->support).pass,
                                  corpus[i].shape + ": brute-force solution fails the verifier");
    const auto& mine = g_corpus_solutions.at(i);
    o.require(!mine.support.empty() && verify_equilibrium(g, devs, mine.support).pass,
              corpus[i].shape + ": framework solution fails the verifier");
    ++checked;
  }
  o.require(checked > 0, "no corpus game under the cap");
  if (o.pass) o.detail = std::to_string(checked) + " games under cap " + std::to_string(cap) + ", both pass";
  return o;
}

// ---- C3 / C7 ------------------------------------------------------------

struct SaddleRun {
  std::size_t m, n;
  SaddleStats stats;
};
std::vector<SaddleRun> g_saddle_runs;

Outcome c3() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> num(-8, 8);
  const int games = 24;
  for (int k = 0; k < games; ++k) {
    const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
    RatMat a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = frac(num(rng), 1L << (rng() % 3));
    const RatMat shifted = shift_to_zero(a, matrix_game_value(a));
    const HPolytope x_set = with_anchor(HPolytope::simplex(m));
    const HPolytope y_set = with_anchor(HPolytope::simplex(n));
    const auto sol = solve_saddle(vertex_best_response_oracle(shifted, x_set), y_set,
                                  std::max(y_set.facet_complexity(), encoding_length(shifted)));
    const std::string tag = std::to_string(m) + "x" + std::to_string(n) + " #" + std::to_string(k);
    // Vertices of Y x {1} are (e_j, 1).
    for (std::size_t j = 0; j < n; ++j) {
      RatVec v(n + 1);
      v[j] = 1;
      v[n] = 1;
      o.require(sgn(dot(sol.mixed_row, v)) >= 0, tag + ": mixed row negative at a vertex");
    }
    o.require(sol.mixture.size() <= n + 1, tag + ": support above n+1");
    g_saddle_runs.push_back({m, n, sol.stats});
  }
  if (o.pass) o.detail = std::to_string(games) + " games, r . y >= 0 at every vertex, support <= n+1";
  return o;
}

Outcome c7() {
  Outcome o;
  std::size_t tight = 0;
  for (const auto& r : g_saddle_runs) {
    std::size_t iters = 0;
    for (auto mi : r.stats.max_iters) iters += mi;
    const std::size_t big_n = r.stats.ellipsoid_dim;
    o.require(r.stats.ger_calls <= iters * big_n,
              std::to_string(r.m) + "x" + std::to_string(r.n) + ": " + std::to_string(r.stats.ger_calls) +
                  " GER calls above " + std::to_string(iters) + " x " + std::to_string(big_n));
    if (r.stats.ger_calls <= iters) ++tight;
  }
  if (o.pass)
    o.detail = std::to_string(g_saddle_runs.size()) + " runs within max_iters x N; " + std::to_string(tight) +
               " also within max_iters alone";
  return o;
}

// ---- C4 -----------------------------------------------------------------

RatMat random_stochastic(std::size_t d, std::mt19937_64& rng) {
  RatMat b(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    Rat total = 0;
    for (std::size_t r = 0; r < d; ++r) {
      b(r, a) = Rat(static_cast<long>(rng() % 6));
      total += b(r, a);
    }
    if (total == 0) {
      b(a, a) = 1;
      total = 1;
    }
    for (std::size_t r = 0; r < d; ++r) b(r, a) /= total;
  }
  return b;
}

RatVec random_distribution(std::size_t d, std::mt19937_64& rng) {
  RatVec x(d);
  Rat total = 0;
  for (auto& v : x) {
    v = Rat(static_cast<long>(1 + rng() % 6));
    total += v;
  }
  x /= total;
  return x;
}

Rat double_sum(const NormalFormGame& g, const std::vector<RatVec>& x, const std::vector<RatMat>& bs) {
  Rat total = 0;
  for (std::size_t flat = 0; flat < g.num_profiles(); ++flat) {
    const auto joint = g.joint_actions(flat);
    Rat weight = 1;
    for (std::size_t q = 0; q < joint.size(); ++q) weight *= x[q][joint[q]];
    for (std::size_t p = 0; p < joint.size(); ++p) {
      Rat deviated = 0;
      for (std::size_t b = 0; b < g.actions()[p]; ++b) {
        auto other = joint;
        other[p] = b;
        deviated += bs[p](b, joint[p]) * g.payoff(p, other);
      }
      total += weight * (g.payoff(p, joint) - deviated);
    }
  }
  return total;
}

Outcome c4() {
  Outcome o;
  std::mt19937_64 rng(404);
  for (int k = 0; k < 100; ++k) {
    std::vector<std::size_t> actions(2 + rng() % 2);
    for (auto& a : actions) a = 2 + rng() % 3;
    const auto g = random_nfg(actions, rng);
    std::vector<RatVec> x;
    std::vector<RatMat> bs;
    for (auto a : actions) {
      x.push_back(random_distribution(a, rng));
      bs.push_back(random_stochastic(a, rng));
    }
    o.require(product_payoff(g, x, bs) == double_sum(g, x, bs), "product payoff triple " + std::to_string(k));
  }
  for (int k = 0; k < 100; ++k) {
    const std::size_t d = 1 + k % 5;
    const RatMat b = random_stochastic(d, rng);
    const RatVec x = fixed_point(b, HPolytope::simplex(d));
    o.require((b * x - x).is_zero(), "fixed point residual, matrix " + std::to_string(k));
  }
  if (o.pass) o.detail = "100 product-payoff triples equal, 100 fixed points with zero residual";
  return o;
}

// ---- C5 -----------------------------------------------------------------

HPolytope random_polytope(std::size_t d, std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0:
      return HPolytope::simplex(d);
    case 1: {
      RatVec lo(d), hi(d);
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = Rat(static_cast<long>(rng() % 5) - 2);
        hi[i] = lo[i] + Rat(static_cast<long>(1 + rng() % 3));
      }
      return HPolytope::box(lo, hi);
    }
    default: {
      // Unit box with a few random cuts through points near its centre.
      std::vector<RatVec> rows;
      std::vector<Rat> rhs;
      for (std::size_t i = 0; i < d; ++i) {
        rows.push_back(-RatVec::unit(d, i));
        rhs.push_back(0);
        rows.push_back(RatVec::unit(d, i));
        rhs.push_back(1);
      }
      for (int c = 0; c < 2; ++c) {
        RatVec a(d);
        Rat centre = 0;
        for (std::size_t i = 0; i < d; ++i) {
          a[i] = Rat(static_cast<long>(rng() % 7) - 3);
          centre += a[i] / 2;
        }
        rows.push_back(a);
        rhs.push_back(centre + frac(static_cast<long>(rng() % 3), 4));
      }
      return HPolytope(RatMat::from_rows(rows, d), RatVec(rhs), RatMat(0, d), RatVec());
    }
  }
}

// max over X of min over V(Y) of x^T A v, by one LP over (x, t).
Rat max_min(const RatMat& a, const HPolytope& x_set, const HPolytope& y_set) {
  const std::size_t d = x_set.dim();
  const auto& sys = x_set.system();
  std::vector<RatVec> ineq;
  std::vector<Rat> rhs;
  for (std::size_t i = 0; i < sys.ineq_lhs.rows(); ++i) {
    ineq.push_back(concat(sys.ineq_lhs.row(i), RatVec{0}));
    rhs.push_back(sys.ineq_rhs[i]);
  }
  for (const auto& v : enumerate_vertices(y_set)) {
    ineq.push_back(concat(-(a * v), RatVec{1}));
    rhs.push_back(0);
  }
  std::vector<RatVec> eq;
  for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i) eq.push_back(concat(sys.eq_lhs.row(i), RatVec{0}));
  LinearSystem lp{RatMat::from_rows(ineq, d + 1), RatVec(rhs), RatMat::from_rows(eq, d + 1), sys.eq_rhs};
  return std::get<LpOptimal>(lp_solve(RatVec::unit(d + 1, d), lp, Sense::kMaximize)).value;
}

RatMat negate_transpose(const RatMat& a) {
  RatMat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = -a(i, j);
  return t;
}

Outcome c5() {
  Outcome o;
  std::mt19937_64 rng(55);
  int first = 0, second = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t dx = 1 + rng() % 4, dy = 1 + rng() % 4;
    const HPolytope x_set = random_polytope(dx, rng);
    const HPolytope y_set = random_polytope(dy, rng);
    RatMat a(dx, dy);
    const long shift = static_cast<long>(rng() % 5) - 2;
    for (std::size_t i = 0; i < dx; ++i)
      for (std::size_t j = 0; j < dy; ++j) a(i, j) = frac(static_cast<long>(rng() % 13) - 6 + shift, 2);
    const std::string tag = "instance " + std::to_string(k);
    const auto result = farkas_case(a, x_set, y_set);
    // Case 2 holds iff min over Y of max over V(X) is negative.
    const Rat min_max = -max_min(negate_transpose(a), y_set, x_set);
    if (const auto* w = std::get_if<FarkasCase1>(&result)) {
      ++first;
      o.require(x_set.contains(w->x), tag + ": witness outside X");
      for (const auto& v : enumerate_vertices(y_set)) o.require(sgn(dot(w->x, a * v)) >= 0, tag + ": case 1 witness");
      o.require(sgn(min_max) >= 0, tag + ": case 2 also holds");
    } else {
      ++second;
      const auto& w2 = std::get<FarkasCase2>(result);
      o.require(sgn(w2.scale) > 0, tag + ": nonpositive scale");
      RatVec base = w2.y;
      base /= w2.scale;
      o.require(y_set.contains(base), tag + ": witness outside cone(Y)");
      for (const auto& v : enumerate_vertices(x_set)) o.require(dot(v, a * w2.y) <= -1, tag + ": case 2 witness");
      o.require(sgn(max_min(a, x_set, y_set)) < 0, tag + ": case 1 also holds");
    }
  }
  if (o.pass)
    o.detail = "200 instances (" + std::to_string(first) + " case 1, " + std::to_string(second) +
               " case 2), witnesses exact, other case fails";
  return o;
}

// ---- C6 -----------------------------------------------------------------

Outcome c6(const fs::path& tmp) {
  Outcome o;
  const std::string kuhn = kData + "/kuhn.efg";
  const std::string out = (tmp / "kuhn.eq").string();
  const auto t0 = Clock::now();
  const auto r = cli_run({"solve", "--game", kuhn, "--phi", "constant", "--out", out});
  const double secs = seconds_since(t0);
  o.require(r.code == 0, "kuhn solve exit " + std::to_string(r.code) + ": " + r.err);
  o.require(secs < 120, "kuhn solve took " + std::to_string(secs) + " s");
  std::size_t support = 0;
  if (r.code == 0) {
    std::istringstream is(read_file(out));
    const auto eq = read_equilibrium(is);
    support = eq.support.size();
    for (const auto& b : eq.certificate) o.require(sgn(b.benefit) <= 0, "kuhn certificate residual > 0");
    const auto v = cli_run({"verify", "--game", kuhn, "--phi", "constant", "--equilibrium", out});
    o.require(v.code == 0, "kuhn verify: " + v.out);
  }

  const std::string chicken = kData + "/chicken.efg";
  const std::string phi = "file:" + kData + "/chicken_trigger.phi";
  const std::string cout = (tmp / "chicken.eq").string();
  const auto c = cli_run({"solve", "--game", chicken, "--phi", phi, "--out", cout});
  o.require(c.code == 0, "chicken solve exit " + std::to_string(c.code) + ": " + c.err);
  if (c.code == 0) {
    const auto v = cli_run({"verify", "--game", chicken, "--phi", phi, "--equilibrium", cout});
    o.require(v.code == 0, "chicken verify: " + v.out);
  }
  if (o.pass) {
    std::ostringstream d;
    d << "kuhn CCE in " << std::fixed << std::setprecision(1) << secs << " s (support " << support
      << ") verifies; trigger file on the single-infoset tree verifies";
    o.detail = d.str();
  }
  return o;
}

// ---- C8 -----------------------------------------------------------------

Outcome c8(const std::vector<CorpusGame>& corpus) {
  Outcome o;
  std::size_t steps = 0, failures = 0;
  for (const auto& c : corpus) {
    const auto g = corpus_game(c);
    PhiOptions opts;
    opts.observer = [&](std::size_t, const Rat& v) {
      ++steps;
      if (sgn(v) < 0) ++failures;
    };
    const std::size_t before = steps;
    const auto sol = solve_phi_equilibrium(g, swap_sets(c.actions), opts);
    o.require(steps - before == sol.stats.ger_calls * c.actions.size(), c.shape + ": missing observer steps");
  }
  o.require(failures == 0, std::to_string(failures) + " purification steps went negative");
  if (o.pass) o.detail = std::to_string(steps) + " purification steps on " + std::to_string(corpus.size()) +
                         " games, none negative";
  return o;
}

}  // namespace

int main() {
  const fs::path tmp = fs::temp_directory_path() / ("eahkit_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  const auto corpus = make_corpus(50);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"C1 exact certificates", [&] { return c1(corpus); }},
      {"C2 brute-force agreement", [&] { return c2(corpus); }},
      {"C3 saddle cross-check", [] { return c3(); }},
      {"C4 phi identities", [] { return c4(); }},
      {"C5 farkas exclusivity", [] { return c5(); }},
      {"C6 efg desk scale", [&] { return c6(tmp); }},
      {"C7 ellipsoid bounds", [] { return c7(); }},
      {"C8 purification invariant", [&] { return c8(corpus); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " (" << std::fixed << std::setprecision(1) << secs
              << " s): " << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  fs::remove_all(tmp);
  return failed;
}
