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
#include <sstream>

#include "eahkit/error.hpp"
#include "eahkit/io.hpp"

using namespace eahkit;

namespace {

const std::string kData = EAHKIT_DATA_DIR;

template <class F>
std::string parse_error(const std::string& text, F&& reader) {
  std::istringstream is(text);
  try {
    reader(is);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  FAIL("accepted: " << text);
  return {};
}

bool same_system(const HPolytope& a, const HPolytope& b) {
  const auto& x = a.system();
  const auto& y = b.system();
  return a.dim() == b.dim() && x.ineq_lhs == y.ineq_lhs && x.ineq_rhs == y.ineq_rhs &&
         x.eq_lhs == y.eq_lhs && x.eq_rhs == y.eq_rhs;
}

}  // namespace

TEST_CASE("polytope round trip and grammar") {
  std::istringstream is(
      "# unit square\n"
      "polytope\n"
      "dim 2\n"
      "ineq -1 0 <= 0   # x >= 0\n"
      "ineq 1 0 <= 1\n"
      "ineq 0 -1 <= 0\n"
      "ineq 0 1 <= 1\n"
      "end\n");
  const HPolytope p = read_polytope(is);
  CHECK(p.dim() == 2);
  CHECK(p.num_ineq() == 4);
  CHECK(p.contains(RatVec{frac(1, 2), 1}));
  CHECK_FALSE(p.contains(RatVec{frac(3, 2), 0}));

  const HPolytope s = HPolytope::simplex(3);
  std::ostringstream os;
  write_polytope(os, s);
  std::istringstream back(os.str());
  CHECK(same_system(read_polytope(back), s));

  CHECK(parse_error("polytope dim 2 ineq 1 <= 0 end", read_polytope).find("line 1") != std::string::npos);
  CHECK(parse_error("polytope\ndim 2\nineq 1 x <= 0\nend", read_polytope).find("line 3") != std::string::npos);
  parse_error("polytope dim 0 end", read_polytope);
  parse_error("polytope dim 1 eq 1 <= 0 end", read_polytope);
  parse_error("polytope dim 1 ineq 1 <= 1/0 end", read_polytope);
  parse_error("polytope dim 1 end trailing", read_polytope);
  parse_error("polytope dim 1", read_polytope);
}

TEST_CASE("deviation files") {
  const DeviationSet swap = make_swap_deviations(2, 1);
  const DeviationSet lifted = with_identity(make_constant_deviations(HPolytope::simplex(2), std::nullopt, 0));
  std::ostringstream os;
  write_deviations(os, lifted);
  write_deviations(os, swap);
  CHECK(os.str().find("B[b][a]") != std::string::npos);
  std::istringstream is(os.str());
  const auto back = read_deviations(is);
  REQUIRE(back.size() == 2);
  CHECK(back[0].player == 0);
  CHECK(back[0].aux_dim() == 1);
  CHECK(back[0].includes_identity);
  CHECK(same_system(back[0].polytope, lifted.polytope));
  CHECK(back[1].player == 1);
  CHECK(same_system(back[1].polytope, swap.polytope));

  const auto file = read_file(kData + "/chicken_trigger.phi");
  std::istringstream trig(file);
  const auto devs = read_deviations(trig);
  REQUIRE(devs.size() == 2);
  for (const auto& d : devs) {
    CHECK(d.includes_identity);
    // Identity and the two triggers.
    CHECK(enumerate_vertices(d.polytope).size() == 3);
  }
  parse_error("deviations player 0 end", read_deviations);
  parse_error("deviations player 0 matrix_dim 0 end", read_deviations);
}

TEST_CASE("normal-form games") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const auto g = random_nfg({2 + rng() % 3, 1 + rng() % 3, 2}, rng);
    std::ostringstream os;
    write_nfg(os, g);
    std::istringstream is(os.str());
    const auto h = read_nfg(is);
    CHECK(h.actions() == g.actions());
    for (std::size_t p = 0; p < 3; ++p) CHECK(h.payoff_tensor(p) == g.payoff_tensor(p));
  }
  const auto pd = read_file(kData + "/prisoners_dilemma.nfg");
  std::istringstream is(pd);
  const auto g = read_nfg(is);
  for (std::size_t p = 0; p < 2; ++p) CHECK(g.payoff_tensor(p) == prisoners_dilemma().payoff_tensor(p));

  parse_error("nfg players 2 actions 2 2 payoffs 0 1 2 3 4 end", read_nfg);
  parse_error("nfg players 1 actions 2 payoffs 1 1 2 end", read_nfg);
  parse_error("nfg players 1 actions 0 end", read_nfg);
  parse_error("nfg players 1 actions 2 payoffs 0 1 2 3 end", read_nfg);
}

TEST_CASE("extensive-form games") {
  const GameTree kuhn = kuhn_poker_tree();
  std::ostringstream os;
  write_efg(os, kuhn);
  std::istringstream is(os.str());
  const GameTree back = read_efg(is);
  REQUIRE(back.nodes.size() == kuhn.nodes.size());
  CHECK(back.root == kuhn.root);
  for (std::size_t i = 0; i < kuhn.nodes.size(); ++i) {
    const auto& a = kuhn.nodes[i];
    const auto& b = back.nodes[i];
    CHECK(a.id == b.id);
    CHECK(a.kind == b.kind);
    CHECK(a.children == b.children);
    CHECK(a.actions == b.actions);
    CHECK(a.probabilities == b.probabilities);
    CHECK(a.payoffs == b.payoffs);
    if (a.kind == TreeNode::Kind::kDecision) {
      CHECK(a.player == b.player);
      CHECK(a.infoset == b.infoset);
    }
  }

  // The shipped file is the same game.
  std::istringstream file(read_file(kData + "/kuhn.efg"));
  const auto game = read_game(file);
  const auto* efg = dynamic_cast<const ExtensiveFormGame*>(game.get());
  REQUIRE(efg != nullptr);
  const ExtensiveFormGame ref(kuhn);
  for (std::size_t p = 0; p < 2; ++p) {
    CHECK(efg->strategy_dim(p) == 13);
    const auto plans = ref.pure_strategies(1 - p, 100);
    std::vector<RatVec> profile{RatVec(13), RatVec(13)};
    profile[1 - p] = plans[plans.size() / 2];
    CHECK(efg->gradient(p, profile) == ref.gradient(p, profile));
  }

  std::istringstream chicken(read_file(kData + "/chicken.efg"));
  const ExtensiveFormGame c(read_efg(chicken));
  CHECK(c.infosets(0).size() == 1);
  CHECK(c.infosets(1).size() == 1);
  CHECK(c.strategy_dim(1) == 3);

  CHECK(parse_error("efg players 1 root r node r terminal 1 node r terminal 2 end", read_efg).find("duplicate") !=
        std::string::npos);
  CHECK(parse_error("efg players 1 root r node r decision 0 i 1 a x end", read_efg).find("'x'") !=
        std::string::npos);
  parse_error("efg players 1 root q node r terminal 1 end", read_efg);
  parse_error("efg players 1 root r node r leaf end", read_efg);
  // Structure errors come from the game, not the parser.
  std::istringstream bad("efg players 1 root r node r chance 1 a t 1/2 node t terminal 0 end");
  const GameTree t = read_efg(bad);
  CHECK_THROWS_AS(ExtensiveFormGame{t}, Error);
}

TEST_CASE("game dispatch and matrices") {
  std::istringstream nfg("nfg players 1 actions 3 payoffs 0 1 2 3 end");
  CHECK(dynamic_cast<NormalFormGame*>(read_game(nfg).get()) != nullptr);
  parse_error("game", read_game);

  const RatMat a{{1, frac(-1, 2)}, {0, 3}, {frac(7, 3), 1}};
  std::ostringstream os;
  write_matrix(os, a);
  std::istringstream is(os.str());
  CHECK(read_matrix(is) == a);
  parse_error("matrix 2 2 1 2 3 end", read_matrix);
  parse_error("matrix 0 2 end", read_matrix);
  CHECK_THROWS_AS(read_file(kData + "/no_such_file"), Error);
}

TEST_CASE("equilibrium files") {
  const auto pd = prisoners_dilemma();
  MixtureEquilibrium eq;
  eq.support = {{PureProfile{{RatVec{0, 1}, RatVec{0, 1}}}, frac(2, 3)},
                {PureProfile{{RatVec{1, 0}, RatVec{0, 1}}}, frac(1, 3)}};
  eq.certificate = {{1, RatVec{1, 0, 0, 1}, Rat(0)}, {0, RatVec{0, 0, 1, 1}, frac(-1, 3)}};
  std::ostringstream os;
  write_equilibrium(os, pd, eq);
  CHECK(os.str().find("# a0 | a1") != std::string::npos);
  std::istringstream is(os.str());
  const auto back = read_equilibrium(is);
  CHECK(back.support == eq.support);
  REQUIRE(back.certificate.size() == 2);
  CHECK(back.certificate[1].player == 0);
  CHECK(back.certificate[1].benefit == frac(-1, 3));
  CHECK(back.certificate[1].deviation == RatVec{0, 0, 1, 1});

  // Without a certificate section.
  std::istringstream bare("equilibrium players 1 dims 2 support 1 profile 1 0 1 end");
  CHECK(read_equilibrium(bare).support.size() == 1);
  parse_error("equilibrium players 2 dims 2 2 support 1 profile 1 0 1 0 1 end", read_equilibrium);
  parse_error("equilibrium players 1 dims 2 support 2 profile 1 0 1 end", read_equilibrium);

  BruteForceReport r = brute_force_equilibrium(pd, {make_swap_deviations(2, 0), make_swap_deviations(2, 1)});
  std::ostringstream bf;
  write_brute_force(bf, pd, r);
  CHECK(bf.str().find("feasible yes") != std::string::npos);
  CHECK(bf.str().find("profile 1 0 1 | 0 1") != std::string::npos);
  CHECK(bf.str().find("equilibrium") != std::string::npos);
}
