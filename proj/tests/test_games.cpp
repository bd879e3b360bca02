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

#include <functional>
#include <map>
#include <random>
#include <set>

#include "eahkit/error.hpp"
#include "eahkit/games.hpp"

using namespace eahkit;

namespace {

RatVec uniform(std::size_t d) {
  RatVec x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = frac(1, static_cast<long>(d));
  return x;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInternal;
}

// Pure plan of one player: information set label -> action index.
using Plan = std::map<std::string, std::size_t>;

// Walks the tree with every player except `p` following `plans`; player p
// takes every branch. The reach-weighted payoff of p lands on the label of
// p's last information set and action (or "root").
std::map<std::string, Rat> direct_gradient(const GameTree& t, std::size_t p,
                                           const std::vector<Plan>& plans) {
  std::map<std::string, Rat> g;
  std::function<void(std::size_t, Rat, std::string)> walk = [&](std::size_t i, Rat reach,
                                                                std::string last) {
    const TreeNode& n = t.nodes[i];
    if (n.kind == TreeNode::Kind::kTerminal) {
      g[last] += reach * n.payoffs[p];
    } else if (n.kind == TreeNode::Kind::kChance) {
      for (std::size_t c = 0; c < n.children.size(); ++c)
        walk(n.children[c], reach * n.probabilities[c], last);
    } else if (n.player == p) {
      for (std::size_t c = 0; c < n.children.size(); ++c)
        walk(n.children[c], reach, n.infoset + ":" + n.actions[c]);
    } else {
      const std::size_t c = plans[n.player].at(n.infoset);
      walk(n.children[c], reach, last);
    }
  };
  walk(t.root, Rat(1), "root");
  return g;
}

// Expected payoffs when everybody follows a pure plan.
std::vector<Rat> direct_payoffs(const GameTree& t, const std::vector<Plan>& plans) {
  std::vector<Rat> u(t.num_players);
  std::function<void(std::size_t, Rat)> walk = [&](std::size_t i, Rat reach) {
    const TreeNode& n = t.nodes[i];
    if (n.kind == TreeNode::Kind::kTerminal) {
      for (std::size_t q = 0; q < t.num_players; ++q) u[q] += reach * n.payoffs[q];
    } else if (n.kind == TreeNode::Kind::kChance) {
      for (std::size_t c = 0; c < n.children.size(); ++c)
        walk(n.children[c], reach * n.probabilities[c]);
    } else {
      walk(n.children[plans[n.player].at(n.infoset)], reach);
    }
  };
  walk(t.root, Rat(1));
  return u;
}

// Sequence-form vector of a pure plan: 1 on every sequence the plan can reach.
RatVec plan_vector(const ExtensiveFormGame& g, std::size_t p, const Plan& plan) {
  const auto& seqs = g.sequences(p);
  const auto& infos = g.infosets(p);
  RatVec x(seqs.size());
  x[0] = 1;
  for (const auto& is : infos) {
    if (sgn(x[is.parent]) == 0) continue;
    x[is.sequences[plan.at(is.label)]] = 1;
  }
  return x;
}

// All plans of player p over its information set labels, as maps.
std::vector<Plan> all_plans(const ExtensiveFormGame& g, std::size_t p) {
  std::vector<Plan> out{Plan{}};
  for (const auto& is : g.infosets(p)) {
    std::vector<Plan> next;
    for (const auto& pl : out)
      for (std::size_t a = 0; a < is.sequences.size(); ++a) {
        Plan q = pl;
        q[is.label] = a;
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

// Random two-player tree. Labels either reveal the whole history or only the
// player's own moves; the action count is a function of the label, so the
// result always has perfect recall.
GameTree random_tree(std::mt19937_64& rng, int depth) {
  GameTree t;
  t.num_players = 2;
  std::uniform_int_distribution<long> pay(-4, 4);
  std::uniform_int_distribution<int> coin(0, 3);
  const bool hidden = coin(rng) % 2 == 0;
  std::function<std::size_t(int, std::string, std::vector<std::string>)> build =
      [&](int level, std::string history, std::vector<std::string> own) -> std::size_t {
    TreeNode n;
    n.id = "n" + std::to_string(t.nodes.size());
    const int roll = coin(rng);
    if (level == depth || (level > 0 && roll == 0)) {
      n.payoffs = {Rat(pay(rng)), frac(pay(rng), 2)};
      t.nodes.push_back(n);
      return t.nodes.size() - 1;
    }
    if (roll == 1 && level > 0) {
      n.kind = TreeNode::Kind::kChance;
      const std::size_t idx = t.nodes.size();
      t.nodes.push_back(n);
      std::vector<Rat> probs{frac(1, 3), frac(2, 3)};
      for (std::size_t c = 0; c < 2; ++c) {
        auto child = build(level + 1, history + "c" + std::to_string(c), own);
        t.nodes[idx].children.push_back(child);
        t.nodes[idx].probabilities.push_back(probs[c]);
        t.nodes[idx].actions.push_back("c" + std::to_string(c));
      }
      return idx;
    }
    const std::size_t player = static_cast<std::size_t>(level % 2);
    n.kind = TreeNode::Kind::kDecision;
    n.player = player;
    n.infoset = "p" + std::to_string(player) + "|" + (hidden ? own[player] : history);
    const std::size_t arity = 2 + std::hash<std::string>{}(n.infoset) % 2;
    const std::size_t idx = t.nodes.size();
    t.nodes.push_back(n);
    for (std::size_t a = 0; a < arity; ++a) {
      const std::string act = "a" + std::to_string(a);
      auto own_next = own;
      own_next[player] += "/" + t.nodes[idx].infoset + act;
      auto child = build(level + 1, history + "/" + act, own_next);
      t.nodes[idx].children.push_back(child);
      t.nodes[idx].actions.push_back(act);
    }
    return idx;
  };
  t.root = build(0, "", {"", ""});
  return t;
}

}  // namespace

TEST_CASE("normal-form gradients") {
  const auto pd = prisoners_dilemma();
  // Opponent at e_j: column j of the player's matrix.
  CHECK(pd.gradient(0, {RatVec(2), RatVec{0, 1}}) == RatVec{-3, -2});
  CHECK(pd.gradient(1, {RatVec{1, 0}, RatVec(2)}) == RatVec{-1, 0});
  // Opponent uniform: (-1 - 3)/2 and (0 - 2)/2.
  CHECK(pd.gradient(0, {RatVec(2), uniform(2)}) == RatVec{-2, -1});
  // Matching pennies cancels against a uniform opponent.
  CHECK(matching_pennies().gradient(0, {RatVec(2), uniform(2)}) == RatVec{0, 0});
  CHECK(pd.utility(0, {RatVec{0, 1}, RatVec{0, 1}}) == -2);

  SUBCASE("three players, brute-force expectation") {
    std::mt19937_64 rng(3);
    const auto g = random_nfg({2, 3, 2}, rng);
    const std::vector<RatVec> x{RatVec{frac(1, 3), frac(2, 3)}, uniform(3), RatVec{frac(1, 4), frac(3, 4)}};
    for (std::size_t p = 0; p < 3; ++p) {
      RatVec expect(g.actions()[p]);
      for (std::size_t a0 = 0; a0 < 2; ++a0)
        for (std::size_t a1 = 0; a1 < 3; ++a1)
          for (std::size_t a2 = 0; a2 < 2; ++a2) {
            const std::vector<std::size_t> joint{a0, a1, a2};
            Rat w = 1;
            for (std::size_t q = 0; q < 3; ++q)
              if (q != p) w *= x[q][joint[q]];
            expect[joint[p]] += w * g.payoff(p, joint);
          }
      CHECK(g.gradient(p, x) == expect);
    }
  }
}

TEST_CASE("normal-form construction and checks") {
  const auto pd = prisoners_dilemma();
  CHECK(pd.num_profiles() == 4);
  CHECK(pd.flat_index({1, 0}) == 2);
  CHECK(pd.joint_actions(2) == std::vector<std::size_t>{1, 0});
  CHECK(pd.pure_strategies(0, 10) == std::vector<RatVec>{RatVec{1, 0}, RatVec{0, 1}});
  CHECK(code_of([&] { pd.gradient(0, {RatVec(2), RatVec{1, 1}}); }) == ErrorCode::kPointOutsideSet);
  CHECK(code_of([&] { pd.gradient(0, {RatVec(2), RatVec{1}}); }) == ErrorCode::kDimensionMismatch);
  CHECK(code_of([] { NormalFormGame({2, 2}, {{1, 2, 3}, {1, 2, 3, 4}}); }) ==
        ErrorCode::kDimensionMismatch);

  std::mt19937_64 rng(11);
  const auto g = random_nfg({3, 2}, rng);
  std::set<Rat> dens{1, 2, 4};
  for (std::size_t p = 0; p < 2; ++p)
    for (const auto& x : g.payoff_tensor(p)) {
      CHECK(abs(x.get_num()) <= 8);
      CHECK((x.get_den() == 1 || x.get_den() == 2 || x.get_den() == 4));
    }
  std::mt19937_64 again(11);
  const auto h = random_nfg({3, 2}, again);
  CHECK(h.payoff_tensor(0) == g.payoff_tensor(0));
}

TEST_CASE("sequence form of a single decision") {
  GameTree t;
  t.num_players = 1;
  TreeNode root;
  root.id = "r";
  root.kind = TreeNode::Kind::kDecision;
  root.infoset = "I";
  root.actions = {"a", "b"};
  root.children = {1, 2};
  TreeNode left, right;
  left.id = "L";
  left.payoffs = {Rat(3)};
  right.id = "R";
  right.payoffs = {frac(-1, 2)};
  t.nodes = {root, left, right};
  ExtensiveFormGame g(t);
  REQUIRE(g.strategy_dim(0) == 3);
  const auto& sys = g.strategy_set(0).system();
  // x_root = 1, x_a + x_b - x_root = 0, x >= 0.
  CHECK(sys.eq_lhs == RatMat{{1, 0, 0}, {-1, 1, 1}});
  CHECK(sys.eq_rhs == RatVec{1, 0});
  CHECK(sys.ineq_lhs == RatMat{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  // Single player: the gradient is the payoff table over sequences.
  CHECK(g.gradient(0, {RatVec(3)}) == RatVec{0, 3, frac(-1, 2)});
  CHECK(g.pure_strategies(0, 10) == std::vector<RatVec>{RatVec{1, 1, 0}, RatVec{1, 0, 1}});
  CHECK(g.coordinate_name(0, 2) == "I:b");
}

TEST_CASE("kuhn poker sequence counts") {
  const auto tree = kuhn_poker_tree();
  ExtensiveFormGame g(tree);
  // Hand count: 3 cards x (check/bet + fold/call after check-bet) for the
  // first player, 3 cards x (two infosets with two actions) for the second.
  CHECK(g.sequences(0).size() == 13);
  CHECK(g.sequences(1).size() == 13);
  CHECK(g.infosets(0).size() == 6);
  CHECK(g.infosets(1).size() == 6);
  CHECK(g.count_pure_strategies(0, 1000) == 27);
  CHECK(g.count_pure_strategies(1, 1000) == 64);
  CHECK(g.count_pure_strategies(1, 10) == 11);

  // Tree walk count of sequences, independent of the builder.
  std::set<std::string> seen0, seen1;
  for (const auto& n : tree.nodes)
    if (n.kind == TreeNode::Kind::kDecision)
      for (const auto& a : n.actions) (n.player == 0 ? seen0 : seen1).insert(n.infoset + a);
  CHECK(seen0.size() + 1 == g.sequences(0).size());
  CHECK(seen1.size() + 1 == g.sequences(1).size());

  // Pure plans are distinct 0/1 vertices of the treeplex.
  for (std::size_t p = 0; p < 2; ++p) {
    const auto pures = g.pure_strategies(p, 1000);
    std::set<RatVec> unique(pures.begin(), pures.end());
    CHECK(unique.size() == pures.size());
    for (const auto& x : pures) {
      CHECK(is_vertex(g.strategy_set(p), x));
      for (const auto& v : x) CHECK((v == 0 || v == 1));
    }
  }
  CHECK(code_of([&] { g.pure_strategies(1, 63); }) == ErrorCode::kInstanceTooLarge);
}

TEST_CASE("kuhn gradient against direct tree evaluation") {
  const auto tree = kuhn_poker_tree();
  ExtensiveFormGame g(tree);
  const auto plans0 = all_plans(g, 0);
  const auto plans1 = all_plans(g, 1);
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const Plan& q0 = plans0[rng() % plans0.size()];
    const Plan& q1 = plans1[rng() % plans1.size()];
    const std::vector<Plan> plans{q0, q1};
    const std::vector<RatVec> x{plan_vector(g, 0, q0), plan_vector(g, 1, q1)};
    const auto u = direct_payoffs(tree, plans);
    CHECK(g.utility(0, x) == u[0]);
    CHECK(g.utility(1, x) == u[1]);
    for (std::size_t p = 0; p < 2; ++p) {
      const auto direct = direct_gradient(tree, p, plans);
      const RatVec grad = g.gradient(p, x);
      for (std::size_t s = 0; s < grad.size(); ++s) {
        auto it = direct.find(g.coordinate_name(p, s));
        CHECK(grad[s] == (it == direct.end() ? Rat(0) : it->second));
      }
    }
  }
}

TEST_CASE("random trees: gradient, pure plans and recall") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    const auto tree = random_tree(rng, 4);
    ExtensiveFormGame g(tree);
    std::vector<std::vector<Plan>> plans{all_plans(g, 0), all_plans(g, 1)};
    // Distinct vertices from the builder match the distinct plan vectors.
    for (std::size_t p = 0; p < 2; ++p) {
      std::set<RatVec> from_plans;
      for (const auto& pl : plans[p]) from_plans.insert(plan_vector(g, p, pl));
      const auto pures = g.pure_strategies(p, 100000);
      CHECK(std::set<RatVec>(pures.begin(), pures.end()) == from_plans);
      CHECK(pures.size() == from_plans.size());
      CHECK(g.count_pure_strategies(p, 100000) == pures.size());
    }
    for (int k = 0; k < 5; ++k) {
      const std::vector<Plan> pick{plans[0][rng() % plans[0].size()], plans[1][rng() % plans[1].size()]};
      const std::vector<RatVec> x{plan_vector(g, 0, pick[0]), plan_vector(g, 1, pick[1])};
      const auto u = direct_payoffs(tree, pick);
      for (std::size_t p = 0; p < 2; ++p) {
        CHECK(g.utility(p, x) == u[p]);
        const auto direct = direct_gradient(tree, p, pick);
        const RatVec grad = g.gradient(p, x);
        for (std::size_t s = 0; s < grad.size(); ++s) {
          auto it = direct.find(g.coordinate_name(p, s));
          CHECK(grad[s] == (it == direct.end() ? Rat(0) : it->second));
        }
      }
    }
  }
}

TEST_CASE("zero-payoff tree has zero gradient") {
  auto tree = kuhn_poker_tree();
  for (auto& n : tree.nodes)
    if (n.kind == TreeNode::Kind::kTerminal) n.payoffs = {Rat(0), Rat(0)};
  ExtensiveFormGame g(tree);
  const auto x1 = g.pure_strategies(1, 100).front();
  CHECK(g.gradient(0, {RatVec(13), x1}).is_zero());
  CHECK(g.payoff_entries().empty() == false);
}

TEST_CASE("malformed trees and imperfect recall") {
  // Player 0 forgets its own first move: both second-level nodes share an
  // information set but follow different own actions.
  GameTree t;
  t.num_players = 1;
  auto node = [](std::string id, std::string info, std::vector<std::size_t> ch) {
    TreeNode n;
    n.id = std::move(id);
    n.kind = TreeNode::Kind::kDecision;
    n.infoset = std::move(info);
    n.actions = {"l", "r"};
    n.children = std::move(ch);
    return n;
  };
  TreeNode leaf;
  leaf.payoffs = {Rat(0)};
  t.nodes = {node("root", "A", {1, 2}), node("x", "B", {3, 4}), node("y", "B", {5, 6}),
             leaf, leaf, leaf, leaf};
  CHECK(code_of([&] { ExtensiveFormGame g(t); }) == ErrorCode::kImperfectRecall);

  // Same tree with distinct sets is fine.
  t.nodes[2].infoset = "C";
  CHECK(ExtensiveFormGame(t).sequences(0).size() == 7);

  auto bad = t;
  bad.nodes[2].children = {1, 6};  // node reached twice
  CHECK(code_of([&] { ExtensiveFormGame g(bad); }) == ErrorCode::kMalformedTree);
  bad = t;
  bad.nodes[3].payoffs = {Rat(1), Rat(2)};
  CHECK(code_of([&] { ExtensiveFormGame g(bad); }) == ErrorCode::kMalformedTree);
  // Chance splits into two nodes of one information set with different labels.
  bad = t;
  bad.nodes[0].kind = TreeNode::Kind::kChance;
  bad.nodes[0].probabilities = {frac(1, 2), frac(1, 2)};
  bad.nodes[2].infoset = "B";
  CHECK(ExtensiveFormGame(bad).sequences(0).size() == 3);
  bad.nodes[2].actions = {"l", "s"};
  CHECK(code_of([&] { ExtensiveFormGame g(bad); }) == ErrorCode::kMalformedTree);
  bad = t;
  bad.nodes[0].kind = TreeNode::Kind::kChance;
  bad.nodes[0].probabilities = {frac(1, 2), frac(1, 3)};
  CHECK(code_of([&] { ExtensiveFormGame g(bad); }) == ErrorCode::kMalformedTree);
  bad = t;
  bad.nodes[1].children = {3, 40};
  CHECK(code_of([&] { ExtensiveFormGame g(bad); }) == ErrorCode::kMalformedTree);
  bad = t;
  bad.nodes[1].player = 3;
  CHECK(code_of([&] { ExtensiveFormGame g(bad); }) == ErrorCode::kMalformedTree);
}

TEST_CASE("chance weights are folded into payoff entries") {
  const auto tree = kuhn_poker_tree();
  ExtensiveFormGame g(tree);
  // 6 deals x 5 terminals, each reached by a distinct sequence pair.
  CHECK(g.payoff_entries().size() == 30);
  for (const auto& e : g.payoff_entries()) {
    CHECK(e.payoffs[0] + e.payoffs[1] == 0);
    const Rat scaled = e.payoffs[0] * 6;
    CHECK(scaled.get_den() == 1);
    CHECK(abs(scaled) <= 2);
  }
}
