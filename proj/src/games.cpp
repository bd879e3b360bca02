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

#include "eahkit/games.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "eahkit/error.hpp"

namespace eahkit {

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > (cap + 1) / b) return cap + 1;
  return a * b;
}

}  // namespace

RatVec PolyhedralGame::gradient(std::size_t p, const std::vector<RatVec>& profile) const {
  const std::size_t n = num_players();
  EAHKIT_CHECK(p < n, ErrorCode::kInvalidArgument, "player index out of range");
  EAHKIT_CHECK(profile.size() == n, ErrorCode::kDimensionMismatch,
               "profile has " + std::to_string(profile.size()) + " strategies for " +
                   std::to_string(n) + " players");
  for (std::size_t q = 0; q < n; ++q) {
    EAHKIT_CHECK(profile[q].size() == strategy_dim(q), ErrorCode::kDimensionMismatch,
                 "strategy of player " + std::to_string(q) + " has the wrong length");
    if (q != p)
      EAHKIT_CHECK(strategy_set(q).contains(profile[q]), ErrorCode::kPointOutsideSet,
                   "strategy of player " + std::to_string(q) + " is outside its polytope");
  }
  return raw_gradient(p, profile);
}

Rat PolyhedralGame::utility(std::size_t p, const std::vector<RatVec>& profile) const {
  return dot(gradient(p, profile), profile.at(p));
}

// ---------------------------------------------------------------------------
// Normal form

NormalFormGame::NormalFormGame(std::vector<std::size_t> actions,
                               std::vector<std::vector<Rat>> payoffs)
    : actions_(std::move(actions)), payoffs_(std::move(payoffs)) {
  EAHKIT_CHECK(!actions_.empty(), ErrorCode::kInvalidArgument, "game without players");
  std::size_t total = 1;
  for (auto d : actions_) {
    EAHKIT_CHECK(d >= 1, ErrorCode::kInvalidArgument, "player without actions");
    total *= d;
  }
  EAHKIT_CHECK(payoffs_.size() == actions_.size(), ErrorCode::kDimensionMismatch,
               "need one payoff tensor per player");
  for (const auto& t : payoffs_)
    EAHKIT_CHECK(t.size() == total, ErrorCode::kDimensionMismatch,
                 "payoff tensor has " + std::to_string(t.size()) + " entries, expected " +
                     std::to_string(total));
  for (auto d : actions_) simplices_.push_back(HPolytope::simplex(d));
}

std::size_t NormalFormGame::flat_index(const std::vector<std::size_t>& joint) const {
  EAHKIT_CHECK(joint.size() == actions_.size(), ErrorCode::kDimensionMismatch,
               "joint action has the wrong length");
  std::size_t idx = 0;
  for (std::size_t q = 0; q < actions_.size(); ++q) {
    EAHKIT_CHECK(joint[q] < actions_[q], ErrorCode::kInvalidArgument, "action out of range");
    idx = idx * actions_[q] + joint[q];
  }
  return idx;
}

std::vector<std::size_t> NormalFormGame::joint_actions(std::size_t flat) const {
  std::vector<std::size_t> joint(actions_.size());
  for (std::size_t q = actions_.size(); q-- > 0;) {
    joint[q] = flat % actions_[q];
    flat /= actions_[q];
  }
  return joint;
}

const Rat& NormalFormGame::payoff(std::size_t p, const std::vector<std::size_t>& joint) const {
  return payoffs_.at(p)[flat_index(joint)];
}

RatVec NormalFormGame::raw_gradient(std::size_t p, const std::vector<RatVec>& profile) const {
  RatVec g(actions_[p]);
  const std::size_t total = num_profiles();
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto joint = joint_actions(flat);
    Rat w = 1;
    for (std::size_t q = 0; q < actions_.size() && sgn(w) != 0; ++q)
      if (q != p) w *= profile[q][joint[q]];
    if (sgn(w) == 0 || sgn(payoffs_[p][flat]) == 0) continue;
    g[joint[p]] += w * payoffs_[p][flat];
  }
  return g;
}

std::size_t NormalFormGame::count_pure_strategies(std::size_t p, std::size_t cap) const {
  return std::min(actions_.at(p), cap + 1);
}

std::vector<RatVec> NormalFormGame::pure_strategies(std::size_t p, std::size_t cap) const {
  EAHKIT_CHECK(actions_.at(p) <= cap, ErrorCode::kInstanceTooLarge, "too many pure strategies");
  std::vector<RatVec> out;
  for (std::size_t a = 0; a < actions_[p]; ++a) out.push_back(RatVec::unit(actions_[p], a));
  return out;
}

EncodingLength NormalFormGame::payoff_complexity() const {
  EncodingLength best;
  for (const auto& t : payoffs_)
    for (const auto& x : t) best = std::max(best, encoding_length(x));
  return best;
}

std::string NormalFormGame::coordinate_name(std::size_t p, std::size_t i) const {
  EAHKIT_CHECK(i < actions_.at(p), ErrorCode::kInvalidArgument, "action out of range");
  return "a" + std::to_string(i);
}

NormalFormGame random_nfg(const std::vector<std::size_t>& actions, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-8, 8);
  std::uniform_int_distribution<int> den_pick(0, 2);
  std::size_t total = 1;
  for (auto d : actions) total *= d;
  std::vector<std::vector<Rat>> payoffs(actions.size(), std::vector<Rat>(total));
  for (auto& t : payoffs)
    for (auto& x : t) {
      const long n = num(rng);
      x = frac(n, 1L << den_pick(rng));
    }
  return NormalFormGame(actions, std::move(payoffs));
}

// ---------------------------------------------------------------------------
// Extensive form

ExtensiveFormGame::ExtensiveFormGame(const GameTree& tree) : num_players_(tree.num_players) {
  const std::size_t n = num_players_;
  EAHKIT_CHECK(n >= 1, ErrorCode::kMalformedTree, "tree without players");
  EAHKIT_CHECK(tree.root < tree.nodes.size(), ErrorCode::kMalformedTree, "root out of range");
  sequences_.assign(n, {Sequence{}});
  infosets_.assign(n, {});

  std::vector<std::map<std::string, std::size_t>> infoset_index(n);
  std::vector<bool> seen(tree.nodes.size(), false);
  std::map<std::vector<std::size_t>, std::size_t> entry_index;

  auto fail = [](const TreeNode& node, const std::string& what) {
    throw Error(ErrorCode::kMalformedTree, "node '" + node.id + "': " + what);
  };

  std::function<void(std::size_t, std::vector<std::size_t>&, const Rat&)> walk =
      [&](std::size_t idx, std::vector<std::size_t>& current, const Rat& reach) {
        EAHKIT_CHECK(idx < tree.nodes.size(), ErrorCode::kMalformedTree,
                     "child index " + std::to_string(idx) + " out of range");
        const TreeNode& node = tree.nodes[idx];
        if (seen[idx]) fail(node, "reached twice");
        seen[idx] = true;
        switch (node.kind) {
          case TreeNode::Kind::kTerminal: {
            if (!node.children.empty()) fail(node, "terminal node with children");
            if (node.payoffs.size() != n) fail(node, "payoff vector has the wrong length");
            if (sgn(reach) == 0) return;
            auto [it, inserted] = entry_index.emplace(current, entries_.size());
            if (inserted) entries_.push_back({current, std::vector<Rat>(n)});
            auto& entry = entries_[it->second];
            for (std::size_t q = 0; q < n; ++q) entry.payoffs[q] += reach * node.payoffs[q];
            return;
          }
          case TreeNode::Kind::kChance: {
            if (node.children.empty()) fail(node, "chance node without children");
            if (node.probabilities.size() != node.children.size())
              fail(node, "one probability per child is required");
            Rat total = 0;
            for (const auto& pr : node.probabilities) {
              if (sgn(pr) < 0) fail(node, "negative probability");
              total += pr;
            }
            if (total != 1) fail(node, "probabilities sum to " + to_string(total));
            for (std::size_t c = 0; c < node.children.size(); ++c)
              walk(node.children[c], current, reach * node.probabilities[c]);
            return;
          }
          case TreeNode::Kind::kDecision: {
            const std::size_t p = node.player;
            if (p >= n) fail(node, "player out of range");
            if (node.children.empty()) fail(node, "decision node without children");
            if (node.actions.size() != node.children.size())
              fail(node, "one action label per child is required");
            auto found = infoset_index[p].find(node.infoset);
            std::size_t info;
            if (found == infoset_index[p].end()) {
              info = infosets_[p].size();
              infoset_index[p].emplace(node.infoset, info);
              Infoset is{node.infoset, current[p], {}};
              for (const auto& a : node.actions) {
                is.sequences.push_back(sequences_[p].size());
                sequences_[p].push_back(Sequence{info, a, current[p]});
              }
              infosets_[p].push_back(std::move(is));
            } else {
              info = found->second;
              const Infoset& is = infosets_[p][info];
              if (is.parent != current[p])
                throw Error(ErrorCode::kImperfectRecall,
                            "information set '" + node.infoset + "' of player " +
                                std::to_string(p) + " is reached after different own histories");
              bool same = is.sequences.size() == node.actions.size();
              for (std::size_t a = 0; same && a < node.actions.size(); ++a)
                same = sequences_[p][is.sequences[a]].action == node.actions[a];
              if (!same) fail(node, "actions differ from the rest of its information set");
            }
            const std::size_t saved = current[p];
            for (std::size_t c = 0; c < node.children.size(); ++c) {
              current[p] = infosets_[p][info].sequences[c];
              walk(node.children[c], current, reach);
            }
            current[p] = saved;
            return;
          }
        }
      };
  std::vector<std::size_t> current(n, 0);
  walk(tree.root, current, Rat(1));

  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t d = sequences_[p].size();
    std::vector<RatVec> eq_rows{RatVec::unit(d, 0)};
    std::vector<Rat> eq_rhs{Rat(1)};
    for (const auto& is : infosets_[p]) {
      RatVec row(d);
      row[is.parent] = -1;
      for (auto s : is.sequences) row[s] = 1;
      eq_rows.push_back(std::move(row));
      eq_rhs.push_back(0);
    }
    std::vector<RatVec> ineq_rows;
    for (std::size_t s = 0; s < d; ++s) ineq_rows.push_back(-RatVec::unit(d, s));
    treeplexes_.emplace_back(RatMat::from_rows(ineq_rows, d), RatVec(d),
                             RatMat::from_rows(eq_rows, d), RatVec(std::move(eq_rhs)));
  }
}

RatVec ExtensiveFormGame::raw_gradient(std::size_t p, const std::vector<RatVec>& profile) const {
  RatVec g(sequences_[p].size());
  for (const auto& e : entries_) {
    if (sgn(e.payoffs[p]) == 0) continue;
    Rat w = e.payoffs[p];
    for (std::size_t q = 0; q < num_players_ && sgn(w) != 0; ++q)
      if (q != p) w *= profile[q][e.sequences[q]];
    if (sgn(w) != 0) g[e.sequences[p]] += w;
  }
  return g;
}

std::size_t ExtensiveFormGame::count_pure_strategies(std::size_t p, std::size_t cap) const {
  const auto& seqs = sequences_.at(p);
  const auto& infos = infosets_[p];
  // Infosets are created parent-first, so a reverse sweep sees children first.
  std::vector<std::size_t> below(seqs.size(), 1);
  for (std::size_t i = infos.size(); i-- > 0;) {
    std::size_t sum = 0;
    for (auto s : infos[i].sequences) sum = std::min(sum + below[s], cap + 1);
    below[infos[i].parent] = saturating_mul(below[infos[i].parent], sum, cap);
  }
  return below[0];
}

std::vector<RatVec> ExtensiveFormGame::pure_strategies(std::size_t p, std::size_t cap) const {
  EAHKIT_CHECK(count_pure_strategies(p, cap) <= cap, ErrorCode::kInstanceTooLarge,
               "player " + std::to_string(p) + " has more than " + std::to_string(cap) +
                   " pure strategies");
  const auto& seqs = sequences_[p];
  const auto& infos = infosets_[p];
  std::vector<std::vector<std::size_t>> children(seqs.size());
  for (std::size_t i = 0; i < infos.size(); ++i) children[infos[i].parent].push_back(i);

  // Each plan is the set of sequences played with probability one.
  using Plan = std::vector<std::size_t>;
  std::function<std::vector<Plan>(std::size_t)> plans = [&](std::size_t sigma) {
    std::vector<Plan> acc{Plan{sigma}};
    for (auto info : children[sigma]) {
      std::vector<Plan> options;
      for (auto s : infos[info].sequences)
        for (auto& sub : plans(s)) options.push_back(std::move(sub));
      std::vector<Plan> next;
      for (const auto& a : acc)
        for (const auto& o : options) {
          Plan merged = a;
          merged.insert(merged.end(), o.begin(), o.end());
          next.push_back(std::move(merged));
        }
      acc = std::move(next);
    }
    return acc;
  };
  std::vector<RatVec> out;
  for (const auto& plan : plans(0)) {
    RatVec x(seqs.size());
    for (auto s : plan) x[s] = 1;
    out.push_back(std::move(x));
  }
  return out;
}

EncodingLength ExtensiveFormGame::payoff_complexity() const {
  EncodingLength best;
  for (const auto& e : entries_)
    for (const auto& x : e.payoffs) best = std::max(best, encoding_length(x));
  return best;
}

std::string ExtensiveFormGame::coordinate_name(std::size_t p, std::size_t i) const {
  const auto& seqs = sequences_.at(p);
  EAHKIT_CHECK(i < seqs.size(), ErrorCode::kInvalidArgument, "sequence out of range");
  if (i == 0) return "root";
  return infosets_[p][seqs[i].infoset].label + ":" + seqs[i].action;
}

// ---------------------------------------------------------------------------
// Reference instances

NormalFormGame prisoners_dilemma() {
  return NormalFormGame({2, 2}, {{-1, -3, 0, -2}, {-1, 0, -3, -2}});
}

NormalFormGame matching_pennies() {
  return NormalFormGame({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}});
}

GameTree kuhn_poker_tree() {
  GameTree t;
  t.num_players = 2;
  auto add = [&t](TreeNode node) {
    t.nodes.push_back(std::move(node));
    return t.nodes.size() - 1;
  };
  auto terminal = [&](const std::string& id, long p0) {
    TreeNode n;
    n.id = id;
    n.payoffs = {Rat(p0), Rat(-p0)};
    return add(std::move(n));
  };
  auto decision = [&](const std::string& id, std::size_t player, const std::string& info,
                      std::vector<std::string> actions, std::vector<std::size_t> children) {
    TreeNode n;
    n.id = id;
    n.kind = TreeNode::Kind::kDecision;
    n.player = player;
    n.infoset = info;
    n.actions = std::move(actions);
    n.children = std::move(children);
    return add(std::move(n));
  };

  const std::string cards = "JQK";
  TreeNode root;
  root.id = "deal";
  root.kind = TreeNode::Kind::kChance;
  t.nodes.push_back(root);
  for (std::size_t c0 = 0; c0 < 3; ++c0)
    for (std::size_t c1 = 0; c1 < 3; ++c1) {
      if (c0 == c1) continue;
      const std::string h{cards[c0], cards[c1]};
      const long win = c0 > c1 ? 1 : -1;
      const std::string i0 = std::string(1, cards[c0]);
      const std::string i1 = std::string(1, cards[c1]);
      const auto kb_fold = terminal(h + "/kbf", -1);
      const auto kb_call = terminal(h + "/kbc", 2 * win);
      const auto kb = decision(h + "/kb", 0, i0 + "kb", {"fold", "call"}, {kb_fold, kb_call});
      const auto kk = terminal(h + "/kk", win);
      const auto k = decision(h + "/k", 1, i1 + "k", {"check", "bet"}, {kk, kb});
      const auto b_fold = terminal(h + "/bf", 1);
      const auto b_call = terminal(h + "/bc", 2 * win);
      const auto b = decision(h + "/b", 1, i1 + "b", {"fold", "call"}, {b_fold, b_call});
      const auto first = decision(h, 0, i0, {"check", "bet"}, {k, b});
      t.nodes[0].actions.push_back(h);
      t.nodes[0].probabilities.push_back(frac(1, 6));
      t.nodes[0].children.push_back(first);
    }
  return t;
}

}  // namespace eahkit
