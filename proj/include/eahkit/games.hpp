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

// Polyhedral games: every player p picks x_p from a polytope A_p and the
// utilities are multilinear in (x_1, ..., x_n). Normal-form games use
// simplices, extensive-form games use sequence-form treeplexes.

#ifndef EAHKIT_GAMES_HPP_
#define EAHKIT_GAMES_HPP_

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "eahkit/polytope.hpp"
#include "eahkit/rational.hpp"

namespace eahkit {

/// One vertex of A_p per player.
struct PureProfile {
  std::vector<RatVec> strategies;

  bool operator==(const PureProfile& o) const { return strategies == o.strategies; }
  bool operator<(const PureProfile& o) const { return strategies < o.strategies; }
};

class PolyhedralGame {
 public:
  virtual ~PolyhedralGame() = default;

  virtual std::size_t num_players() const = 0;
  virtual const HPolytope& strategy_set(std::size_t p) const = 0;
  std::size_t strategy_dim(std::size_t p) const { return strategy_set(p).dim(); }

  /// g_p(x_{-p}): u_p(x) = g_p(x_{-p}) . x_p. Entry p of `profile` is not
  /// read but must have the right size. Every other entry must lie in its
  /// strategy set (checked exactly).
  RatVec gradient(std::size_t p, const std::vector<RatVec>& profile) const;
  Rat utility(std::size_t p, const std::vector<RatVec>& profile) const;

  /// Number of vertices of A_p, saturating at `cap` + 1.
  virtual std::size_t count_pure_strategies(std::size_t p, std::size_t cap) const = 0;
  /// Vertices of A_p in a fixed order. Throws InstanceTooLarge above `cap`.
  virtual std::vector<RatVec> pure_strategies(std::size_t p, std::size_t cap) const = 0;
  /// Largest encoding length of a single utility coefficient.
  virtual EncodingLength payoff_complexity() const = 0;
  /// Human-readable name of a coordinate of x_p.
  virtual std::string coordinate_name(std::size_t p, std::size_t i) const = 0;

 protected:
  virtual RatVec raw_gradient(std::size_t p, const std::vector<RatVec>& profile) const = 0;
};

/// Strategic-form game. Payoff tensors are stored row-major over joint
/// actions with the last player's action varying fastest.
class NormalFormGame final : public PolyhedralGame {
 public:
  NormalFormGame(std::vector<std::size_t> actions, std::vector<std::vector<Rat>> payoffs);

  std::size_t num_players() const override { return actions_.size(); }
  const HPolytope& strategy_set(std::size_t p) const override { return simplices_.at(p); }
  std::size_t count_pure_strategies(std::size_t p, std::size_t cap) const override;
  std::vector<RatVec> pure_strategies(std::size_t p, std::size_t cap) const override;
  EncodingLength payoff_complexity() const override;
  std::string coordinate_name(std::size_t p, std::size_t i) const override;

  const std::vector<std::size_t>& actions() const { return actions_; }
  std::size_t num_profiles() const { return payoffs_.empty() ? 0 : payoffs_[0].size(); }
  std::size_t flat_index(const std::vector<std::size_t>& joint) const;
  std::vector<std::size_t> joint_actions(std::size_t flat) const;
  const Rat& payoff(std::size_t p, const std::vector<std::size_t>& joint) const;
  const std::vector<Rat>& payoff_tensor(std::size_t p) const { return payoffs_.at(p); }

 protected:
  RatVec raw_gradient(std::size_t p, const std::vector<RatVec>& profile) const override;

 private:
  std::vector<std::size_t> actions_;
  std::vector<std::vector<Rat>> payoffs_;
  std::vector<HPolytope> simplices_;
};

/// Payoffs with numerators uniform in [-8, 8] and denominators in {1, 2, 4}.
NormalFormGame random_nfg(const std::vector<std::size_t>& actions, std::mt19937_64& rng);

struct TreeNode {
  enum class Kind { kDecision, kChance, kTerminal };

  std::string id;
  Kind kind = Kind::kTerminal;
  std::size_t player = 0;             // decision nodes
  std::string infoset;                // decision nodes; labels are per player
  std::vector<std::string> actions;   // edge labels, one per child
  std::vector<Rat> probabilities;     // chance nodes, one per child
  std::vector<std::size_t> children;  // indices into GameTree::nodes
  std::vector<Rat> payoffs;           // terminal nodes, one per player
};

struct GameTree {
  std::size_t num_players = 0;
  std::vector<TreeNode> nodes;
  std::size_t root = 0;
};

/// Sequence 0 of every player is the empty sequence.
struct Sequence {
  std::size_t infoset = 0;  // meaningless for the empty sequence
  std::string action;
  std::size_t parent = 0;   // parent sequence, 0 for root infosets
};

struct Infoset {
  std::string label;
  std::size_t parent = 0;              // parent sequence
  std::vector<std::size_t> sequences;  // one per action
};

/// u_p summed over terminals reaching this tuple of sequences, chance
/// probabilities already multiplied in.
struct PayoffEntry {
  std::vector<std::size_t> sequences;
  std::vector<Rat> payoffs;
};

class ExtensiveFormGame final : public PolyhedralGame {
 public:
  /// Validates the tree and derives the sequence form. Throws MalformedTree
  /// or ImperfectRecall.
  explicit ExtensiveFormGame(const GameTree& tree);

  std::size_t num_players() const override { return num_players_; }
  const HPolytope& strategy_set(std::size_t p) const override { return treeplexes_.at(p); }
  std::size_t count_pure_strategies(std::size_t p, std::size_t cap) const override;
  std::vector<RatVec> pure_strategies(std::size_t p, std::size_t cap) const override;
  EncodingLength payoff_complexity() const override;
  std::string coordinate_name(std::size_t p, std::size_t i) const override;

  const std::vector<Sequence>& sequences(std::size_t p) const { return sequences_.at(p); }
  const std::vector<Infoset>& infosets(std::size_t p) const { return infosets_.at(p); }
  const std::vector<PayoffEntry>& payoff_entries() const { return entries_; }

 protected:
  RatVec raw_gradient(std::size_t p, const std::vector<RatVec>& profile) const override;

 private:
  std::size_t num_players_ = 0;
  std::vector<std::vector<Sequence>> sequences_;
  std::vector<std::vector<Infoset>> infosets_;
  std::vector<HPolytope> treeplexes_;
  std::vector<PayoffEntry> entries_;
};

/// Small reference instances. Action 0 is cooperate / heads.
NormalFormGame prisoners_dilemma();
NormalFormGame matching_pennies();
/// Three-card Kuhn poker with antes of 1 and bets of 1; 13 sequences per player.
GameTree kuhn_poker_tree();

}  // namespace eahkit

#endif  // EAHKIT_GAMES_HPP_
