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

#include "eahkit/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "eahkit/error.hpp"

namespace eahkit {

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

class Lexer {
 public:
  explicit Lexer(std::istream& is) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
      ++n;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back({tok, n});
    }
    last_line_ = n;
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const {
    static const std::string kEof;
    return done() ? kEof : tokens_[pos_].text;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const std::size_t line = done() ? last_line_ : tokens_[pos_].line;
    std::string got = done() ? "end of input" : "'" + tokens_[pos_].text + "'";
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": expected " + what + ", got " + got);
  }

  std::string word(const std::string& what = "a word") {
    if (done()) fail(what);
    return tokens_[pos_++].text;
  }
  void expect(const std::string& kw) {
    if (peek() != kw) fail("'" + kw + "'");
    ++pos_;
  }
  bool accept(const std::string& kw) {
    if (peek() != kw) return false;
    ++pos_;
    return true;
  }
  std::size_t count(const std::string& what = "a nonnegative integer") {
    if (done()) fail(what);
    const std::string& t = tokens_[pos_].text;
    if (t.empty() || t.size() > 9 || t.find_first_not_of("0123456789") != std::string::npos) fail(what);
    ++pos_;
    return std::stoul(t);
  }
  Rat rat() {
    if (done()) fail("a rational");
    try {
      Rat r = parse_rat(tokens_[pos_].text);
      ++pos_;
      return r;
    } catch (const Error&) {
      fail("a rational");
    }
  }
  RatVec vec(std::size_t n) {
    RatVec v(n);
    for (auto& x : v) x = rat();
    return v;
  }
  void finish() {
    if (!done()) fail("end of input");
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

void put(std::ostream& os, const RatVec& v) {
  for (const auto& x : v) os << ' ' << to_string(x);
}

// ineq/eq rows until "end"; returns the system in `dim` coordinates.
HPolytope read_rows(Lexer& lx, std::size_t dim) {
  std::vector<RatVec> ineq, eq;
  std::vector<Rat> ineq_rhs, eq_rhs;
  for (;;) {
    if (lx.accept("end")) break;
    if (lx.accept("ineq")) {
      ineq.push_back(lx.vec(dim));
      lx.expect("<=");
      ineq_rhs.push_back(lx.rat());
    } else if (lx.accept("eq")) {
      eq.push_back(lx.vec(dim));
      lx.expect("=");
      eq_rhs.push_back(lx.rat());
    } else {
      lx.fail("'ineq', 'eq' or 'end'");
    }
  }
  return HPolytope(RatMat::from_rows(ineq, dim), RatVec(ineq_rhs), RatMat::from_rows(eq, dim),
                   RatVec(eq_rhs));
}

void write_rows(std::ostream& os, const HPolytope& p) {
  const auto& sys = p.system();
  for (std::size_t i = 0; i < sys.ineq_lhs.rows(); ++i) {
    os << "ineq";
    put(os, sys.ineq_lhs.row(i));
    os << " <= " << to_string(sys.ineq_rhs[i]) << '\n';
  }
  for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i) {
    os << "eq";
    put(os, sys.eq_lhs.row(i));
    os << " = " << to_string(sys.eq_rhs[i]) << '\n';
  }
  os << "end\n";
}

HPolytope polytope_block(Lexer& lx) {
  lx.expect("polytope");
  lx.expect("dim");
  const std::size_t dim = lx.count();
  if (dim == 0) lx.fail("a positive dimension");
  return read_rows(lx, dim);
}

NormalFormGame nfg_block(Lexer& lx) {
  lx.expect("nfg");
  lx.expect("players");
  const std::size_t n = lx.count();
  if (n == 0) lx.fail("at least one player");
  lx.expect("actions");
  std::vector<std::size_t> actions(n);
  std::size_t profiles = 1;
  for (auto& a : actions) {
    a = lx.count();
    if (a == 0) lx.fail("a positive action count");
    profiles *= a;
    if (profiles > (1u << 24)) lx.fail("a smaller payoff tensor");
  }
  std::vector<std::vector<Rat>> payoffs(n);
  for (std::size_t p = 0; p < n; ++p) {
    lx.expect("payoffs");
    if (lx.count("player index") != p) lx.fail("payoffs of player " + std::to_string(p));
    const RatVec v = lx.vec(profiles);
    payoffs[p].assign(v.begin(), v.end());
  }
  lx.expect("end");
  try {
    return NormalFormGame(std::move(actions), std::move(payoffs));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

GameTree efg_block(Lexer& lx) {
  lx.expect("efg");
  lx.expect("players");
  GameTree tree;
  tree.num_players = lx.count();
  if (tree.num_players == 0) lx.fail("at least one player");
  lx.expect("root");
  const std::string root = lx.word("a root id");
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::string>> child_ids;
  while (!lx.accept("end")) {
    lx.expect("node");
    TreeNode node;
    node.id = lx.word("a node id");
    if (index.count(node.id)) lx.fail("a fresh node id (duplicate '" + node.id + "')");
    std::vector<std::string> kids;
    const std::string kind = lx.word("a node kind");
    if (kind == "terminal") {
      node.kind = TreeNode::Kind::kTerminal;
      node.payoffs = std::vector<Rat>(tree.num_players);
      for (auto& u : node.payoffs) u = lx.rat();
    } else if (kind == "chance") {
      node.kind = TreeNode::Kind::kChance;
      const std::size_t k = lx.count("a child count");
      for (std::size_t i = 0; i < k; ++i) {
        node.actions.push_back(lx.word("an action label"));
        kids.push_back(lx.word("a child id"));
        node.probabilities.push_back(lx.rat());
      }
    } else if (kind == "decision") {
      node.kind = TreeNode::Kind::kDecision;
      node.player = lx.count("a player index");
      node.infoset = lx.word("an information set label");
      const std::size_t k = lx.count("a child count");
      for (std::size_t i = 0; i < k; ++i) {
        node.actions.push_back(lx.word("an action label"));
        kids.push_back(lx.word("a child id"));
      }
    } else {
      throw Error(ErrorCode::kParse, "unknown node kind '" + kind + "' for node '" + node.id + "'");
    }
    index.emplace(node.id, tree.nodes.size());
    tree.nodes.push_back(std::move(node));
    child_ids.push_back(std::move(kids));
  }
  auto resolve = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::kParse, "reference to unknown node '" + id + "'");
    return it->second;
  };
  tree.root = resolve(root);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    for (const auto& id : child_ids[i]) tree.nodes[i].children.push_back(resolve(id));
  return tree;
}

void write_profile(std::ostream& os, const PureProfile& s) {
  for (std::size_t p = 0; p < s.strategies.size(); ++p) {
    if (p) os << " |";
    put(os, s.strategies[p]);
  }
}

std::string profile_comment(const PolyhedralGame& game, const PureProfile& s) {
  std::string out = "#";
  for (std::size_t p = 0; p < s.strategies.size(); ++p) {
    if (p) out += " |";
    for (std::size_t i = 0; i < s.strategies[p].size(); ++i)
      if (sgn(s.strategies[p][i]) != 0) out += " " + game.coordinate_name(p, i);
  }
  return out;
}

PureProfile read_profile(Lexer& lx, const std::vector<std::size_t>& dims) {
  PureProfile s;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    if (p) lx.expect("|");
    s.strategies.push_back(lx.vec(dims[p]));
  }
  return s;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HPolytope read_polytope(std::istream& is) {
  Lexer lx(is);
  HPolytope p = polytope_block(lx);
  lx.finish();
  return p;
}

void write_polytope(std::ostream& os, const HPolytope& p) {
  os << "polytope\ndim " << p.dim() << '\n';
  write_rows(os, p);
}

std::vector<DeviationSet> read_deviations(std::istream& is) {
  Lexer lx(is);
  std::vector<DeviationSet> out;
  do {
    lx.expect("deviations");
    lx.expect("player");
    const std::size_t player = lx.count();
    lx.expect("matrix_dim");
    const std::size_t d = lx.count();
    if (d == 0 || d > 4096) lx.fail("a matrix dimension between 1 and 4096");
    std::size_t aux = 0;
    if (lx.accept("aux")) aux = lx.count();
    DeviationSet dev{player, d, read_rows(lx, d * d + aux), false};
    dev.includes_identity = contains_identity(dev);
    out.push_back(std::move(dev));
  } while (!lx.done());
  return out;
}

void write_deviations(std::ostream& os, const DeviationSet& dev) {
  os << "# phi(x) = B x. Coordinate b*d + a holds B[b][a], the weight of source a in target b.\n"
     << "deviations\nplayer " << dev.player << "\nmatrix_dim " << dev.matrix_dim << '\n';
  if (dev.aux_dim()) os << "aux " << dev.aux_dim() << '\n';
  write_rows(os, dev.polytope);
}

NormalFormGame read_nfg(std::istream& is) {
  Lexer lx(is);
  NormalFormGame g = nfg_block(lx);
  lx.finish();
  return g;
}

void write_nfg(std::ostream& os, const NormalFormGame& g) {
  os << "nfg\nplayers " << g.num_players() << "\nactions";
  for (auto a : g.actions()) os << ' ' << a;
  os << '\n';
  for (std::size_t p = 0; p < g.num_players(); ++p) {
    os << "payoffs " << p;
    for (const auto& u : g.payoff_tensor(p)) os << ' ' << to_string(u);
    os << '\n';
  }
  os << "end\n";
}

GameTree read_efg(std::istream& is) {
  Lexer lx(is);
  GameTree t = efg_block(lx);
  lx.finish();
  return t;
}

void write_efg(std::ostream& os, const GameTree& tree) {
  os << "efg\nplayers " << tree.num_players << "\nroot " << tree.nodes.at(tree.root).id << '\n';
  for (const auto& node : tree.nodes) {
    os << "node " << node.id;
    switch (node.kind) {
      case TreeNode::Kind::kTerminal:
        os << " terminal";
        for (const auto& u : node.payoffs) os << ' ' << to_string(u);
        break;
      case TreeNode::Kind::kChance:
        os << " chance " << node.children.size();
        for (std::size_t i = 0; i < node.children.size(); ++i)
          os << "  " << node.actions[i] << ' ' << tree.nodes.at(node.children[i]).id << ' '
             << to_string(node.probabilities[i]);
        break;
      case TreeNode::Kind::kDecision:
        os << " decision " << node.player << ' ' << node.infoset << ' ' << node.children.size();
        for (std::size_t i = 0; i < node.children.size(); ++i)
          os << "  " << node.actions[i] << ' ' << tree.nodes.at(node.children[i]).id;
        break;
    }
    os << '\n';
  }
  os << "end\n";
}

std::unique_ptr<PolyhedralGame> read_game(std::istream& is) {
  Lexer lx(is);
  std::unique_ptr<PolyhedralGame> g;
  if (lx.peek() == "nfg") {
    g = std::make_unique<NormalFormGame>(nfg_block(lx));
  } else if (lx.peek() == "efg") {
    GameTree tree = efg_block(lx);
    lx.finish();
    return std::make_unique<ExtensiveFormGame>(tree);
  } else {
    lx.fail("'nfg' or 'efg'");
  }
  lx.finish();
  return g;
}

RatMat read_matrix(std::istream& is) {
  Lexer lx(is);
  lx.expect("matrix");
  const std::size_t m = lx.count(), n = lx.count();
  if (m == 0 || n == 0 || m * n > (1u << 24)) lx.fail("positive matrix dimensions");
  RatMat a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = lx.rat();
  lx.expect("end");
  lx.finish();
  return a;
}

void write_matrix(std::ostream& os, const RatMat& m) {
  os << "matrix " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    put(os, m.row(i));
    os << '\n';
  }
  os << "end\n";
}

void write_equilibrium(std::ostream& os, const PolyhedralGame& game, const MixtureEquilibrium& eq) {
  os << "equilibrium\nplayers " << game.num_players() << "\ndims";
  for (std::size_t p = 0; p < game.num_players(); ++p) os << ' ' << game.strategy_dim(p);
  os << "\nsupport " << eq.support.size() << '\n';
  for (const auto& [s, w] : eq.support) {
    os << profile_comment(game, s) << "\nprofile " << to_string(w);
    write_profile(os, s);
    os << '\n';
  }
  os << "certificate " << eq.certificate.size() << '\n';
  for (const auto& c : eq.certificate) {
    os << "benefit " << c.player << ' ' << to_string(c.benefit) << " deviation " << c.deviation.size();
    put(os, c.deviation);
    os << '\n';
  }
  os << "end\n";
}

MixtureEquilibrium read_equilibrium(std::istream& is) {
  Lexer lx(is);
  lx.expect("equilibrium");
  lx.expect("players");
  const std::size_t n = lx.count();
  lx.expect("dims");
  std::vector<std::size_t> dims(n);
  for (auto& d : dims) d = lx.count();
  lx.expect("support");
  const std::size_t k = lx.count();
  MixtureEquilibrium eq;
  for (std::size_t i = 0; i < k; ++i) {
    lx.expect("profile");
    Rat w = lx.rat();
    eq.support.emplace_back(read_profile(lx, dims), std::move(w));
  }
  if (lx.accept("certificate")) {
    const std::size_t m = lx.count();
    for (std::size_t i = 0; i < m; ++i) {
      lx.expect("benefit");
      DeviationBenefit b;
      b.player = lx.count("a player index");
      b.benefit = lx.rat();
      lx.expect("deviation");
      b.deviation = lx.vec(lx.count());
      eq.certificate.push_back(std::move(b));
    }
  }
  lx.expect("end");
  lx.finish();
  return eq;
}

void write_brute_force(std::ostream& os, const PolyhedralGame& game, const BruteForceReport& report) {
  os << "bruteforce\nprofiles " << report.profiles.size() << "\nfeasible "
     << (report.feasible ? "yes" : "no") << '\n';
  for (std::size_t i = 0; i < report.profiles.size(); ++i) {
    os << "profile " << (report.feasible ? to_string(report.distribution[i]) : "0");
    write_profile(os, report.profiles[i]);
    os << '\n';
  }
  os << "end\n";
  if (report.equilibrium) write_equilibrium(os, game, *report.equilibrium);
}

}  // namespace eahkit
