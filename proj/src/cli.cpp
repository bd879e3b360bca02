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

#include "eahkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "eahkit/error.hpp"
#include "eahkit/io.hpp"
#include "eahkit/phi.hpp"
#include "eahkit/saddle.hpp"
#include "eahkit/verify.hpp"

namespace eahkit::cli {

namespace {

struct RunConfig {
  std::string game;
  std::string phi;
  std::string out;
  std::string equilibrium;
  std::string matrix;
  bool transcript = false;
  std::optional<long> r_exp;
  std::optional<long> eps_exp;
  std::optional<int> escalation_cap;
  std::uint64_t seed = 0;
};

// "random:2x3x2" draws a normal-form game from --seed; anything else is a path.
std::unique_ptr<PolyhedralGame> load_game(const RunConfig& cfg) {
  const std::string prefix = "random:";
  if (cfg.game.rfind(prefix, 0) == 0) {
    std::vector<std::size_t> actions;
    std::stringstream ss(cfg.game.substr(prefix.size()));
    std::string part;
    while (std::getline(ss, part, 'x')) {
      if (part.empty() || part.size() > 3 || part.find_first_not_of("0123456789") != std::string::npos ||
          std::stoul(part) == 0)
        throw Error(ErrorCode::kParse, "bad random game shape '" + cfg.game + "'");
      actions.push_back(std::stoul(part));
    }
    if (actions.empty()) throw Error(ErrorCode::kParse, "bad random game shape '" + cfg.game + "'");
    std::mt19937_64 rng(cfg.seed);
    return std::make_unique<NormalFormGame>(random_nfg(actions, rng));
  }
  std::istringstream is(read_file(cfg.game));
  return read_game(is);
}

std::vector<DeviationSet> load_deviations(const PolyhedralGame& game, const std::string& phi) {
  const std::size_t n = game.num_players();
  std::vector<DeviationSet> devs;
  if (phi == "swap") {
    const auto* nfg = dynamic_cast<const NormalFormGame*>(&game);
    EAHKIT_CHECK(nfg != nullptr, ErrorCode::kInvalidArgument,
                 "swap deviations need simplex strategy sets; use constant or file: for trees");
    for (std::size_t p = 0; p < n; ++p) devs.push_back(make_swap_deviations(nfg->actions()[p], p));
  } else if (phi == "constant") {
    for (std::size_t p = 0; p < n; ++p)
      devs.push_back(make_constant_deviations(game.strategy_set(p), std::nullopt, p));
  } else if (phi.rfind("file:", 0) == 0) {
    std::istringstream is(read_file(phi.substr(5)));
    auto blocks = read_deviations(is);
    std::vector<std::optional<DeviationSet>> by_player(n);
    for (auto& b : blocks) {
      if (b.player >= n || by_player[b.player])
        throw Error(ErrorCode::kParse, "deviation file has a duplicate or out-of-range player " +
                                           std::to_string(b.player));
      by_player[b.player] = std::move(b);
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (!by_player[p])
        throw Error(ErrorCode::kParse, "deviation file has no block for player " + std::to_string(p));
      devs.push_back(std::move(*by_player[p]));
    }
  } else {
    throw Error(ErrorCode::kParse, "--phi must be swap, constant or file:<path>, got '" + phi + "'");
  }
  return devs;
}

SaddleConfig saddle_config(const RunConfig& cfg, SaddleConfig base) {
  if (cfg.r_exp) base.r_exp_cap = *cfg.r_exp;
  if (cfg.eps_exp) base.eps_exp_cap = *cfg.eps_exp;
  if (cfg.escalation_cap) base.escalation_cap = *cfg.escalation_cap;
  return base;
}

// Writes to --out when given, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      EAHKIT_CHECK(file_.good(), ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// --transcript goes next to --out, or to the error stream.
std::unique_ptr<Sink> transcript_sink(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.transcript) return nullptr;
  return std::make_unique<Sink>(cfg.out.empty() ? "" : cfg.out + ".transcript", err);
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto game = load_game(cfg);
  const auto devs = load_deviations(*game, cfg.phi);
  PhiOptions opts;
  opts.saddle = saddle_config(cfg, opts.saddle);
  auto tsink = transcript_sink(cfg, err);
  if (tsink) opts.saddle.transcript = &**tsink;
  const PhiSolution sol = solve_phi_equilibrium(*game, devs, opts);
  out << "support " << sol.equilibrium.support.size() << " N " << sol.n_bound << '\n';
  Sink sink(cfg.out, out);
  write_equilibrium(*sink, *game, sol.equilibrium);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto game = load_game(cfg);
  const auto devs = load_deviations(*game, cfg.phi);
  std::istringstream is(read_file(cfg.equilibrium));
  const MixtureEquilibrium eq = read_equilibrium(is);
  const VerifyResult r = verify_equilibrium(*game, devs, eq.support);
  if (!r.problem.empty()) {
    out << "invalid " << r.problem << '\n';
    return kExitViolation;
  }
  if (r.violation) {
    out << "violation player " << r.violation->player << " benefit " << to_string(r.violation->benefit)
        << " deviation";
    for (const auto& x : r.violation->deviation) out << ' ' << to_string(x);
    out << '\n';
    return kExitViolation;
  }
  out << "pass\n";
  return kExitOk;
}

int cmd_bruteforce(const RunConfig& cfg, std::ostream& out) {
  const auto game = load_game(cfg);
  const auto devs = load_deviations(*game, cfg.phi);
  const BruteForceReport report = brute_force_equilibrium(*game, devs);
  out << "profiles " << report.profiles.size() << " feasible " << (report.feasible ? "yes" : "no") << '\n';
  Sink sink(cfg.out, out);
  write_brute_force(*sink, *game, report);
  return kExitOk;
}

int cmd_saddle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::istringstream is(read_file(cfg.matrix));
  const RatMat a = read_matrix(is);
  const Rat value = matrix_game_value(a);
  const RatMat shifted = shift_to_zero(a, value);
  const HPolytope x_set = with_anchor(HPolytope::simplex(a.rows()));
  const HPolytope y_set = with_anchor(HPolytope::simplex(a.cols()));
  SaddleConfig sc = saddle_config(cfg, {});
  auto tsink = transcript_sink(cfg, err);
  if (tsink) sc.transcript = &**tsink;
  const auto phi = std::max(y_set.facet_complexity(), encoding_length(shifted));
  const SaddleSolution sol = solve_saddle(vertex_best_response_oracle(shifted, x_set), y_set, phi, sc);
  out << "value " << to_string(value) << " support " << sol.mixture.size() << " ger_calls "
      << sol.stats.ger_calls << '\n';
  Sink sink(cfg.out, out);
  std::ostream& os = *sink;
  os << "saddle\nrows " << a.rows() << "\ncols " << a.cols() << "\nvalue " << to_string(value)
     << "\nsupport " << sol.mixture.size() << '\n';
  for (const auto& [resp, w] : sol.mixture) {
    const auto& x = std::any_cast<const RatVec&>(resp.handle);
    os << "response " << to_string(w);
    for (std::size_t i = 0; i < a.rows(); ++i) os << ' ' << to_string(x[i]);
    os << '\n';
  }
  os << "mixed_row";
  for (std::size_t j = 0; j < a.cols(); ++j) os << ' ' << to_string(sol.mixed_row[j]);
  os << "\nger_calls " << sol.stats.ger_calls << "\nescalations " << sol.stats.escalations << "\nend\n";
  return kExitOk;
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
  const auto game = load_game(cfg);
  const std::size_t n = game->num_players();
  std::size_t big_n = 0;
  out << "players " << n << '\n';
  for (std::size_t p = 0; p < n; ++p) {
    const auto& a = game->strategy_set(p);
    const std::size_t pure = game->count_pure_strategies(p, kDefaultBruteForceCap);
    out << "player " << p << " dim " << a.dim() << " facet_complexity " << a.facet_complexity().bits
        << " pure_strategies ";
    if (pure > kDefaultBruteForceCap) {
      out << '>' << kDefaultBruteForceCap;
    } else {
      out << pure;
    }
    out << '\n';
    big_n += a.dim() * a.dim();
  }
  out << "N " << big_n << "\npayoff_complexity " << game->payoff_complexity().bits << '\n';
  if (!cfg.phi.empty()) {
    const auto devs = load_deviations(*game, cfg.phi);
    for (const auto& d : devs)
      out << "deviations " << d.player << " dim " << d.polytope.dim() << " facet_complexity "
          << d.polytope.facet_complexity().bits << " identity " << (contains_identity(d) ? "yes" : "no")
          << '\n';
    const MetaGame meta = build_meta_game(*game, devs);
    out << "Y dim " << meta.y_set.dim() << " facet_complexity " << meta.y_set.facet_complexity().bits
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact saddle points and Phi-equilibria in rational arithmetic", "eahkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_tuning = [&](CLI::App* sub) {
    sub->add_option("--ellipsoid-R-exp", cfg.r_exp, "cap on log2 of the initial ellipsoid radius");
    sub->add_option("--ellipsoid-eps-exp", cfg.eps_exp, "cap on log2(1/eps) of the volume threshold");
    sub->add_option("--escalation-cap", cfg.escalation_cap, "reruns with doubled caps")->check(CLI::NonNegativeNumber);
    sub->add_flag("--transcript", cfg.transcript, "dump ellipsoid transcripts to <out>.transcript or stderr");
  };
  auto add_game = [&](CLI::App* sub) {
    sub->add_option("--game", cfg.game, "game file, or random:<d1>x<d2>... with --seed")->required();
    sub->add_option("--seed", cfg.seed, "seed for random: games");
  };

  auto* solve = app.add_subcommand("solve", "compute an exact Phi-equilibrium");
  add_game(solve);
  solve->add_option("--phi", cfg.phi, "swap, constant or file:<path>")->required();
  solve->add_option("--out", cfg.out, "equilibrium file (default stdout)");
  add_tuning(solve);

  auto* verify = app.add_subcommand("verify", "check an equilibrium file exactly");
  add_game(verify);
  verify->add_option("--phi", cfg.phi, "swap, constant or file:<path>")->required();
  verify->add_option("--equilibrium", cfg.equilibrium, "equilibrium file")->required();

  auto* brute = app.add_subcommand("bruteforce", "solve over all pure profiles (EAHKIT_MAX_BRUTE caps them)");
  add_game(brute);
  brute->add_option("--phi", cfg.phi, "swap, constant or file:<path>")->required();
  brute->add_option("--out", cfg.out, "report file (default stdout)");

  auto* saddle = app.add_subcommand("saddle", "zero-sum matrix game with a vertex best-response oracle");
  saddle->add_option("--matrix", cfg.matrix, "matrix file")->required();
  saddle->add_option("--out", cfg.out, "solution file (default stdout)");
  add_tuning(saddle);

  auto* info = app.add_subcommand("info", "dimensions, N and facet complexities");
  add_game(info);
  info->add_option("--phi", cfg.phi, "swap, constant or file:<path>");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*solve) return cmd_solve(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out);
    if (*brute) return cmd_bruteforce(cfg, out);
    if (*saddle) return cmd_saddle(cfg, out, err);
    return cmd_info(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kParse ? kExitParse : kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace eahkit::cli
