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

// Text formats. All of them are whitespace-separated token streams with
// '#' comments; see docs/formats.md for the grammars. Parse failures throw
// Error(kParse) with the line number.

#ifndef EAHKIT_IO_HPP_
#define EAHKIT_IO_HPP_

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "eahkit/games.hpp"
#include "eahkit/phi.hpp"
#include "eahkit/polytope.hpp"
#include "eahkit/saddle.hpp"
#include "eahkit/verify.hpp"

namespace eahkit {

HPolytope read_polytope(std::istream& is);
void write_polytope(std::ostream& os, const HPolytope& p);

/// One or more `deviations` blocks.
std::vector<DeviationSet> read_deviations(std::istream& is);
void write_deviations(std::ostream& os, const DeviationSet& dev);

NormalFormGame read_nfg(std::istream& is);
void write_nfg(std::ostream& os, const NormalFormGame& g);

GameTree read_efg(std::istream& is);
void write_efg(std::ostream& os, const GameTree& tree);

/// Either format, chosen by the leading keyword.
std::unique_ptr<PolyhedralGame> read_game(std::istream& is);

RatMat read_matrix(std::istream& is);
void write_matrix(std::ostream& os, const RatMat& m);

void write_equilibrium(std::ostream& os, const PolyhedralGame& game, const MixtureEquilibrium& eq);
/// Reads the support and certificate; the certificate is informational only.
MixtureEquilibrium read_equilibrium(std::istream& is);

void write_brute_force(std::ostream& os, const PolyhedralGame& game, const BruteForceReport& report);

/// Whole file contents; a file that cannot be opened is a parse error.
std::string read_file(const std::string& path);

}  // namespace eahkit

#endif  // EAHKIT_IO_HPP_
