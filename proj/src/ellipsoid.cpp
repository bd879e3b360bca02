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


#include "eahkit/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "eahkit/error.hpp"

namespace eahkit {

namespace {

Rat pow2(long e) {
  Rat r = 1;
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

Rat to_rat(const mpf_class& f) {
  Rat q;
  mpq_set_f(q.get_mpq_t(), f.get_mpf_t());
  return q;
}

mpf_class to_mpf(const Rat& q, unsigned prec) {
  mpf_class f(0, prec);
  mpf_set_q(f.get_mpf_t(), q.get_mpq_t());
  return f;
}

double log2_of(const mpf_class& f) {
  long e = 0;
  const double m = mpf_get_d_2exp(&e, f.get_mpf_t());
  return std::log2(m) + static_cast<double>(e);
}

// log2 sqrt(det P) through a Cholesky factorisation at working precision.
double log2_sqrt_det(const std::vector<mpf_class>& p, std::size_t n, unsigned prec) {
  std::vector<mpf_class> l(n * n, mpf_class(0, prec));
  double total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    mpf_class d = p[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (sgn(d) <= 0) return -HUGE_VAL;
    const mpf_class root = sqrt(d);
    l[j * n + j] = root;
    total += log2_of(root);
    for (std::size_t i = j + 1; i < n; ++i) {
      mpf_class s = p[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / root;
    }
  }
  return total;
}

std::size_t saturating(double v) {
  if (!(v < 1e18)) return static_cast<std::size_t>(1e18);
  return static_cast<std::size_t>(std::ceil(v));
}

}  // namespace

Rat EllipsoidParams::radius() const { return pow2(r_exp); }
Rat EllipsoidParams::eps() const { return pow2(-eps_exp); }

std::size_t EllipsoidParams::default_max_iters(std::size_t dim, long r_exp, long eps_exp) {
  const double n = static_cast<double>(dim);
  return saturating(10.0 * (n * static_cast<double>(eps_exp) + n * n * static_cast<double>(r_exp)));
}

EllipsoidParams EllipsoidParams::derived(std::size_t dim, EncodingLength phi, long r_exp_cap,
                                         long eps_exp_cap) {
  const double n = static_cast<double>(dim);
  const double p = static_cast<double>(phi.bits);
  EllipsoidParams params;
  params.r_exp = static_cast<long>(std::min(n * n * p, static_cast<double>(r_exp_cap)));
  params.eps_exp = static_cast<long>(std::min(5 * n * n * n * p, static_cast<double>(eps_exp_cap)));
  params.r_exp = std::max(params.r_exp, 1L);
  params.eps_exp = std::max(params.eps_exp, 1L);
  params.max_iters = default_max_iters(dim, params.r_exp, params.eps_exp);
  // The shape matrix must resolve the ratio of its longest to shortest axis.
  // Axes shrink to about eps and can grow by sqrt(n^2/(n^2-1)) per step, which
  // over max_iters steps is below 2^(8 (r_exp + eps_exp/n)).
  const double growth = 8.0 * (static_cast<double>(params.r_exp) +
                               static_cast<double>(params.eps_exp) / n);
  params.precision_bits = static_cast<unsigned>(
      64 + 2 * (params.r_exp + params.eps_exp) + static_cast<long>(2 * growth));
  return params;
}

EllipsoidTranscript central_cut(const SeparationOracle& oracle, const EllipsoidParams& params,
                                std::size_t dim, const CentralCutOptions& options) {
  EAHKIT_CHECK(dim >= 1, ErrorCode::kInvalidArgument, "ellipsoid dimension must be positive");
  EAHKIT_CHECK(params.r_exp >= 0 && params.eps_exp > 0, ErrorCode::kInvalidArgument,
               "ellipsoid needs R >= 1 and eps < 1");
  const unsigned prec = params.precision_bits;
  const std::size_t n = dim;
  const std::size_t max_iters =
      params.max_iters ? params.max_iters
                       : EllipsoidParams::default_max_iters(dim, params.r_exp, params.eps_exp);
  const double nd = static_cast<double>(n);

  std::vector<mpf_class> center(n, mpf_class(0, prec));
  std::vector<mpf_class> shape(n * n, mpf_class(0, prec));
  const mpf_class r2 = to_mpf(pow2(2 * params.r_exp), prec);
  for (std::size_t i = 0; i < n; ++i) shape[i * n + i] = r2;
  double log2_vol = nd * static_cast<double>(params.r_exp);

  // Per-step factors.
  mpf_class expand(1, prec), shrink(0, prec), step(0, prec);
  double log2_factor = 0;
  if (n == 1) {
    expand = mpf_class(1, prec) / 4;
    step = mpf_class(1, prec) / 2;
    log2_factor = -1;  // sqrt(1/4)
  } else {
    const mpf_class nn(static_cast<double>(n * n), prec);
    const mpf_class blow = 1 + mpf_class(1, prec) / (16 * nn);
    expand = blow * nn / (nn - 1);
    shrink = mpf_class(2, prec) / (nd + 1);
    step = mpf_class(1, prec) / (nd + 1);
    const double z = 1 + 1 / (16 * nd * nd);
    log2_factor = 0.5 * (nd * std::log2(z * nd * nd / (nd * nd - 1)) + std::log2((nd - 1) / (nd + 1)));
  }

  EllipsoidTranscript t;
  std::vector<mpf_class> pc(n, mpf_class(0, prec)), b(n, mpf_class(0, prec)),
      cf(n, mpf_class(0, prec));
  while (true) {
    if (log2_vol < -static_cast<double>(params.eps_exp)) {
      t.outcome = EllipsoidOutcome::kEmpty;
      break;
    }
    if (t.iterations >= max_iters) {
      t.outcome = EllipsoidOutcome::kExhausted;
      break;
    }
    RatVec query(n);
    for (std::size_t i = 0; i < n; ++i) query[i] = to_rat(center[i]);
    SeparationResult answer = oracle(query);
    ++t.iterations;
    if (answer.inside()) {
      EAHKIT_CHECK(oracle(query).inside(), ErrorCode::kOracleContractViolation,
                   "oracle is not deterministic on an accepted point");
      if (options.record) t.steps.push_back({query, answer});
      t.outcome = EllipsoidOutcome::kFeasible;
      t.point = std::move(query);
      break;
    }
    const Halfspace& h = *answer.cut;
    EAHKIT_CHECK(h.normal.size() == n, ErrorCode::kOracleContractViolation,
                 "separating hyperplane has the wrong dimension");
    EAHKIT_CHECK(dot(h.normal, query) > h.offset, ErrorCode::kOracleContractViolation,
                 "separating hyperplane does not cut off the queried center");
    const bool all_cut = h.normal.is_zero();
    if (options.record) t.steps.push_back({std::move(query), answer});
    if (all_cut) {
      // 0 <= offset < 0: nothing survives.
      t.outcome = EllipsoidOutcome::kEmpty;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) cf[i] = to_mpf(h.normal[i], prec);
    mpf_class cpc(0, prec);
    for (std::size_t i = 0; i < n; ++i) {
      mpf_class s(0, prec);
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(cf[j]) != 0) s += shape[i * n + j] * cf[j];
      pc[i] = s;
      cpc += cf[i] * s;
    }
    if (sgn(cpc) <= 0) {
      // Numerically degenerate shape; treat as exhausted precision.
      t.outcome = EllipsoidOutcome::kExhausted;
      break;
    }
    const mpf_class root = sqrt(cpc);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = pc[i] / root;
      center[i] -= step * b[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        mpf_class v = shape[i * n + j];
        if (n > 1) v -= shrink * b[i] * b[j];
        v *= expand;
        shape[i * n + j] = v;
        shape[j * n + i] = v;
      }
    }
    log2_vol += log2_factor;
    if (options.record) t.steps.back().log2_volume = log2_sqrt_det(shape, n, prec);
    if (options.stop && options.stop(t.iterations)) {
      t.outcome = EllipsoidOutcome::kStopped;
      break;
    }
  }
  t.final_log2_volume = log2_vol;
  return t;
}

EllipsoidTranscript certify_empty_or_point(const SeparationOracle& oracle, std::size_t dim,
                                           EncodingLength phi_bound, long r_exp_cap,
                                           long eps_exp_cap, const CentralCutOptions& options) {
  return central_cut(oracle, EllipsoidParams::derived(dim, phi_bound, r_exp_cap, eps_exp_cap), dim,
                     options);
}

void write_transcript(std::ostream& os, const EllipsoidTranscript& t) {
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    os << k << ' ' << s.center;
    if (s.answer.inside()) {
      os << " inside\n";
    } else {
      os << " cut " << s.answer.cut->normal << " <= " << to_string(s.answer.cut->offset) << '\n';
    }
  }
  static const char* const kNames[] = {"feasible", "empty", "exhausted", "stopped"};
  os << "outcome " << kNames[static_cast<int>(t.outcome)] << " after " << t.iterations
     << " oracle calls\n";
}

}  // namespace eahkit
