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


#include "eahkit/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "eahkit/error.hpp"
#include "eahkit/linalg.hpp"

namespace eahkit {

namespace {

// Row-by-row assembly of a LinearSystem.
class SystemBuilder {
 public:
  explicit SystemBuilder(std::size_t cols) : cols_(cols) {}

  void ineq(RatVec a, Rat b) {
    ineq_.push_back(std::move(a));
    ineq_rhs_.push_back(std::move(b));
  }
  void eq(RatVec a, Rat b) {
    eq_.push_back(std::move(a));
    eq_rhs_.push_back(std::move(b));
  }
  LinearSystem build() const {
    return {RatMat::from_rows(ineq_, cols_), RatVec(ineq_rhs_), RatMat::from_rows(eq_, cols_),
            RatVec(eq_rhs_)};
  }

 private:
  std::size_t cols_;
  std::vector<RatVec> ineq_, eq_;
  std::vector<Rat> ineq_rhs_, eq_rhs_;
};

Rat row_dot(const RatMat& m, std::size_t i, const RatVec& x) {
  Rat s = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (sgn(m(i, j)) != 0 && sgn(x[j]) != 0) s += m(i, j) * x[j];
  }
  return s;
}

const LpOptimal& expect_optimal(const LpOutcome& out, const char* what) {
  if (std::holds_alternative<LpInfeasible>(out))
    throw Error(ErrorCode::kEmptyInputSet, std::string(what) + ": empty set");
  if (std::holds_alternative<LpUnbounded>(out))
    throw Error(ErrorCode::kUnboundedInput, std::string(what) + ": unbounded");
  return std::get<LpOptimal>(out);
}

}  // namespace

HPolytope::HPolytope(LinearSystem system) : sys_(std::move(system)) {
  sys_.validate();
  for (std::size_t i = 0; i < sys_.ineq_lhs.rows(); ++i)
    phi_ = std::max(phi_, encoding_length(sys_.ineq_lhs.row(i), sys_.ineq_rhs[i]));
  for (std::size_t k = 0; k < sys_.eq_lhs.rows(); ++k)
    phi_ = std::max(phi_, encoding_length(sys_.eq_lhs.row(k), sys_.eq_rhs[k]));
}

HPolytope::HPolytope(RatMat a, RatVec b, RatMat e, RatVec f)
    : HPolytope(LinearSystem{std::move(a), std::move(b), std::move(e), std::move(f)}) {}

HPolytope HPolytope::simplex(std::size_t d) {
  EAHKIT_CHECK(d >= 1, ErrorCode::kInvalidArgument, "simplex needs at least one coordinate");
  SystemBuilder sb(d);
  for (std::size_t j = 0; j < d; ++j) sb.ineq(-RatVec::unit(d, j), Rat(0));
  RatVec ones(d);
  for (auto& x : ones) x = 1;
  sb.eq(ones, Rat(1));
  return HPolytope(sb.build());
}

HPolytope HPolytope::box(const RatVec& lo, const RatVec& hi) {
  EAHKIT_CHECK(lo.size() == hi.size(), ErrorCode::kDimensionMismatch, "box bounds differ in size");
  const std::size_t d = lo.size();
  SystemBuilder sb(d);
  for (std::size_t j = 0; j < d; ++j) {
    sb.ineq(RatVec::unit(d, j), hi[j]);
    sb.ineq(-RatVec::unit(d, j), -lo[j]);
  }
  return HPolytope(sb.build());
}

SeparationResult separate(const HPolytope& p, const RatVec& y) {
  EAHKIT_CHECK(y.size() == p.dim(), ErrorCode::kDimensionMismatch,
               "point has " + std::to_string(y.size()) + " coordinates, polytope " +
                   std::to_string(p.dim()));
  const LinearSystem& s = p.system();
  for (std::size_t i = 0; i < s.ineq_lhs.rows(); ++i) {
    if (row_dot(s.ineq_lhs, i, y) > s.ineq_rhs[i])
      return SeparationResult::Violated({s.ineq_lhs.row(i), s.ineq_rhs[i]});
  }
  for (std::size_t k = 0; k < s.eq_lhs.rows(); ++k) {
    const Rat v = row_dot(s.eq_lhs, k, y);
    if (v > s.eq_rhs[k]) return SeparationResult::Violated({s.eq_lhs.row(k), s.eq_rhs[k]});
    if (v < s.eq_rhs[k]) return SeparationResult::Violated({-s.eq_lhs.row(k), -s.eq_rhs[k]});
  }
  return SeparationResult::Inside();
}

bool is_vertex(const HPolytope& p, const RatVec& x) {
  if (x.size() != p.dim() || !p.contains(x)) return false;
  const auto& sys = p.system();
  std::vector<RatVec> tight;
  for (std::size_t i = 0; i < sys.eq_lhs.rows(); ++i) tight.push_back(sys.eq_lhs.row(i));
  for (std::size_t i = 0; i < sys.ineq_lhs.rows(); ++i)
    if (dot(sys.ineq_lhs.row(i), x) == sys.ineq_rhs[i]) tight.push_back(sys.ineq_lhs.row(i));
  return rank(RatMat::from_rows(tight, p.dim())) == p.dim();
}

HPolytope with_anchor(const HPolytope& p) {
  const LinearSystem& s = p.system();
  const std::size_t n = p.dim();
  SystemBuilder sb(n + 1);
  for (std::size_t i = 0; i < s.ineq_lhs.rows(); ++i)
    sb.ineq(concat(s.ineq_lhs.row(i), RatVec{0}), s.ineq_rhs[i]);
  for (std::size_t k = 0; k < s.eq_lhs.rows(); ++k)
    sb.eq(concat(s.eq_lhs.row(k), RatVec{0}), s.eq_rhs[k]);
  sb.eq(RatVec::unit(n + 1, n), Rat(1));
  return HPolytope(sb.build());
}

// P is bounded iff the rows of A together with +-rows of E positively span
// the whole space: full rank, and -(sum of rows of A) is a nonnegative
// combination of them.
bool is_bounded(const HPolytope& p) {
  const LinearSystem& s = p.system();
  const std::size_t n = p.dim();
  const std::size_t m = s.ineq_lhs.rows();
  const std::size_t q = s.eq_lhs.rows();
  std::vector<RatVec> all_rows;
  for (std::size_t i = 0; i < m; ++i) all_rows.push_back(s.ineq_lhs.row(i));
  for (std::size_t k = 0; k < q; ++k) all_rows.push_back(s.eq_lhs.row(k));
  if (rank(RatMat::from_rows(all_rows, n)) < n) return false;
  SystemBuilder sb(m + q);
  for (std::size_t j = 0; j < n; ++j) {
    RatVec row(m + q);
    Rat rhs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = s.ineq_lhs(i, j);
      rhs -= s.ineq_lhs(i, j);
    }
    for (std::size_t k = 0; k < q; ++k) row[m + k] = s.eq_lhs(k, j);
    sb.eq(std::move(row), rhs);
  }
  for (std::size_t i = 0; i < m; ++i) sb.ineq(-RatVec::unit(m + q, i), Rat(0));
  return lp_find_point(sb.build()).has_value();
}

HPolytope homogenize(const HPolytope& p, std::size_t anchor) {
  const std::size_t n = p.dim();
  EAHKIT_CHECK(anchor <= n, ErrorCode::kDimensionMismatch, "anchor index out of range");
  EAHKIT_CHECK(is_bounded(p), ErrorCode::kUnboundedInput, "cannot homogenize an unbounded set");
  const LinearSystem& s = p.system();
  if (anchor < n) {
    const RatVec e = RatVec::unit(n, anchor);
    const auto lo = lp_solve(e, s, Sense::kMinimize);
    const auto hi = lp_solve(e, s, Sense::kMaximize);
    EAHKIT_CHECK(expect_optimal(lo, "homogenize").value == 1 &&
                     expect_optimal(hi, "homogenize").value == 1,
                 ErrorCode::kInvalidArgument, "anchor coordinate is not fixed to 1");
  }
  const std::size_t out_dim = anchor == n ? n + 1 : n;
  auto lift_row = [&](const RatVec& a, const Rat& b) {
    RatVec r(out_dim);
    for (std::size_t j = 0; j < n; ++j) r[j] = a[j];
    r[anchor] -= b;
    return r;
  };
  SystemBuilder sb(out_dim);
  for (std::size_t i = 0; i < s.ineq_lhs.rows(); ++i)
    sb.ineq(lift_row(s.ineq_lhs.row(i), s.ineq_rhs[i]), Rat(0));
  sb.ineq(-RatVec::unit(out_dim, anchor), Rat(0));
  for (std::size_t k = 0; k < s.eq_lhs.rows(); ++k)
    sb.eq(lift_row(s.eq_lhs.row(k), s.eq_rhs[k]), Rat(0));
  return HPolytope(sb.build());
}

std::vector<WeightedPoint> caratheodory(const HPolytope& p, const RatVec& x) {
  EAHKIT_CHECK(x.size() == p.dim(), ErrorCode::kDimensionMismatch, "point dimension mismatch");
  EAHKIT_CHECK(separate(p, x).inside(), ErrorCode::kPointOutsideSet,
               "caratheodory: point is not in the polytope");
  const LinearSystem& s = p.system();
  std::vector<WeightedPoint> out;
  RatVec cur = x;
  Rat remaining = 1;
  for (;;) {
    // Vertex of the minimal face containing cur.
    LinearSystem face = s;
    std::vector<RatVec> eq_rows;
    std::vector<Rat> eq_rhs;
    for (std::size_t k = 0; k < s.eq_lhs.rows(); ++k) {
      eq_rows.push_back(s.eq_lhs.row(k));
      eq_rhs.push_back(s.eq_rhs[k]);
    }
    for (std::size_t i = 0; i < s.ineq_lhs.rows(); ++i) {
      if (row_dot(s.ineq_lhs, i, cur) == s.ineq_rhs[i]) {
        eq_rows.push_back(s.ineq_lhs.row(i));
        eq_rhs.push_back(s.ineq_rhs[i]);
      }
    }
    face.eq_lhs = RatMat::from_rows(eq_rows, p.dim());
    face.eq_rhs = RatVec(eq_rhs);
    auto v = lp_find_point(face);
    EAHKIT_CHECK(v.has_value(), ErrorCode::kInternal, "face of a feasible point is empty");
    if (*v == cur) {
      out.push_back({std::move(*v), remaining});
      break;
    }
    // Walk from v through cur until a new row becomes tight.
    const RatVec d = cur - *v;
    std::optional<Rat> step;
    for (std::size_t i = 0; i < s.ineq_lhs.rows(); ++i) {
      const Rat ad = row_dot(s.ineq_lhs, i, d);
      if (sgn(ad) <= 0) continue;
      Rat lim = (s.ineq_rhs[i] - row_dot(s.ineq_lhs, i, *v)) / ad;
      if (!step || lim < *step) step = lim;
    }
    EAHKIT_CHECK(step.has_value() && *step > 1, ErrorCode::kUnboundedInput,
                 "caratheodory needs a bounded polytope");
    RatVec hit = d;
    hit *= *step;
    hit += *v;
    // cur = (1 - 1/step) v + (1/step) hit
    const Rat inv = 1 / *step;
    out.push_back({std::move(*v), remaining * (1 - inv)});
    remaining *= inv;
    cur = std::move(hit);
    EAHKIT_CHECK(out.size() <= p.dim() + 1, ErrorCode::kInternal,
                 "caratheodory exceeded dim+1 vertices");
  }
  return out;
}

Rat min_bilinear_over(const RatMat& a, const RatVec& x, const HPolytope& y_set) {
  EAHKIT_CHECK(a.rows() == x.size() && a.cols() == y_set.dim(), ErrorCode::kDimensionMismatch,
               "bilinear form shape mismatch");
  return expect_optimal(lp_solve(left_multiply(x, a), y_set.system(), Sense::kMinimize),
                        "min over Y")
      .value;
}

Rat max_bilinear_over(const RatMat& a, const HPolytope& x_set, const RatVec& y) {
  EAHKIT_CHECK(a.cols() == y.size() && a.rows() == x_set.dim(), ErrorCode::kDimensionMismatch,
               "bilinear form shape mismatch");
  return expect_optimal(lp_solve(a * y, x_set.system(), Sense::kMaximize), "max over X").value;
}

namespace {

// max_x min_y x^T A y, with the inner minimum replaced by its LP dual.
// Variables: x (outer set), then multipliers on the inner set's
// inequalities and equalities. Returns (value, x).
std::pair<Rat, RatVec> max_min(const RatMat& a, const HPolytope& outer, const HPolytope& inner) {
  const std::size_t m = outer.dim();
  const std::size_t n = inner.dim();
  const LinearSystem& o = outer.system();
  const LinearSystem& in = inner.system();
  const std::size_t gi = in.ineq_lhs.rows();
  const std::size_t ge = in.eq_lhs.rows();
  const std::size_t cols = m + gi + ge;
  SystemBuilder sb(cols);
  for (std::size_t i = 0; i < o.ineq_lhs.rows(); ++i) {
    RatVec row(cols);
    for (std::size_t r = 0; r < m; ++r) row[r] = o.ineq_lhs(i, r);
    sb.ineq(std::move(row), o.ineq_rhs[i]);
  }
  for (std::size_t k = 0; k < o.eq_lhs.rows(); ++k) {
    RatVec row(cols);
    for (std::size_t r = 0; r < m; ++r) row[r] = o.eq_lhs(k, r);
    sb.eq(std::move(row), o.eq_rhs[k]);
  }
  // Dual of min_y c.y over the inner set with c = A^T x:
  // max f.nu - h.lambda s.t. E^T nu - G^T lambda = c, lambda >= 0.
  for (std::size_t j = 0; j < n; ++j) {
    RatVec row(cols);
    for (std::size_t r = 0; r < m; ++r) row[r] = -a(r, j);
    for (std::size_t i = 0; i < gi; ++i) row[m + i] = -in.ineq_lhs(i, j);
    for (std::size_t k = 0; k < ge; ++k) row[m + gi + k] = in.eq_lhs(k, j);
    sb.eq(std::move(row), Rat(0));
  }
  for (std::size_t i = 0; i < gi; ++i) sb.ineq(-RatVec::unit(cols, m + i), Rat(0));
  RatVec obj(cols);
  for (std::size_t i = 0; i < gi; ++i) obj[m + i] = -in.ineq_rhs[i];
  for (std::size_t k = 0; k < ge; ++k) obj[m + gi + k] = in.eq_rhs[k];
  const auto out = lp_solve(obj, sb.build(), Sense::kMaximize);
  const LpOptimal& opt = expect_optimal(out, "farkas_case");
  RatVec x(m);
  for (std::size_t r = 0; r < m; ++r) x[r] = opt.point[r];
  return {opt.value, x};
}

}  // namespace

FarkasCase farkas_case(const RatMat& a, const HPolytope& x_set, const HPolytope& y_set) {
  EAHKIT_CHECK(a.rows() == x_set.dim() && a.cols() == y_set.dim(), ErrorCode::kDimensionMismatch,
               "matrix shape does not match the strategy sets");
  EAHKIT_CHECK(lp_find_point(x_set.system()).has_value(), ErrorCode::kEmptyInputSet, "X is empty");
  EAHKIT_CHECK(lp_find_point(y_set.system()).has_value(), ErrorCode::kEmptyInputSet, "Y is empty");
  auto [value, x] = max_min(a, x_set, y_set);
  if (sgn(value) >= 0) {
    EAHKIT_CHECK(sgn(min_bilinear_over(a, x, y_set)) >= 0, ErrorCode::kInternal,
                 "farkas_case: first-case witness failed verification");
    return FarkasCase1{std::move(x)};
  }
  // min_y max_x x^T A y = value < 0; obtain the minimiser as a max-min of -A^T.
  RatMat neg_t = a.transpose();
  for (std::size_t i = 0; i < neg_t.rows(); ++i)
    for (std::size_t j = 0; j < neg_t.cols(); ++j) neg_t(i, j) = -neg_t(i, j);
  auto [neg_value, y] = max_min(neg_t, y_set, x_set);
  EAHKIT_CHECK(neg_value == -value, ErrorCode::kInternal, "minimax values disagree");
  const Rat scale = 1 / -value;
  y *= scale;
  EAHKIT_CHECK(max_bilinear_over(a, x_set, y) <= -1, ErrorCode::kInternal,
               "farkas_case: second-case witness failed verification");
  return FarkasCase2{std::move(y), scale};
}

RatVec AffineChart::lift(const RatVec& z) const {
  RatVec x = basis * z;
  x += origin;
  return x;
}

RatVec AffineChart::pull_back(const RatVec& c) const { return left_multiply(c, basis); }

AffineChart affine_chart(const HPolytope& p) {
  const LinearSystem& s = p.system();
  const std::size_t n = p.dim();
  const std::size_t m = s.ineq_lhs.rows();
  std::vector<bool> candidate(m, true);
  std::vector<RatVec> samples;
  // Each round maximises the capped slack of the remaining candidates; those
  // still at zero slack after a round with no progress are implicit equalities.
  for (;;) {
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < m; ++i)
      if (candidate[i]) cand.push_back(i);
    const std::size_t cols = n + cand.size();
    SystemBuilder sb(cols);
    std::vector<std::size_t> slack_of(m, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < cand.size(); ++c) slack_of[cand[c]] = n + c;
    for (std::size_t i = 0; i < m; ++i) {
      RatVec row(cols);
      for (std::size_t j = 0; j < n; ++j) row[j] = s.ineq_lhs(i, j);
      if (candidate[i]) row[slack_of[i]] = 1;
      sb.ineq(std::move(row), s.ineq_rhs[i]);
    }
    for (std::size_t k = 0; k < s.eq_lhs.rows(); ++k) {
      RatVec row(cols);
      for (std::size_t j = 0; j < n; ++j) row[j] = s.eq_lhs(k, j);
      sb.eq(std::move(row), s.eq_rhs[k]);
    }
    RatVec obj(cols);
    for (std::size_t c = 0; c < cand.size(); ++c) {
      sb.ineq(-RatVec::unit(cols, n + c), Rat(0));
      sb.ineq(RatVec::unit(cols, n + c), Rat(1));
      obj[n + c] = 1;
    }
    const auto out = lp_solve(obj, sb.build(), Sense::kMaximize);
    const LpOptimal& opt = expect_optimal(out, "affine_chart");
    RatVec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = opt.point[j];
    samples.push_back(std::move(x));
    bool progress = false;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (sgn(opt.point[n + c]) > 0) {
        candidate[cand[c]] = false;
        progress = true;
      }
    }
    if (!progress) break;
  }

  AffineChart chart;
  chart.origin = RatVec(n);
  for (const auto& x : samples) chart.origin += x;
  chart.origin /= Rat(static_cast<long>(samples.size()));

  std::vector<RatVec> hull_rows;
  for (std::size_t k = 0; k < s.eq_lhs.rows(); ++k) hull_rows.push_back(s.eq_lhs.row(k));
  for (std::size_t i = 0; i < m; ++i) {
    if (candidate[i]) {
      chart.implicit_equalities.push_back(i);
      hull_rows.push_back(s.ineq_lhs.row(i));
    }
  }
  chart.basis = null_space(RatMat::from_rows(hull_rows, n));
  const std::size_t k = chart.basis.cols();
  SystemBuilder red(k);
  for (std::size_t i = 0; i < m; ++i) {
    if (candidate[i]) continue;
    const RatVec a = s.ineq_lhs.row(i);
    RatVec g = left_multiply(a, chart.basis);
    if (g.is_zero()) continue;
    red.ineq(std::move(g), s.ineq_rhs[i] - dot(a, chart.origin));
  }
  chart.reduced = red.build();
  return chart;
}

std::vector<RatVec> enumerate_vertices(const HPolytope& p, std::size_t dim_limit) {
  if (!lp_find_point(p.system())) return {};
  EAHKIT_CHECK(is_bounded(p), ErrorCode::kUnboundedInput, "vertex enumeration needs a bounded set");
  const AffineChart chart = affine_chart(p);
  const std::size_t k = chart.dim();
  EAHKIT_CHECK(k <= dim_limit, ErrorCode::kDimensionTooLarge,
               "vertex enumeration limited to affine dimension " + std::to_string(dim_limit));
  if (k == 0) return {chart.origin};
  const RatMat& g = chart.reduced.ineq_lhs;
  const RatVec& h = chart.reduced.ineq_rhs;
  const std::size_t m = g.rows();

  std::set<RatVec> found;
  std::vector<std::size_t> chosen;
  // Echelon rows of the chosen subset, for independence tests.
  using Row = std::vector<Rat>;
  std::function<void(std::size_t, std::vector<std::pair<std::size_t, Row>>&)> rec =
      [&](std::size_t start, std::vector<std::pair<std::size_t, Row>>& ech) {
        if (chosen.size() == k) {
          std::vector<RatVec> rows;
          std::vector<Rat> rhs;
          for (auto i : chosen) {
            rows.push_back(g.row(i));
            rhs.push_back(h[i]);
          }
          auto z = solve_any(RatMat::from_rows(rows, k), RatVec(rhs));
          if (z && satisfies(chart.reduced, *z)) found.insert(chart.lift(*z));
          return;
        }
        for (std::size_t i = start; i + (k - chosen.size()) <= m; ++i) {
          Row r = g.row(i).values();
          for (const auto& [pc, er] : ech) {
            if (sgn(r[pc]) == 0) continue;
            const Rat f = r[pc];
            for (std::size_t j = 0; j < k; ++j)
              if (sgn(er[j]) != 0) r[j] -= f * er[j];
          }
          std::size_t pc = 0;
          while (pc < k && sgn(r[pc]) == 0) ++pc;
          if (pc == k) continue;
          const Rat inv = 1 / r[pc];
          for (auto& v : r)
            if (sgn(v) != 0) v *= inv;
          ech.emplace_back(pc, std::move(r));
          chosen.push_back(i);
          rec(i + 1, ech);
          chosen.pop_back();
          ech.pop_back();
        }
      };
  std::vector<std::pair<std::size_t, Row>> ech;
  rec(0, ech);
  return {found.begin(), found.end()};
}

}  // namespace eahkit
