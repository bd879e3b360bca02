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

#include "eahkit/lp.hpp"

#include <algorithm>
#include <optional>

#include "eahkit/error.hpp"

namespace eahkit {

void LinearSystem::validate() const {
  EAHKIT_CHECK(ineq_lhs.rows() == ineq_rhs.size(), ErrorCode::kDimensionMismatch,
               "inequality rhs size mismatch");
  EAHKIT_CHECK(eq_lhs.rows() == eq_rhs.size(), ErrorCode::kDimensionMismatch,
               "equality rhs size mismatch");
  EAHKIT_CHECK(ineq_lhs.cols() == eq_lhs.cols(), ErrorCode::kDimensionMismatch,
               "inequality and equality column counts differ");
}

namespace {

using Row = std::vector<Rat>;

// Subtract f * src from dst, skipping structural zeros of src.
void axpy(Row& dst, const Rat& f, const Row& src) {
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (sgn(src[j]) != 0) dst[j] -= f * src[j];
  }
}

void scale(Row& r, const Rat& s) {
  for (auto& x : r) {
    if (sgn(x) != 0) x *= s;
  }
}

enum class VarKind { kFree, kLower, kFixed };

struct Presolve {
  std::vector<VarKind> kind;
  std::vector<Rat> shift;                     // lower bound or fixed value
  std::vector<std::size_t> bound_row;         // ineq row (kLower) or eq row (kFixed)
  std::vector<bool> ineq_absorbed;
  std::vector<bool> eq_absorbed;
};

std::optional<std::size_t> singleton(const RatMat& m, std::size_t i) {
  std::optional<std::size_t> pos;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (sgn(m(i, j)) == 0) continue;
    if (pos) return std::nullopt;
    pos = j;
  }
  return pos;
}

Presolve presolve(const LinearSystem& sys) {
  const std::size_t n = sys.dim();
  Presolve ps{std::vector<VarKind>(n, VarKind::kFree), std::vector<Rat>(n),
              std::vector<std::size_t>(n), std::vector<bool>(sys.ineq_lhs.rows(), false),
              std::vector<bool>(sys.eq_lhs.rows(), false)};
  for (std::size_t k = 0; k < sys.eq_lhs.rows(); ++k) {
    auto j = singleton(sys.eq_lhs, k);
    if (!j || ps.kind[*j] == VarKind::kFixed) continue;
    ps.kind[*j] = VarKind::kFixed;
    ps.shift[*j] = sys.eq_rhs[k] / sys.eq_lhs(k, *j);
    ps.bound_row[*j] = k;
    ps.eq_absorbed[k] = true;
  }
  for (std::size_t i = 0; i < sys.ineq_lhs.rows(); ++i) {
    auto j = singleton(sys.ineq_lhs, i);
    if (!j || sgn(sys.ineq_lhs(i, *j)) > 0 || ps.kind[*j] == VarKind::kFixed) continue;
    const Rat bound = sys.ineq_rhs[i] / sys.ineq_lhs(i, *j);
    if (ps.kind[*j] == VarKind::kFree || bound > ps.shift[*j]) {
      ps.kind[*j] = VarKind::kLower;
      ps.shift[*j] = bound;
      ps.bound_row[*j] = i;
    }
    ps.ineq_absorbed[i] = true;
  }
  return ps;
}

class Simplex {
 public:
  Simplex(const RatVec& objective, const LinearSystem& sys, Sense sense)
      : sys_(sys), ps_(presolve(sys)), n_(sys.dim()), max_(sense == Sense::kMaximize) {
    // Minimisation internally.
    cost_ = objective;
    if (sense == Sense::kMaximize) cost_ = -cost_;
    build_standard_form();
  }

  LpOutcome run() {
    eliminate_free();
    if (auto cert = phase_one()) return *cert;
    if (auto ray = check_free_lines()) return *ray;
    return phase_two();
  }

 private:
  // ---- standard form ---------------------------------------------------
  // Columns: non-fixed structural variables (in original order), then one
  // slack per surviving inequality row.
  void build_standard_form() {
    for (std::size_t j = 0; j < n_; ++j) {
      if (ps_.kind[j] != VarKind::kFixed) {
        col_of_var_.push_back(j);
      }
    }
    std::vector<std::size_t> ineq_rows;
    for (std::size_t i = 0; i < sys_.ineq_lhs.rows(); ++i)
      if (!ps_.ineq_absorbed[i]) ineq_rows.push_back(i);
    std::vector<std::size_t> eq_rows;
    for (std::size_t k = 0; k < sys_.eq_lhs.rows(); ++k)
      if (!ps_.eq_absorbed[k]) eq_rows.push_back(k);

    nstruct_ = col_of_var_.size();
    ncols_ = nstruct_ + ineq_rows.size();
    const std::size_t nrows = ineq_rows.size() + eq_rows.size();
    origin_.reserve(nrows);
    for (auto i : ineq_rows) origin_.push_back({false, i});
    for (auto k : eq_rows) origin_.push_back({true, k});

    rows_.assign(nrows, Row(ncols_));
    rhs_.assign(nrows, Rat(0));
    track_.assign(nrows, Row(nrows));
    for (std::size_t r = 0; r < nrows; ++r) {
      const auto [is_eq, idx] = origin_[r];
      const RatMat& m = is_eq ? sys_.eq_lhs : sys_.ineq_lhs;
      Rat rhs = is_eq ? sys_.eq_rhs[idx] : sys_.ineq_rhs[idx];
      for (std::size_t j = 0; j < n_; ++j) {
        const Rat& a = m(idx, j);
        if (sgn(a) == 0) continue;
        if (ps_.kind[j] != VarKind::kFree) rhs -= a * ps_.shift[j];
      }
      for (std::size_t c = 0; c < nstruct_; ++c) rows_[r][c] = m(idx, col_of_var_[c]);
      if (!is_eq) rows_[r][nstruct_ + r] = 1;
      rhs_[r] = rhs;
      track_[r][r] = 1;
    }
    obj_.assign(ncols_, Rat(0));
    obj_const_ = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (ps_.kind[j] != VarKind::kFree) obj_const_ += cost_[j] * ps_.shift[j];
    }
    for (std::size_t c = 0; c < nstruct_; ++c) obj_[c] = cost_[col_of_var_[c]];
    is_free_col_.assign(ncols_, false);
    for (std::size_t c = 0; c < nstruct_; ++c)
      is_free_col_[c] = ps_.kind[col_of_var_[c]] == VarKind::kFree;
  }

  // ---- free variable elimination ---------------------------------------
  void eliminate_free() {
    const std::size_t nrows = rows_.size();
    row_defines_.assign(nrows, kNone);
    for (std::size_t c = 0; c < nstruct_; ++c) {
      if (!is_free_col_[c]) continue;
      std::size_t p = kNone;
      for (std::size_t r = 0; r < nrows; ++r) {
        if (row_defines_[r] == kNone && sgn(rows_[r][c]) != 0) {
          p = r;
          break;
        }
      }
      if (p == kNone) {
        free_unpivoted_.push_back(c);
        continue;
      }
      const Rat inv = 1 / rows_[p][c];
      scale(rows_[p], inv);
      scale(track_[p], inv);
      rhs_[p] *= inv;
      for (std::size_t r = 0; r < nrows; ++r) {
        if (r == p || sgn(rows_[r][c]) == 0) continue;
        const Rat f = rows_[r][c];
        axpy(rows_[r], f, rows_[p]);
        axpy(track_[r], f, track_[p]);
        rhs_[r] -= f * rhs_[p];
      }
      if (sgn(obj_[c]) != 0) {
        const Rat f = obj_[c];
        axpy(obj_, f, rows_[p]);
        obj_const_ += f * rhs_[p];
      }
      row_defines_[p] = c;
    }
    for (std::size_t c = 0; c < ncols_; ++c)
      if (!is_free_col_[c]) nonneg_cols_.push_back(c);
    for (std::size_t r = 0; r < nrows; ++r)
      if (row_defines_[r] == kNone) active_.push_back(r);
  }

  // ---- phase one ---------------------------------------------------------
  // Tableau T over the nonnegative columns plus one artificial per active
  // row. Returns a Farkas certificate when the program is infeasible.
  std::optional<LpInfeasible> phase_one() {
    const std::size_t m = active_.size();
    const std::size_t q = nonneg_cols_.size();
    width_ = q + m;
    tab_.assign(m, Row(width_));
    trhs_.assign(m, Rat(0));
    flip_.assign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t r = active_[i];
      int s = sgn(rhs_[r]) < 0 ? -1 : 1;
      flip_[i] = s;
      for (std::size_t k = 0; k < q; ++k) {
        const Rat& a = rows_[r][nonneg_cols_[k]];
        if (sgn(a) != 0) tab_[i][k] = s > 0 ? a : Rat(-a);
      }
      tab_[i][q + i] = 1;
      trhs_[i] = s > 0 ? rhs_[r] : Rat(-rhs_[r]);
    }
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) basis_[i] = q + i;

    // Reduced costs for min sum(artificials).
    red_.assign(width_, Rat(0));
    zrhs_ = 0;
    for (std::size_t i = 0; i < m; ++i) {
      axpy(red_, Rat(1), tab_[i]);
      zrhs_ -= trhs_[i];
    }
    for (std::size_t i = 0; i < m; ++i) red_[q + i] = 0;
    // red_ currently holds -sum rows for real columns; that is c_j - z_j.
    iterate(width_);

    // Phase-one optimum is -zrhs_.
    if (sgn(zrhs_) != 0) return farkas_certificate();

    // Drive zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < tab_.size();) {
      if (basis_[i] < q) {
        ++i;
        continue;
      }
      std::size_t enter = kNone;
      for (std::size_t k = 0; k < q; ++k) {
        if (sgn(tab_[i][k]) != 0) {
          enter = k;
          break;
        }
      }
      if (enter == kNone) {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
        trhs_.erase(trhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, enter);
      ++i;
    }
    for (auto& row : tab_) row.resize(q);
    width_ = q;
    return std::nullopt;
  }

  LpInfeasible farkas_certificate() const {
    const std::size_t q = nonneg_cols_.size();
    const std::size_t nrows = rows_.size();
    // Phase-one duals y_i = 1 - red(art_i); u = -y on the flipped rows.
    std::vector<Rat> u_std(nrows);
    for (std::size_t i = 0; i < active_.size(); ++i) {
      Rat u = red_[q + i] - 1;
      if (flip_[i] < 0) u = -u;
      if (sgn(u) == 0) continue;
      axpy(u_std, -u, track_[active_[i]]);
    }
    LpInfeasible cert{RatVec(sys_.ineq_lhs.rows()), RatVec(sys_.eq_lhs.rows())};
    for (std::size_t r = 0; r < nrows; ++r) {
      const auto [is_eq, idx] = origin_[r];
      (is_eq ? cert.eq_multipliers : cert.ineq_multipliers)[idx] = u_std[r];
    }
    // Coefficients left on bounded/fixed variables are cancelled by the
    // absorbed bound rows.
    RatVec w = left_multiply(cert.ineq_multipliers, sys_.ineq_lhs) +
               left_multiply(cert.eq_multipliers, sys_.eq_lhs);
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(w[j]) == 0) continue;
      const std::size_t row = ps_.bound_row[j];
      if (ps_.kind[j] == VarKind::kLower) {
        cert.ineq_multipliers[row] += w[j] / -sys_.ineq_lhs(row, j);
      } else if (ps_.kind[j] == VarKind::kFixed) {
        cert.eq_multipliers[row] -= w[j] / sys_.eq_lhs(row, j);
      }
    }
    return cert;
  }

  // ---- phase two --------------------------------------------------------
  // After phase one: a nonbasic free column that could not be pivoted is a
  // line in the feasible region; with a nonzero cost the program is unbounded.
  std::optional<LpUnbounded> check_free_lines() {
    for (std::size_t c : free_unpivoted_) {
      if (sgn(obj_[c]) == 0) continue;
      RatVec point = current_point();
      RatVec ray(n_);
      const Rat dir = sgn(obj_[c]) > 0 ? Rat(-1) : Rat(1);
      ray[col_of_var_[c]] = dir;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (row_defines_[r] == kNone || sgn(rows_[r][c]) == 0) continue;
        ray[col_of_var_[row_defines_[r]]] -= rows_[r][c] * dir;
      }
      return LpUnbounded{std::move(point), std::move(ray)};
    }
    return std::nullopt;
  }

  LpOutcome phase_two() {
    const std::size_t q = nonneg_cols_.size();
    red_.assign(q, Rat(0));
    for (std::size_t k = 0; k < q; ++k) red_[k] = obj_[nonneg_cols_[k]];
    zrhs_ = -obj_const_;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      const Rat cb = red_[basis_[i]];
      if (sgn(cb) == 0) continue;
      axpy(red_, cb, tab_[i]);
      zrhs_ -= cb * trhs_[i];
    }
    if (auto unbounded_col = iterate(q)) {
      return make_ray(*unbounded_col);
    }
    LpOptimal opt;
    opt.point = current_point();
    opt.value = dot(cost_, opt.point);
    if (max_) opt.value = -opt.value;
    for (std::size_t c = 0; c < nstruct_; ++c) {
      if (is_free_col_[c]) {
        if (std::find(free_unpivoted_.begin(), free_unpivoted_.end(), c) == free_unpivoted_.end())
          opt.basis.push_back(col_of_var_[c]);
      }
    }
    for (auto b : basis_) {
      const std::size_t col = nonneg_cols_[b];
      if (col < nstruct_) opt.basis.push_back(col_of_var_[col]);
    }
    std::sort(opt.basis.begin(), opt.basis.end());
    return opt;
  }

  LpUnbounded make_ray(std::size_t enter) {
    const std::size_t q = nonneg_cols_.size();
    std::vector<Rat> dz(q);
    dz[enter] = 1;
    for (std::size_t i = 0; i < tab_.size(); ++i) dz[basis_[i]] = -tab_[i][enter];
    RatVec ray = lift(dz, /*homogeneous=*/true);
    return LpUnbounded{current_point(), std::move(ray)};
  }

  // ---- shared pivoting ----------------------------------------------------
  // Bland's rule on columns [0, ncols). Returns the entering column when the
  // objective is unbounded below along it.
  std::optional<std::size_t> iterate(std::size_t ncols) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t k = 0; k < ncols; ++k) {
        if (sgn(red_[k]) < 0) {
          enter = k;
          break;
        }
      }
      if (enter == kNone) return std::nullopt;
      std::size_t leave = kNone;
      Rat best;
      for (std::size_t i = 0; i < tab_.size(); ++i) {
        if (sgn(tab_[i][enter]) <= 0) continue;
        Rat ratio = trhs_[i] / tab_[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return enter;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rat inv = 1 / tab_[r][c];
    scale(tab_[r], inv);
    trhs_[r] *= inv;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (i == r || sgn(tab_[i][c]) == 0) continue;
      const Rat f = tab_[i][c];
      axpy(tab_[i], f, tab_[r]);
      trhs_[i] -= f * trhs_[r];
    }
    if (sgn(red_[c]) != 0) {
      const Rat f = red_[c];
      for (std::size_t j = 0; j < red_.size() && j < tab_[r].size(); ++j) {
        if (sgn(tab_[r][j]) != 0) red_[j] -= f * tab_[r][j];
      }
      zrhs_ -= f * trhs_[r];
    }
    basis_[r] = c;
  }

  RatVec current_point() const {
    std::vector<Rat> z(nonneg_cols_.size());
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (basis_[i] < z.size()) z[basis_[i]] = trhs_[i];
    }
    return lift(z, /*homogeneous=*/false);
  }

  // Maps values of the nonnegative columns back to the original variables.
  RatVec lift(const std::vector<Rat>& z, bool homogeneous) const {
    std::vector<Rat> col_val(ncols_);
    for (std::size_t k = 0; k < nonneg_cols_.size(); ++k) col_val[nonneg_cols_[k]] = z[k];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = row_defines_[r];
      if (c == kNone) continue;
      Rat v = homogeneous ? Rat(0) : rhs_[r];
      for (std::size_t k : nonneg_cols_) {
        if (sgn(rows_[r][k]) != 0 && sgn(col_val[k]) != 0) v -= rows_[r][k] * col_val[k];
      }
      col_val[c] = v;
    }
    RatVec x(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (ps_.kind[j] != VarKind::kFree && !homogeneous) x[j] = ps_.shift[j];
    }
    for (std::size_t c = 0; c < nstruct_; ++c) x[col_of_var_[c]] += col_val[c];
    return x;
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const LinearSystem& sys_;
  Presolve ps_;
  std::size_t n_;
  bool max_;
  RatVec cost_;

  std::vector<std::size_t> col_of_var_;
  std::size_t nstruct_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::pair<bool, std::size_t>> origin_;
  std::vector<Row> rows_;
  std::vector<Rat> rhs_;
  std::vector<Row> track_;
  Row obj_;
  Rat obj_const_;
  std::vector<bool> is_free_col_;

  std::vector<std::size_t> row_defines_;
  std::vector<std::size_t> free_unpivoted_;
  std::vector<std::size_t> nonneg_cols_;
  std::vector<std::size_t> active_;

  std::size_t width_ = 0;
  std::vector<Row> tab_;
  std::vector<Rat> trhs_;
  std::vector<int> flip_;
  std::vector<std::size_t> basis_;
  Row red_;
  Rat zrhs_;
};

}  // namespace

LpOutcome lp_solve(const RatVec& objective, const LinearSystem& system, Sense sense) {
  system.validate();
  EAHKIT_CHECK(objective.size() == system.dim(), ErrorCode::kDimensionMismatch,
               "objective has " + std::to_string(objective.size()) + " entries, program has " +
                   std::to_string(system.dim()) + " columns");
  Simplex simplex(objective, system, sense);
  LpOutcome out = simplex.run();
  if (const auto* cert = std::get_if<LpInfeasible>(&out)) {
    EAHKIT_CHECK(verify_farkas(system, *cert), ErrorCode::kInternal,
                 "simplex produced an invalid infeasibility certificate");
  } else if (const auto* opt = std::get_if<LpOptimal>(&out)) {
    EAHKIT_CHECK(satisfies(system, opt->point), ErrorCode::kInternal,
                 "simplex produced an infeasible optimum");
  }
  return out;
}

std::optional<RatVec> lp_find_point(const LinearSystem& system) {
  LpOutcome out = lp_solve(RatVec(system.dim()), system, Sense::kMaximize);
  if (auto* opt = std::get_if<LpOptimal>(&out)) return std::move(opt->point);
  return std::nullopt;
}

bool satisfies(const LinearSystem& system, const RatVec& x) {
  if (x.size() != system.dim()) return false;
  for (std::size_t i = 0; i < system.ineq_lhs.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (sgn(system.ineq_lhs(i, j)) != 0) s += system.ineq_lhs(i, j) * x[j];
    if (s > system.ineq_rhs[i]) return false;
  }
  for (std::size_t k = 0; k < system.eq_lhs.rows(); ++k) {
    Rat s = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (sgn(system.eq_lhs(k, j)) != 0) s += system.eq_lhs(k, j) * x[j];
    if (s != system.eq_rhs[k]) return false;
  }
  return true;
}

bool verify_farkas(const LinearSystem& system, const LpInfeasible& cert) {
  if (cert.ineq_multipliers.size() != system.ineq_lhs.rows() ||
      cert.eq_multipliers.size() != system.eq_lhs.rows())
    return false;
  for (const auto& u : cert.ineq_multipliers)
    if (sgn(u) < 0) return false;
  RatVec combo = left_multiply(cert.ineq_multipliers, system.ineq_lhs) +
                 left_multiply(cert.eq_multipliers, system.eq_lhs);
  if (!combo.is_zero()) return false;
  return dot(cert.ineq_multipliers, system.ineq_rhs) + dot(cert.eq_multipliers, system.eq_rhs) < 0;
}

bool verify_ray(const LinearSystem& system, const RatVec& objective, Sense sense,
                const LpUnbounded& unbounded) {
  if (!satisfies(system, unbounded.point)) return false;
  const RatVec& r = unbounded.ray;
  if (r.size() != system.dim()) return false;
  RatVec ar = system.ineq_lhs * r;
  for (const auto& v : ar)
    if (sgn(v) > 0) return false;
  if (!(system.eq_lhs * r).is_zero()) return false;
  const Rat gain = dot(objective, r);
  return sense == Sense::kMaximize ? sgn(gain) > 0 : sgn(gain) < 0;
}

}  // namespace eahkit
