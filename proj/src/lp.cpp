// Copyright 2026 The Visplan Authors
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

#include "visplan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "visplan/error.hpp"

namespace visplan::lp {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kMaxPivots = 200000;

struct InternalRow {
  std::vector<double> coeffs;  // dense over structural variables
  Sense sense;
  double rhs;
  int model_row;    // index into model.rows, or -1 for an upper-bound row
  int bound_var;    // variable whose upper bound this row encodes, or -1
  bool negated;     // row was multiplied by -1 to make rhs non-negative
};

class Simplex {
 public:
  explicit Simplex(const LpModel& model) : model_(model) { build(); }

  LpSolution run();

 private:
  void build();
  void compute_obj_row(const std::vector<double>& costs);
  void pivot(int row, int col);
  // Bland: smallest eligible entering column, then smallest basic index
  // among the min-ratio rows. Returns false at optimality.
  bool iterate(bool* unbounded);
  void drive_out_artificials();
  LpSolution extract();
  void certify(LpSolution& sol) const;

  const LpModel& model_;
  std::vector<InternalRow> internal_;
  int m_ = 0;               // rows
  int ncols_ = 0;           // structural + slack/surplus + artificial
  int first_artificial_ = 0;
  std::vector<std::vector<double>> tab_;  // m x ncols, current B^{-1}A
  std::vector<double> rhs_;
  std::vector<int> basis_;                // basic column per row
  std::vector<char> allowed_;             // artificial columns disabled in phase 2
  std::vector<double> obj_row_;           // z_j - c_j for the active costs
  std::vector<double> costs_;
  std::vector<std::vector<double>> orig_cols_;  // augmented matrix by column
};

void Simplex::build() {
  const int n = model_.num_vars;
  if (static_cast<int>(model_.objective.size()) != n ||
      static_cast<int>(model_.upper.size()) != n) {
    throw Error(Errc::structure, "LP model dimensions are inconsistent");
  }
  for (const auto& row : model_.rows) {
    for (const auto& [var, coeff] : row.terms) {
      if (var < 0 || var >= n || !std::isfinite(coeff)) {
        throw Error(Errc::structure, "LP row references a bad variable");
      }
    }
    if (!std::isfinite(row.rhs)) {
      throw Error(Errc::structure, "LP row has a non-finite rhs");
    }
  }

  for (std::size_t r = 0; r < model_.rows.size(); ++r) {
    InternalRow ir;
    ir.coeffs.assign(n, 0.0);
    for (const auto& [var, coeff] : model_.rows[r].terms) {
      ir.coeffs[var] += coeff;
    }
    ir.sense = model_.rows[r].sense;
    ir.rhs = model_.rows[r].rhs;
    ir.model_row = static_cast<int>(r);
    ir.bound_var = -1;
    ir.negated = false;
    internal_.push_back(std::move(ir));
  }
  for (int j = 0; j < n; ++j) {
    if (model_.upper[j] < kInfinity) {
      InternalRow ir;
      ir.coeffs.assign(n, 0.0);
      ir.coeffs[j] = 1.0;
      ir.sense = Sense::le;
      ir.rhs = model_.upper[j];
      ir.model_row = -1;
      ir.bound_var = j;
      ir.negated = false;
      internal_.push_back(std::move(ir));
    }
  }
  for (auto& ir : internal_) {
    if (ir.rhs < 0.0) {
      for (double& c : ir.coeffs) c = -c;
      ir.rhs = -ir.rhs;
      ir.negated = true;
      if (ir.sense == Sense::le) ir.sense = Sense::ge;
      else if (ir.sense == Sense::ge) ir.sense = Sense::le;
    }
  }

  m_ = static_cast<int>(internal_.size());
  int num_slack = 0, num_art = 0;
  for (const auto& ir : internal_) {
    if (ir.sense != Sense::eq) ++num_slack;
    if (ir.sense != Sense::le) ++num_art;
  }
  first_artificial_ = n + num_slack;
  ncols_ = first_artificial_ + num_art;

  tab_.assign(m_, std::vector<double>(ncols_, 0.0));
  rhs_.assign(m_, 0.0);
  basis_.assign(m_, -1);
  allowed_.assign(ncols_, 1);

  int slack = n, art = first_artificial_;
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < model_.num_vars; ++j) tab_[i][j] = internal_[i].coeffs[j];
    rhs_[i] = internal_[i].rhs;
    switch (internal_[i].sense) {
      case Sense::le:
        tab_[i][slack] = 1.0;
        basis_[i] = slack++;
        break;
      case Sense::ge:
        tab_[i][slack++] = -1.0;
        tab_[i][art] = 1.0;
        basis_[i] = art++;
        break;
      case Sense::eq:
        tab_[i][art] = 1.0;
        basis_[i] = art++;
        break;
    }
  }

  orig_cols_.assign(ncols_, std::vector<double>(m_, 0.0));
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < ncols_; ++j) orig_cols_[j][i] = tab_[i][j];
  }
}

void Simplex::compute_obj_row(const std::vector<double>& costs) {
  costs_ = costs;
  obj_row_.assign(ncols_, 0.0);
  for (int j = 0; j < ncols_; ++j) {
    double z = 0.0;
    for (int i = 0; i < m_; ++i) z += costs[basis_[i]] * tab_[i][j];
    obj_row_[j] = z - costs[j];
  }
}

void Simplex::pivot(int row, int col) {
  const double p = tab_[row][col];
  for (double& v : tab_[row]) v /= p;
  rhs_[row] /= p;
  for (int i = 0; i < m_; ++i) {
    if (i == row) continue;
    const double f = tab_[i][col];
    if (f == 0.0) continue;
    for (int j = 0; j < ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
    rhs_[i] -= f * rhs_[row];
    if (rhs_[i] < 0.0 && rhs_[i] > -1e-12) rhs_[i] = 0.0;
  }
  const double f = obj_row_[col];
  if (f != 0.0) {
    for (int j = 0; j < ncols_; ++j) obj_row_[j] -= f * tab_[row][j];
  }
  basis_[row] = col;
}

bool Simplex::iterate(bool* unbounded) {
  *unbounded = false;
  int entering = -1;
  for (int j = 0; j < ncols_; ++j) {
    if (!allowed_[j]) continue;
    if (obj_row_[j] < -kOptTol) {
      entering = j;
      break;
    }
  }
  if (entering < 0) return false;

  int leaving = -1;
  double best_ratio = 0.0;
  for (int i = 0; i < m_; ++i) {
    if (tab_[i][entering] > kPivotTol) {
      const double ratio = rhs_[i] / tab_[i][entering];
      if (leaving < 0 || ratio < best_ratio - kPivotTol) {
        leaving = i;
        best_ratio = ratio;
      } else if (ratio < best_ratio + kPivotTol && basis_[i] < basis_[leaving]) {
        leaving = i;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
  }
  if (leaving < 0) {
    *unbounded = true;
    return false;
  }
  pivot(leaving, entering);
  return true;
}

void Simplex::drive_out_artificials() {
  for (int i = 0; i < m_; ++i) {
    if (basis_[i] < first_artificial_) continue;
    int col = -1;
    for (int j = 0; j < first_artificial_; ++j) {
      if (std::abs(tab_[i][j]) > kPivotTol) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      pivot(i, col);
    }
    // Otherwise the row is redundant; its artificial stays basic at zero.
  }
  for (int j = first_artificial_; j < ncols_; ++j) allowed_[j] = 0;
}

LpSolution Simplex::run() {
  // Phase 1: drive the artificial variables to zero.
  bool needs_phase1 = false;
  for (int i = 0; i < m_; ++i) {
    if (basis_[i] >= first_artificial_) needs_phase1 = true;
  }
  if (needs_phase1) {
    std::vector<double> phase1(ncols_, 0.0);
    for (int j = first_artificial_; j < ncols_; ++j) phase1[j] = -1.0;
    compute_obj_row(phase1);
    bool unbounded = false;
    int pivots = 0;
    while (iterate(&unbounded)) {
      if (++pivots > kMaxPivots) {
        throw Error(Errc::numeric, "simplex pivot limit hit in phase 1");
      }
    }
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= first_artificial_) infeas += rhs_[i];
    }
    if (infeas > kFeasTol) {
      LpSolution sol;
      sol.status = LpStatus::infeasible;
      return sol;
    }
    drive_out_artificials();
  }

  // Phase 2.
  std::vector<double> costs(ncols_, 0.0);
  for (int j = 0; j < model_.num_vars; ++j) costs[j] = model_.objective[j];
  compute_obj_row(costs);
  bool unbounded = false;
  int pivots = 0;
  while (iterate(&unbounded)) {
    if (++pivots > kMaxPivots) {
      throw Error(Errc::numeric, "simplex pivot limit hit in phase 2");
    }
  }
  if (unbounded) {
    LpSolution sol;
    sol.status = LpStatus::unbounded;
    return sol;
  }
  return extract();
}

LpSolution Simplex::extract() {
  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.x.assign(model_.num_vars, 0.0);
  for (int i = 0; i < m_; ++i) {
    if (basis_[i] < model_.num_vars) {
      sol.x[basis_[i]] = rhs_[i];
    }
  }
  sol.value = 0.0;
  for (int j = 0; j < model_.num_vars; ++j) {
    sol.value += model_.objective[j] * sol.x[j];
  }
  sol.basis = basis_;

  // Duals from the final basis: solve B^T y = c_B by Gaussian elimination.
  std::vector<std::vector<double>> a(m_, std::vector<double>(m_ + 1, 0.0));
  for (int i = 0; i < m_; ++i) {
    for (int r = 0; r < m_; ++r) a[i][r] = orig_cols_[basis_[i]][r];
    a[i][m_] = costs_[basis_[i]];
  }
  std::vector<double> y(m_, 0.0);
  for (int col = 0; col < m_; ++col) {
    int piv = -1;
    double best = kPivotTol;
    for (int r = col; r < m_; ++r) {
      if (std::abs(a[r][col]) > best) {
        best = std::abs(a[r][col]);
        piv = r;
      }
    }
    if (piv < 0) throw Error(Errc::numeric, "singular basis while extracting duals");
    std::swap(a[col], a[piv]);
    for (int r = 0; r < m_; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int j = col; j <= m_; ++j) a[r][j] -= f * a[col][j];
    }
  }
  for (int r = 0; r < m_; ++r) y[r] = a[r][m_] / a[r][r];

  sol.row_duals.assign(model_.rows.size(), 0.0);
  sol.bound_duals.assign(model_.num_vars, 0.0);
  sol.dual_value = 0.0;
  for (int r = 0; r < m_; ++r) {
    const double yr = internal_[r].negated ? -y[r] : y[r];
    const double rhs = internal_[r].negated ? -internal_[r].rhs : internal_[r].rhs;
    if (internal_[r].model_row >= 0) {
      sol.row_duals[internal_[r].model_row] = yr;
    } else {
      sol.bound_duals[internal_[r].bound_var] = yr;
    }
    sol.dual_value += yr * rhs;
  }
  certify(sol);
  return sol;
}

void Simplex::certify(LpSolution& sol) const {
  double scale = 1.0;
  for (const auto& ir : internal_) scale = std::max(scale, std::abs(ir.rhs));
  for (double v : sol.x) scale = std::max(scale, std::abs(v));

  // Primal feasibility.
  for (const auto& row : model_.rows) {
    double lhs = 0.0;
    for (const auto& [var, coeff] : row.terms) lhs += coeff * sol.x[var];
    const double slack = row.rhs - lhs;
    const bool ok = (row.sense == Sense::le && slack >= -kFeasTol * scale) ||
                    (row.sense == Sense::ge && slack <= kFeasTol * scale) ||
                    (row.sense == Sense::eq && std::abs(slack) <= kFeasTol * scale);
    if (!ok) throw Error(Errc::numeric, "simplex returned an infeasible point");
  }
  for (int j = 0; j < model_.num_vars; ++j) {
    if (sol.x[j] < -kFeasTol * scale ||
        sol.x[j] > model_.upper[j] + kFeasTol * scale) {
      throw Error(Errc::numeric, "simplex returned an out-of-bounds point");
    }
  }

  // Dual feasibility and weak duality.
  std::vector<double> aty(model_.num_vars, 0.0);
  for (std::size_t r = 0; r < model_.rows.size(); ++r) {
    const double yr = sol.row_duals[r];
    const bool sign_ok = (model_.rows[r].sense == Sense::le && yr >= -kDualityTol) ||
                         (model_.rows[r].sense == Sense::ge && yr <= kDualityTol) ||
                         model_.rows[r].sense == Sense::eq;
    if (!sign_ok) throw Error(Errc::numeric, "dual certificate has a wrong sign");
    for (const auto& [var, coeff] : model_.rows[r].terms) aty[var] += coeff * yr;
  }
  for (int j = 0; j < model_.num_vars; ++j) {
    if (model_.upper[j] < kInfinity) {
      if (sol.bound_duals[j] < -kDualityTol) {
        throw Error(Errc::numeric, "dual certificate has a wrong bound sign");
      }
      aty[j] += sol.bound_duals[j];
    }
    if (aty[j] < model_.objective[j] - kDualityTol * scale) {
      throw Error(Errc::numeric, "dual certificate is infeasible");
    }
  }
  if (std::abs(sol.dual_value - sol.value) >
      kDualityTol * std::max(1.0, std::abs(sol.value))) {
    throw Error(Errc::numeric, "duality gap exceeds tolerance");
  }
}

}  // namespace

int LpModel::add_var(double objective_coeff, double upper_bound) {
  objective.push_back(objective_coeff);
  upper.push_back(upper_bound);
  return num_vars++;
}

void LpModel::add_row(std::vector<std::pair<int, double>> terms, Sense sense,
                      double rhs) {
  rows.push_back(Row{std::move(terms), sense, rhs});
}

LpSolution solve_lp(const LpModel& model) { return Simplex(model).run(); }

}  // namespace visplan::lp
