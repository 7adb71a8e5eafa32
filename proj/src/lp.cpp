#include "ambush/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "ambush/error.hpp"

namespace ambush::lp {
namespace {

// A run of this many degenerate pivots switches Dantzig pricing to Bland's
// rule until the objective moves again.
constexpr std::size_t kDegenerateRunLimit = 50;

// Pivots between tableau rebuilds, and the smallest count at which an
// optimality claim is re-checked on a rebuilt tableau.
constexpr std::size_t kRefactorInterval = 500;
constexpr std::size_t kRecheckAfter = 100;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::kMalformedProgram, what);
}

}  // namespace

bool Certificate::passes(double objective_value, double tol) const {
  return primal_infeasibility <= tol && dual_infeasibility <= tol &&
         duality_gap <= tol * (1.0 + std::abs(objective_value));
}

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  auto check_rows = [&](const Matrix& m, const Vector& rhs, const char* name) {
    if (m.size() != rhs.size()) {
      malformed(std::string(name) + " row count does not match its rhs");
    }
    for (const Vector& row : m) {
      if (row.size() != n) {
        malformed(std::string(name) + " row has wrong column count");
      }
      for (double a : row) {
        if (!std::isfinite(a)) malformed("non-finite coefficient");
      }
    }
    for (double b : rhs) {
      if (!std::isfinite(b)) malformed("non-finite right-hand side");
    }
  };
  check_rows(lp.ineq_matrix, lp.ineq_rhs, "inequality");
  check_rows(lp.eq_matrix, lp.eq_rhs, "equality");
  if (!lp.nonneg_mask.empty() && lp.nonneg_mask.size() != n) {
    malformed("nonneg mask length does not match variable count");
  }
  for (double c : lp.objective) {
    if (!std::isfinite(c)) malformed("non-finite objective coefficient");
  }
}

SimplexSolver::SimplexSolver(LinearProgram lp, Options options)
    : lp_(std::move(lp)), options_(options) {
  validate(lp_);
  const std::size_t m_ineq = lp_.ineq_rhs.size();
  const std::size_t m = m_ineq + lp_.eq_rhs.size();
  rhs_.resize(m);
  row_sign_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double b = i < m_ineq ? lp_.ineq_rhs[i] : lp_.eq_rhs[i - m_ineq];
    row_sign_[i] = b < 0.0 ? -1.0 : 1.0;
    rhs_[i] = row_sign_[i] * b;
  }
  original_rhs_ = rhs_;
  working_rhs_ = rhs_;
  for (std::size_t j = 0; j < lp_.num_variables(); ++j) {
    append_structural(j, false);
    if (!lp_.is_nonneg(j)) append_structural(j, true);
  }
  identity_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool is_ineq = i < m_ineq;
    if (is_ineq) {
      TableauColumn slack;
      slack.entries.assign(m, 0.0);
      slack.entries[i] = row_sign_[i];
      cols_.push_back(std::move(slack));
      if (row_sign_[i] > 0.0) {
        identity_[i] = cols_.size() - 1;
        continue;
      }
    }
    TableauColumn art;
    art.entries.assign(m, 0.0);
    art.entries[i] = 1.0;
    art.artificial = true;
    cols_.push_back(std::move(art));
    identity_[i] = cols_.size() - 1;
  }
  for (TableauColumn& col : cols_) col.original = col.entries;
  basis_ = identity_;
}

void SimplexSolver::append_structural(std::size_t variable, bool negated) {
  const std::size_t m_ineq = lp_.ineq_rhs.size();
  const double sign = negated ? -1.0 : 1.0;
  TableauColumn col;
  col.entries.resize(rhs_.size());
  for (std::size_t i = 0; i < rhs_.size(); ++i) {
    const double a = i < m_ineq ? lp_.ineq_matrix[i][variable]
                                : lp_.eq_matrix[i - m_ineq][variable];
    col.entries[i] = sign * row_sign_[i] * a;
  }
  col.cost = sign * lp_.objective[variable];
  col.variable = static_cast<int>(variable);
  col.negated = negated;
  cols_.push_back(std::move(col));
}

void SimplexSolver::add_column(double cost, std::span<const double> ineq_coeffs,
                               std::span<const double> eq_coeffs, bool nonneg) {
  if (ineq_coeffs.size() != lp_.ineq_rhs.size() ||
      eq_coeffs.size() != lp_.eq_rhs.size()) {
    malformed("added column has wrong length");
  }
  const std::size_t m_ineq = lp_.ineq_rhs.size();
  const std::size_t variable = lp_.num_variables();
  if (lp_.nonneg_mask.empty() && !nonneg) {
    lp_.nonneg_mask.assign(variable, true);
  }
  lp_.objective.push_back(cost);
  if (!lp_.nonneg_mask.empty()) lp_.nonneg_mask.push_back(nonneg);
  for (std::size_t i = 0; i < m_ineq; ++i) {
    lp_.ineq_matrix[i].push_back(ineq_coeffs[i]);
  }
  for (std::size_t i = 0; i < eq_coeffs.size(); ++i) {
    lp_.eq_matrix[i].push_back(eq_coeffs[i]);
  }

  const std::size_t m = rows();
  for (int part = 0; part < (nonneg ? 1 : 2); ++part) {
    const double sign = part == 0 ? 1.0 : -1.0;
    TableauColumn col;
    col.entries.assign(m, 0.0);
    // Current tableau column = B^-1 a, with B^-1 read off the identity
    // columns.
    for (std::size_t k = 0; k < m; ++k) {
      const double a = sign * row_sign_[k] *
                       (k < m_ineq ? ineq_coeffs[k] : eq_coeffs[k - m_ineq]);
      if (a == 0.0) continue;
      const Vector& inv = cols_[identity_[k]].entries;
      for (std::size_t i = 0; i < m; ++i) col.entries[i] += inv[i] * a;
    }
    col.original.assign(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      col.original[k] = sign * row_sign_[k] *
                        (k < m_ineq ? ineq_coeffs[k] : eq_coeffs[k - m_ineq]);
    }
    col.cost = sign * cost;
    col.variable = static_cast<int>(variable);
    col.negated = part == 1;
    if (!reduced_.empty()) {
      const bool phase_one = !phase_two_ready_;
      double d = phase_one ? 0.0 : col.cost;
      for (std::size_t i = 0; i < m; ++i) {
        const TableauColumn& b = cols_[basis_[i]];
        const double cb = phase_one ? (b.artificial ? 1.0 : 0.0) : b.cost;
        d -= cb * col.entries[i];
      }
      reduced_.push_back(d);
    }
    cols_.push_back(std::move(col));
  }
}

void SimplexSolver::pivot(std::size_t row, std::size_t col) {
  ++pivots_;
  ++since_refactor_;
  const Vector enter = cols_[col].entries;
  const double piv = enter[row];
  const double d_enter = reduced_[col];
  const std::size_t m = rows();
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    Vector& entries = cols_[j].entries;
    double t = entries[row];
    if (t == 0.0) continue;
    t /= piv;
    for (std::size_t i = 0; i < m; ++i) entries[i] -= enter[i] * t;
    entries[row] = t;
    reduced_[j] -= d_enter * t;
  }
  reduced_[col] = 0.0;
  const double t = rhs_[row] / piv;
  for (std::size_t i = 0; i < m; ++i) rhs_[i] -= enter[i] * t;
  rhs_[row] = t;
  basis_[row] = col;
}

void SimplexSolver::price_phase(bool phase_one) {
  reduced_.assign(cols_.size(), 0.0);
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    double d = phase_one ? (cols_[j].artificial ? 1.0 : 0.0) : cols_[j].cost;
    for (std::size_t i = 0; i < rows(); ++i) {
      const TableauColumn& b = cols_[basis_[i]];
      const double cb = phase_one ? (b.artificial ? 1.0 : 0.0) : b.cost;
      if (cb != 0.0) d -= cb * cols_[j].entries[i];
    }
    reduced_[j] = d;
  }
}

Status SimplexSolver::iterate(bool phase_one) {
  const double tol = options_.pivot_tolerance;
  std::size_t degenerate_run = 0;
  for (;;) {
    if (pivots_ > options_.max_pivots) {
      throw Error(ErrorKind::kInvariantViolation, "simplex pivot limit exceeded");
    }
    if (since_refactor_ >= kRefactorInterval) refactor(phase_one);
    const bool bland = options_.rule == PivotRule::kBland ||
                       degenerate_run >= kDegenerateRunLimit;
    std::size_t enter = cols_.size();
    double best = -tol;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (!phase_one && cols_[j].artificial) continue;
      if (reduced_[j] < best) {
        enter = j;
        if (bland) break;
        best = reduced_[j];
      }
    }
    if (enter == cols_.size()) {
      if (since_refactor_ >= kRecheckAfter) {
        refactor(phase_one);
        continue;
      }
      return Status::kOptimal;
    }

    const Vector& column = cols_[enter].entries;
    std::size_t leave = rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows(); ++i) {
      if (column[i] <= tol) continue;
      const double ratio = std::max(rhs_[i], 0.0) / column[i];
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && leave < rows() &&
           basis_[i] < basis_[leave])) {
        if (ratio < best_ratio) best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == rows()) {
      if (since_refactor_ > 0) {
        refactor(phase_one);
        continue;
      }
      return Status::kUnbounded;
    }
    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
    pivot(leave, enter);
  }
}

void SimplexSolver::refactor(bool phase_one) {
  const std::size_t m = rows();
  // Gauss-Jordan with partial pivoting on [B | I].
  std::vector<Vector> b(m, Vector(m, 0.0));
  std::vector<Vector> inv(m, Vector(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const Vector& col = cols_[basis_[i]].original;
    for (std::size_t r = 0; r < m; ++r) b[r][i] = col[r];
    inv[i][i] = 1.0;
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::abs(b[r][c]) > std::abs(b[p][c])) p = r;
    }
    if (std::abs(b[p][c]) < 1e-12) {
      throw Error(ErrorKind::kInvariantViolation, "simplex basis became singular");
    }
    std::swap(b[p], b[c]);
    std::swap(inv[p], inv[c]);
    const double d = b[c][c];
    for (std::size_t k = 0; k < m; ++k) {
      b[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      const double f = b[r][c];
      if (r == c || f == 0.0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        b[r][k] -= f * b[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  auto apply = [&](const Vector& a, Vector& out) {
    out.assign(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      if (a[k] == 0.0) continue;
      for (std::size_t i = 0; i < m; ++i) out[i] += inv[i][k] * a[k];
    }
  };
  for (TableauColumn& col : cols_) apply(col.original, col.entries);
  apply(working_rhs_, rhs_);
  price_phase(phase_one);
  since_refactor_ = 0;
}

void SimplexSolver::drive_out_artificials() {
  for (std::size_t r = 0; r < rows(); ++r) {
    if (!cols_[basis_[r]].artificial) continue;
    std::size_t best = cols_.size();
    double magnitude = options_.pivot_tolerance;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].artificial) continue;
      const double a = std::abs(cols_[j].entries[r]);
      if (a > magnitude) {
        magnitude = a;
        best = j;
      }
    }
    // Otherwise the row is redundant and its artificial stays basic at zero.
    if (best != cols_.size()) pivot(r, best);
  }
}

LpSolution SimplexSolver::solve() {
  if (infeasible_) return LpSolution{};
  if (!phase_two_ready_) {
    const bool needs_phase_one = std::any_of(
        basis_.begin(), basis_.end(),
        [&](std::size_t j) { return cols_[j].artificial; });
    if (needs_phase_one) {
      price_phase(true);
      iterate(true);
      double infeasibility = 0.0;
      double scale = 1.0;
      for (std::size_t i = 0; i < rows(); ++i) {
        scale = std::max(scale, std::abs(rhs_[i]));
        if (cols_[basis_[i]].artificial) infeasibility += std::abs(rhs_[i]);
      }
      if (infeasibility > options_.feasibility_tolerance * scale) {
        infeasible_ = true;
        return LpSolution{};
      }
      drive_out_artificials();
    }
    price_phase(false);
    phase_two_ready_ = true;
  }
  perturb();
  const Status status = iterate(false);
  restore_rhs();
  return extract(status);
}

void SimplexSolver::perturb() {
  if (options_.perturbation <= 0.0) return;
  const std::size_t m = rows();
  for (std::size_t i = 0; i < m; ++i) {
    // Low-discrepancy shift in [1, 2) times the base amount.
    const double frac = std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
    const double delta = options_.perturbation * (1.0 + frac);
    rhs_[i] += delta;
    const Vector& col = cols_[basis_[i]].original;
    for (std::size_t k = 0; k < m; ++k) working_rhs_[k] += delta * col[k];
  }
}

void SimplexSolver::restore_rhs() {
  if (working_rhs_ == original_rhs_) return;
  working_rhs_ = original_rhs_;
  const std::size_t m = rows();
  std::fill(rhs_.begin(), rhs_.end(), 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    if (original_rhs_[k] == 0.0) continue;
    const Vector& inv = cols_[identity_[k]].entries;
    for (std::size_t i = 0; i < m; ++i) rhs_[i] += inv[i] * original_rhs_[k];
  }
  // The basis stays dual feasible; dual simplex pivots remove the primal
  // infeasibility the shift may leave behind.
  const double tol = options_.pivot_tolerance;
  for (;;) {
    std::size_t r = rows();
    double worst = -1e-11;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (rhs_[i] < worst) {
        worst = rhs_[i];
        r = i;
      }
    }
    if (r == rows()) return;
    std::size_t enter = cols_.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].artificial) continue;
      const double a = cols_[j].entries[r];
      if (a >= -tol) continue;
      const double ratio = std::max(reduced_[j], 0.0) / -a;
      if (ratio < best) {
        best = ratio;
        enter = j;
      }
    }
    if (enter == cols_.size()) return;
    pivot(r, enter);
  }
}

LpSolution SimplexSolver::extract(Status status) {
  LpSolution sol;
  sol.status = status;
  if (status != Status::kOptimal) return sol;
  const std::size_t n = lp_.num_variables();
  const std::size_t m_ineq = lp_.ineq_rhs.size();
  sol.primal.assign(n, 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    const TableauColumn& col = cols_[basis_[i]];
    if (col.variable < 0) continue;
    const double value = std::max(rhs_[i], 0.0);
    sol.primal[col.variable] += col.negated ? -value : value;
  }
  sol.dual_ineq.assign(m_ineq, 0.0);
  sol.dual_eq.assign(lp_.eq_rhs.size(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    // Simplex multiplier of row i: y' = c_id - d_id with c_id == 0.
    const double y = row_sign_[i] * -reduced_[identity_[i]];
    if (i < m_ineq) {
      sol.dual_ineq[i] = -y;
    } else {
      sol.dual_eq[i - m_ineq] = y;
    }
  }
  sol.objective_value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sol.objective_value += lp_.objective[j] * sol.primal[j];
  }
  sol.certificate = certify(lp_, sol);
  return sol;
}

LpSolution solve(const LinearProgram& lp, const Options& options) {
  SimplexSolver solver(lp, options);
  return solver.solve();
}

Certificate certify(const LinearProgram& lp, const LpSolution& sol) {
  Certificate cert;
  const std::size_t n = lp.num_variables();
  for (std::size_t i = 0; i < lp.ineq_rhs.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += lp.ineq_matrix[i][j] * sol.primal[j];
    cert.primal_infeasibility =
        std::max(cert.primal_infeasibility, lhs - lp.ineq_rhs[i]);
  }
  for (std::size_t i = 0; i < lp.eq_rhs.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += lp.eq_matrix[i][j] * sol.primal[j];
    cert.primal_infeasibility =
        std::max(cert.primal_infeasibility, std::abs(lhs - lp.eq_rhs[i]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.is_nonneg(j)) {
      cert.primal_infeasibility = std::max(cert.primal_infeasibility, -sol.primal[j]);
    }
  }

  for (double u : sol.dual_ineq) {
    cert.dual_infeasibility = std::max(cert.dual_infeasibility, -u);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double r = lp.objective[j];
    for (std::size_t i = 0; i < lp.ineq_rhs.size(); ++i) {
      r += lp.ineq_matrix[i][j] * sol.dual_ineq[i];
    }
    for (std::size_t i = 0; i < lp.eq_rhs.size(); ++i) {
      r -= lp.eq_matrix[i][j] * sol.dual_eq[i];
    }
    cert.dual_infeasibility =
        std::max(cert.dual_infeasibility, lp.is_nonneg(j) ? -r : std::abs(r));
  }

  double primal_obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) primal_obj += lp.objective[j] * sol.primal[j];
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < lp.eq_rhs.size(); ++i) dual_obj += lp.eq_rhs[i] * sol.dual_eq[i];
  for (std::size_t i = 0; i < lp.ineq_rhs.size(); ++i) dual_obj -= lp.ineq_rhs[i] * sol.dual_ineq[i];
  cert.duality_gap = std::abs(primal_obj - dual_obj);
  return cert;
}

void dump(const LinearProgram& lp, std::ostream& out) {
  out << "# " << lp.num_variables() << " variables, " << lp.ineq_rhs.size()
      << " inequality rows, " << lp.eq_rhs.size() << " equality rows\n";
  out << "min:";
  for (double c : lp.objective) out << ' ' << c;
  out << "\nfree:";
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    if (!lp.is_nonneg(j)) out << ' ' << j;
  }
  out << '\n';
  for (std::size_t i = 0; i < lp.ineq_rhs.size(); ++i) {
    out << "ineq " << i << ':';
    for (double a : lp.ineq_matrix[i]) out << ' ' << a;
    out << " <= " << lp.ineq_rhs[i] << '\n';
  }
  for (std::size_t i = 0; i < lp.eq_rhs.size(); ++i) {
    out << "eq " << i << ':';
    for (double a : lp.eq_matrix[i]) out << ' ' << a;
    out << " = " << lp.eq_rhs[i] << '\n';
  }
}

}  // namespace ambush::lp
