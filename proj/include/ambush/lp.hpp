#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace ambush::lp {

using Vector = std::vector<double>;
using Matrix = std::vector<Vector>;  // row-major

// minimize objective . x
//   subject to ineq_matrix x <= ineq_rhs
//              eq_matrix   x == eq_rhs
//              x_i >= 0 where nonneg_mask[i], free otherwise.
// An empty nonneg_mask means every variable is nonnegative.
struct LinearProgram {
  Vector objective;
  Matrix ineq_matrix;
  Vector ineq_rhs;
  Matrix eq_matrix;
  Vector eq_rhs;
  std::vector<bool> nonneg_mask;

  std::size_t num_variables() const { return objective.size(); }
  bool is_nonneg(std::size_t j) const {
    return nonneg_mask.empty() || nonneg_mask[j];
  }
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

// Residuals of a primal/dual pair measured against the original program.
struct Certificate {
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double duality_gap = 0.0;  // |primal objective - dual objective|

  bool passes(double objective_value, double tol = 1e-8) const;
};

// Dual convention: dual_ineq u >= 0 and dual_eq v free with
//   objective - (-ineq^T u + eq^T v) >= 0 on nonnegative variables,
//   objective - (-ineq^T u + eq^T v) == 0 on free variables,
// and dual objective eq_rhs . v - ineq_rhs . u.
struct LpSolution {
  Status status = Status::kInfeasible;
  Vector primal;
  Vector dual_ineq;
  Vector dual_eq;
  double objective_value = 0.0;
  Certificate certificate;
};

enum class PivotRule {
  kBland,
  // Most negative reduced cost; falls back to Bland's rule while a run of
  // degenerate pivots lasts.
  kDantzig,
};

struct Options {
  PivotRule rule = PivotRule::kBland;
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-8;
  // Phase two runs on right-hand sides shifted by up to twice this amount,
  // then restores them with dual simplex pivots. 0 disables the shift.
  double perturbation = 1e-7;
  std::size_t max_pivots = 5'000'000;
};

// Throws kMalformedProgram on dimension mismatch.
void validate(const LinearProgram& lp);

// Two-phase primal simplex on a dense tableau. Deterministic.
LpSolution solve(const LinearProgram& lp, const Options& options = {});

// Measures how far a claimed primal/dual pair is from optimality.
Certificate certify(const LinearProgram& lp, const LpSolution& solution);

// Plain-text dump: one row of coefficients per constraint.
void dump(const LinearProgram& lp, std::ostream& out);

// Dense simplex tableau that keeps its basis between solves, so columns can
// be appended after an optimal solve and re-optimized from the current basis
// (column generation). Every constraint row owns one identity column (slack
// or artificial) which is never removed; those columns hold the basis
// inverse.
class SimplexSolver {
 public:
  explicit SimplexSolver(LinearProgram lp, Options options = {});

  LpSolution solve();

  // Appends a variable with its objective coefficient and its coefficients
  // in the inequality and equality rows.
  void add_column(double cost, std::span<const double> ineq_coeffs,
                  std::span<const double> eq_coeffs, bool nonneg = true);

  const LinearProgram& program() const { return lp_; }
  std::size_t pivots() const { return pivots_; }

 private:
  struct TableauColumn {
    Vector entries;
    Vector original;  // column before any pivot, rows sign-normalized
    double cost = 0.0;
    int variable = -1;  // structural variable index, -1 for slack/artificial
    bool negated = false;  // column represents the negative part of a free variable
    bool artificial = false;
  };

  void append_structural(std::size_t variable, bool negated);
  void pivot(std::size_t row, std::size_t col);
  void price_phase(bool phase_one);
  Status iterate(bool phase_one);
  void drive_out_artificials();
  // Recomputes the tableau from the original columns and the current basis,
  // discarding accumulated rounding.
  void refactor(bool phase_one);
  void perturb();
  void restore_rhs();
  LpSolution extract(Status status);
  std::size_t rows() const { return rhs_.size(); }

  LinearProgram lp_;
  Options options_;
  std::vector<TableauColumn> cols_;
  Vector rhs_;
  Vector original_rhs_;
  Vector working_rhs_;  // original_rhs_ plus the current shift
  Vector reduced_;
  std::vector<double> row_sign_;         // +1 or -1 applied to each row
  std::vector<std::size_t> identity_;   // identity column per row
  std::vector<std::size_t> basis_;      // basic column per row
  bool phase_two_ready_ = false;
  bool infeasible_ = false;
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;
};

}  // namespace ambush::lp
