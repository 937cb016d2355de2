#include "dualbound/lp_solver.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dualbound/lp_core.hpp"

namespace dualbound {

namespace {

constexpr std::size_t kMaxTableauCells = 40'000'000;

// Arithmetic policies for the tableau. Exact values compare against zero
// exactly; doubles against a small threshold.
struct ExactArith {
  using T = mpq_class;
  static bool positive(const T& x) { return sgn(x) > 0; }
  static bool negative(const T& x) { return sgn(x) < 0; }
  static bool zero(const T& x) { return sgn(x) == 0; }
  // a -= f * b
  static void axpy(T& a, const T& f, const T& b, T& tmp) {
    mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), b.get_mpq_t());
    mpq_sub(a.get_mpq_t(), a.get_mpq_t(), tmp.get_mpq_t());
  }
  static T from(const Rational& q) { return q.raw(); }
  static Scalar to_scalar(const T& x) { return Rational(x); }
  bool cost_negative(const T& x) const { return negative(x); }
  void clean(T&) const {}
};

struct FloatArith {
  using T = double;
  double eps;      // entries below this are zero
  double opt_eps;  // reduced-cost threshold
  bool positive(const T& x) const { return x > eps; }
  bool negative(const T& x) const { return x < -eps; }
  bool zero(const T& x) const { return std::fabs(x) <= eps; }
  static void axpy(T& a, const T& f, const T& b, T&) { a -= f * b; }
  static T from(const Rational& q) { return q.to_double(); }
  static Scalar to_scalar(const T& x) { return HighPrecFloat::from_double(x); }
  bool cost_negative(const T& x) const { return x < -opt_eps; }
  void clean(T& x) const {
    if (std::fabs(x) <= eps * 1e-3) x = 0.0;
  }
};

template <class Arith>
class Simplex {
  using T = typename Arith::T;

 public:
  Simplex(const LinearProgram& p, Arith arith, PivotRule rule, std::size_t max_pivots)
      : p_(p), ar_(arith), rule_(rule), max_pivots_(max_pivots) {
    build();
  }

  Solution run() {
    Solution sol;
    // Phase 1: minimise the sum of artificials.
    std::vector<T> phase1_cost(cols_, T(0));
    for (std::size_t c = 0; c < cols_; ++c) {
      if (artificial_[c]) phase1_cost[c] = T(1);
    }
    price(phase1_cost);
    iterate(/*allow_artificial=*/true);
    const T infeasibility = -obj_rhs_;
    if (ar_.positive(infeasibility)) {
      sol.status = SolveStatus::Infeasible;
      sol.pivot_count = pivots_;
      return sol;
    }
    drive_out_artificials();
    price(cost_);
    if (!iterate(/*allow_artificial=*/false)) {
      sol.status = SolveStatus::Unbounded;
      sol.pivot_count = pivots_;
      return sol;
    }
    sol.status = SolveStatus::Optimal;
    sol.pivot_count = pivots_;
    extract(sol);
    return sol;
  }

 private:
  T& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  void build() {
    const auto& vars = p_.variables();
    const auto& rows = p_.constraints();
    const bool minimize = p_.sense() == Sense::Minimize;
    // Structural columns; free variables are split into x+ and x-.
    std::vector<std::vector<std::size_t>> var_cols(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
      var_cols[j].push_back(add_column(j, 1));
      if (vars[j].sign == VarSign::Free) var_cols[j].push_back(add_column(j, -1));
    }
    std::vector<Rational> cost(vars.size());
    for (const auto& t : p_.objective()) cost[t.var] = minimize ? t.coef : -t.coef;

    m_ = rows.size();
    flip_.assign(m_, 1);
    std::vector<Relation> rel(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      rel[i] = rows[i].relation;
      if (rows[i].rhs.sign() < 0) {
        flip_[i] = -1;
        if (rel[i] == Relation::LessEqual) {
          rel[i] = Relation::GreaterEqual;
        } else if (rel[i] == Relation::GreaterEqual) {
          rel[i] = Relation::LessEqual;
        }
      }
    }
    const std::size_t structural = col_var_.size();
    // Slack (+1) for <=, surplus (-1) plus artificial for >=, artificial for =.
    std::vector<std::size_t> slack_col(m_, npos);
    std::vector<std::size_t> art_col(m_, npos);
    for (std::size_t i = 0; i < m_; ++i) {
      if (rel[i] != Relation::Equal) slack_col[i] = add_column(npos, rel[i] == Relation::LessEqual ? 1 : -1);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (rel[i] != Relation::LessEqual) art_col[i] = add_column(npos, 1, /*artificial=*/true);
    }
    cols_ = col_var_.size();
    if (m_ * cols_ > kMaxTableauCells) {
      throw SizeLimitError("dense tableau of " + std::to_string(m_) + " x " + std::to_string(cols_) +
                           " exceeds the cell limit");
    }
    a_.assign(m_ * cols_, T(0));
    b_.assign(m_, T(0));
    basis_.assign(m_, npos);
    initial_basic_.assign(m_, npos);
    for (std::size_t i = 0; i < m_; ++i) {
      const T s = T(flip_[i]);
      for (const auto& t : rows[i].terms) {
        for (std::size_t c : var_cols[t.var]) at(i, c) = s * Arith::from(t.coef) * T(col_sign_[c]);
      }
      b_[i] = s * Arith::from(rows[i].rhs);
      if (slack_col[i] != npos) at(i, slack_col[i]) = T(col_sign_[slack_col[i]]);
      if (art_col[i] != npos) at(i, art_col[i]) = T(1);
      basis_[i] = rel[i] == Relation::LessEqual ? slack_col[i] : art_col[i];
      initial_basic_[i] = basis_[i];
    }
    cost_.assign(cols_, T(0));
    for (std::size_t c = 0; c < structural; ++c) cost_[c] = Arith::from(cost[col_var_[c]]) * T(col_sign_[c]);
    var_cols_ = std::move(var_cols);
  }

  std::size_t add_column(std::size_t var, int sign, bool artificial = false) {
    col_var_.push_back(var);
    col_sign_.push_back(sign);
    artificial_.push_back(artificial);
    return col_var_.size() - 1;
  }

  // Reduced costs d = cost - c_B B^-1 A for the current tableau.
  void price(const std::vector<T>& cost) {
    d_ = cost;
    obj_rhs_ = T(0);
    T tmp;
    for (std::size_t i = 0; i < m_; ++i) {
      const T cb = cost[basis_[i]];
      if (ar_.zero(cb)) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!ar_.zero(at(i, c))) Arith::axpy(d_[c], cb, at(i, c), tmp);
      }
      Arith::axpy(obj_rhs_, cb, b_[i], tmp);
    }
    for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = T(0);
  }

  std::size_t choose_entering(bool allow_artificial, bool bland) const {
    std::size_t best = npos;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!allow_artificial && artificial_[c]) continue;
      if (!ar_.cost_negative(d_[c])) continue;
      if (bland) return c;
      if (best == npos || d_[c] < d_[best]) best = c;
    }
    return best;
  }

  std::size_t choose_leaving(std::size_t c) {
    std::size_t best = npos;
    T best_ratio{};
    for (std::size_t i = 0; i < m_; ++i) {
      const T& aic = at(i, c);
      if (!ar_.positive(aic)) continue;
      T ratio = b_[i] / aic;
      if (best == npos || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t c) {
    const T inv = T(1) / at(r, c);
    nz_.clear();
    for (std::size_t k = 0; k < cols_; ++k) {
      T& v = at(r, k);
      if (ar_.zero(v)) continue;
      v *= inv;
      nz_.push_back(k);
    }
    b_[r] *= inv;
    at(r, c) = T(1);
    T tmp;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      T& aic = at(i, c);
      if (ar_.zero(aic)) continue;
      const T f = aic;
      for (std::size_t k : nz_) {
        Arith::axpy(at(i, k), f, at(r, k), tmp);
        ar_.clean(at(i, k));
      }
      Arith::axpy(b_[i], f, b_[r], tmp);
      ar_.clean(b_[i]);
      at(i, c) = T(0);
    }
    if (!ar_.zero(d_[c])) {
      const T f = d_[c];
      for (std::size_t k : nz_) {
        Arith::axpy(d_[k], f, at(r, k), tmp);
        ar_.clean(d_[k]);
      }
      Arith::axpy(obj_rhs_, f, b_[r], tmp);
      d_[c] = T(0);
    }
    basis_[r] = c;
    ++pivots_;
    if (max_pivots_ != 0 && pivots_ > max_pivots_) {
      throw NonconvergenceError("simplex exceeded the pivot budget of " + std::to_string(max_pivots_));
    }
  }

  // false when unbounded.
  bool iterate(bool allow_artificial) {
    std::size_t degenerate_run = 0;
    for (;;) {
      const bool bland = rule_ == PivotRule::Bland || degenerate_run > 50;
      const std::size_t c = choose_entering(allow_artificial, bland);
      if (c == npos) return true;
      const std::size_t r = choose_leaving(c);
      if (r == npos) return false;
      degenerate_run = ar_.zero(b_[r]) ? degenerate_run + 1 : 0;
      pivot(r, c);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!artificial_[basis_[i]]) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!artificial_[c] && !ar_.zero(at(i, c))) {
          pivot(i, c);
          break;
        }
      }
      // A row with no structural entry is redundant; its artificial stays
      // basic at zero and never re-enters the ratio test with a nonzero.
    }
  }

  void extract(Solution& sol) {
    const auto& vars = p_.variables();
    const auto& rows = p_.constraints();
    const bool minimize = p_.sense() == Sense::Minimize;
    std::vector<T> x(cols_, T(0));
    for (std::size_t i = 0; i < m_; ++i) x[basis_[i]] = b_[i];
    for (std::size_t j = 0; j < vars.size(); ++j) {
      T v(0);
      for (std::size_t c : var_cols_[j]) v += T(col_sign_[c]) * x[c];
      sol.primal_point.set(vars[j].name, Arith::to_scalar(v));
    }
    // Row multipliers pi = c_B B^-1 read off the columns that formed the
    // initial identity basis (cost 0 in phase 2): pi_i = -d_col.
    for (std::size_t i = 0; i < m_; ++i) {
      T u = -d_[initial_basic_[i]] * T(flip_[i]);  // dual of the min-form row
      if (!minimize) u = -u;                        // dual of the max-form row
      const Relation natural = minimize ? Relation::GreaterEqual : Relation::LessEqual;
      if (rows[i].relation != Relation::Equal && rows[i].relation != natural) u = -u;
      sol.dual_point.set(rows[i].name, Arith::to_scalar(u));
    }
    const T z = -obj_rhs_;
    T objective = minimize ? z : -z;
    objective += Arith::from(p_.objective_offset());
    sol.objective = Arith::to_scalar(objective);
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  const LinearProgram& p_;
  Arith ar_;
  PivotRule rule_;
  std::size_t max_pivots_;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
  std::vector<T> b_;
  std::vector<T> d_;
  std::vector<T> cost_;
  T obj_rhs_{};
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> initial_basic_;
  std::vector<int> flip_;
  std::vector<std::size_t> col_var_;
  std::vector<int> col_sign_;
  std::vector<bool> artificial_;
  std::vector<std::vector<std::size_t>> var_cols_;
  std::vector<std::size_t> nz_;
  std::size_t pivots_ = 0;
};

}  // namespace

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

Solution solve_exact(const LinearProgram& p, const ExactSolveOptions& opts) {
  const std::size_t nnz = p.nonzero_count();
  if (opts.max_nonzeros != 0 && nnz > opts.max_nonzeros) {
    throw SizeLimitError("program has " + std::to_string(nnz) + " nonzeros; exact limit is " +
                         std::to_string(opts.max_nonzeros));
  }
  Simplex<ExactArith> simplex(p, ExactArith{}, opts.rule, 0);
  Solution sol = simplex.run();
  if (sol.status == SolveStatus::Optimal) {
    sol.dual_objective = evaluate(dualize(p), sol.dual_point, {.tolerance = std::nullopt, .keep_slacks = false}).objective_value;
  }
  return sol;
}

Solution solve_float(const LinearProgram& p, double tol, const FloatSolveOptions& opts) {
  if (!(tol > 0)) throw std::invalid_argument("solve_float: tolerance must be positive");
  const std::size_t nnz = p.nonzero_count();
  if (opts.max_nonzeros != 0 && nnz > opts.max_nonzeros) {
    throw SizeLimitError("program has " + std::to_string(nnz) + " nonzeros; float limit is " +
                         std::to_string(opts.max_nonzeros));
  }
  std::size_t budget = opts.max_pivots;
  if (budget == 0) budget = 50 * (p.constraints().size() * 2 + p.variables().size() + 1);
  const double eps = std::max(1e-13, tol * 1e-4);
  Simplex<FloatArith> simplex(p, FloatArith{eps, std::max(1e-12, tol * 1e-3)}, opts.rule, budget);
  Solution sol = simplex.run();
  if (sol.status != SolveStatus::Optimal) return sol;
  const EvaluateOptions eo{.tolerance = tol, .keep_slacks = false};
  const FeasibilityReport primal = evaluate(p, sol.primal_point, eo);
  const FeasibilityReport dual = evaluate(dualize(p), sol.dual_point, eo);
  sol.dual_objective = dual.objective_value;
  sol.uncertainty = std::fabs(to_double(primal.objective_value) - to_double(dual.objective_value)) +
                    to_double(primal.worst_violation) + to_double(dual.worst_violation);
  return sol;
}

Scalar duality_gap(const LinearProgram& p, const Solution& s) {
  if (s.status != SolveStatus::Optimal) throw std::domain_error("duality gap needs an optimal solution");
  const EvaluateOptions eo{.tolerance = std::nullopt, .keep_slacks = false};
  const Scalar primal = evaluate(p, s.primal_point, eo).objective_value;
  const Scalar dual = evaluate(dualize(p), s.dual_point, eo).objective_value;
  if (is_exact(primal) && is_exact(dual)) return (std::get<Rational>(primal) - std::get<Rational>(dual)).abs();
  const HighPrecFloat diff = sub(to_float(primal, Round::Nearest), to_float(dual, Round::Nearest), Round::Up);
  return diff.sign() < 0 ? -diff : diff;
}

}  // namespace dualbound
