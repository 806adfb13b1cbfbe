#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "liplift/error.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

template <class T>
struct LpOptions {
  T feas_tol = scalar_traits<T>::feasibility_tol();
  T pivot_tol = scalar_traits<T>::pivot_tol();
  long max_pivots = 200000;
  std::ostream* trace = nullptr;  // dumps tableau iterations when set
};

// General-form problem: optimize objective subject to eq_a x = eq_b,
// ineq_g x <= ineq_h, and per-variable lower bounds (nullopt = free).
template <class T>
struct LinearProgram {
  bool maximize = false;
  std::vector<T> objective;
  Matrix<T> eq_a;
  std::vector<T> eq_b;
  Matrix<T> ineq_g;
  std::vector<T> ineq_h;
  std::vector<std::optional<T>> lower_bounds;  // empty means all zero
};

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  T value = scalar_traits<T>::zero();
  std::vector<T> primal;
  std::vector<T> dual;       // multipliers for eq constraints
  std::vector<T> dual_ineq;  // multipliers for ineq constraints
  std::vector<T> ray;        // unbounded direction in the original variables
  // Certificates from the internal standard form, for the optimality checks.
  T duality_residual = scalar_traits<T>::zero();
  T comp_slack_residual = scalar_traits<T>::zero();
  long pivots = 0;
};

namespace detail {

// Dense two-phase simplex on  min c.x  s.t.  A x = b, x >= 0.
// Bland's rule throughout: entering = lowest eligible column index,
// leaving = lowest basic variable index among minimum ratios. Artificial
// columns stay in the tableau so equality duals can be read off at the end.
template <class T>
class StandardSimplex {
 public:
  StandardSimplex(Matrix<T> a, std::vector<T> b, std::vector<T> c, const LpOptions<T>& opt)
      : m_(static_cast<int>(a.size())),
        n_(static_cast<int>(c.size())),
        cost_(std::move(c)),
        opt_(opt) {
    for (int i = 0; i < m_; ++i) {
      if (static_cast<int>(a[i].size()) != n_) {
        throw error(errc::dimension_mismatch, "constraint row " + std::to_string(i) +
                                                  " has " + std::to_string(a[i].size()) +
                                                  " entries, expected " + std::to_string(n_));
      }
    }
    if (static_cast<int>(b.size()) != m_) {
      throw error(errc::dimension_mismatch, "rhs length does not match constraint count");
    }
    row_sign_.assign(m_, 1);
    tab_.assign(m_, std::vector<T>(n_ + m_ + 1, scalar_traits<T>::zero()));
    for (int i = 0; i < m_; ++i) {
      bool flip = b[i] < scalar_traits<T>::zero();
      if (flip) row_sign_[i] = -1;
      for (int j = 0; j < n_; ++j) tab_[i][j] = flip ? -a[i][j] : a[i][j];
      tab_[i][n_ + i] = scalar_traits<T>::one();
      tab_[i][rhs()] = flip ? -b[i] : b[i];
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  LpStatus run() {
    // Phase 1: minimize the sum of artificials.
    std::vector<T> phase1(n_ + m_, scalar_traits<T>::zero());
    for (int i = 0; i < m_; ++i) phase1[n_ + i] = scalar_traits<T>::one();
    compute_reduced(phase1);
    LpStatus st = iterate(/*allow_artificial_entering=*/false);
    if (st == LpStatus::Unbounded) {
      throw error(errc::numerical_breakdown, "phase-1 problem reported unbounded");
    }
    if (objective_value(phase1) > opt_.feas_tol) return LpStatus::Infeasible;
    drive_out_artificials();

    // Phase 2: original costs, artificials never re-enter.
    std::vector<T> phase2 = cost_;
    phase2.resize(n_ + m_, scalar_traits<T>::zero());
    compute_reduced(phase2);
    st = iterate(false);
    if (st == LpStatus::Optimal) value_ = objective_value(phase2);
    return st;
  }

  std::vector<T> primal() const {
    std::vector<T> x(n_, scalar_traits<T>::zero());
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = tab_[i][rhs()];
    }
    return x;
  }

  // y_i = -reduced(artificial_i), with the sign flip undone for rows whose
  // rhs was negated at setup.
  std::vector<T> duals() const {
    std::vector<T> y(m_, scalar_traits<T>::zero());
    for (int i = 0; i < m_; ++i) {
      T v = -reduced_[n_ + i];
      y[i] = row_sign_[i] < 0 ? -v : v;
    }
    return y;
  }

  std::vector<T> unbounded_ray() const { return ray_; }
  const T& value() const { return value_; }
  long pivots() const { return pivots_; }

  T comp_slack_residual() const {
    // reduced cost times primal value, maximum over structural columns
    T worst = scalar_traits<T>::zero();
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) continue;
      T v = scalar_traits<T>::abs(reduced_[basis_[i]] * tab_[i][rhs()]);
      if (v > worst) worst = v;
    }
    return worst;
  }

  T duality_residual(const std::vector<T>& b) const {
    std::vector<T> y = duals();
    T dual_obj = scalar_traits<T>::zero();
    for (int i = 0; i < m_; ++i) dual_obj += y[i] * b[i];
    return scalar_traits<T>::abs(value_ - dual_obj);
  }

 private:
  int rhs() const { return n_ + m_; }

  void compute_reduced(const std::vector<T>& cost) {
    reduced_.assign(n_ + m_, scalar_traits<T>::zero());
    for (int j = 0; j < n_ + m_; ++j) {
      T v = cost[j];
      for (int i = 0; i < m_; ++i) {
        if (!(cost[basis_[i]] == scalar_traits<T>::zero())) {
          v -= cost[basis_[i]] * tab_[i][j];
        }
      }
      reduced_[j] = v;
    }
  }

  T objective_value(const std::vector<T>& cost) const {
    T v = scalar_traits<T>::zero();
    for (int i = 0; i < m_; ++i) v += cost[basis_[i]] * tab_[i][rhs()];
    return v;
  }

  LpStatus iterate(bool allow_artificial_entering) {
    int limit = allow_artificial_entering ? n_ + m_ : n_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (reduced_[j] < -opt_.feas_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      for (int i = 0; i < m_; ++i) {
        if (!(tab_[i][enter] > opt_.pivot_tol)) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        T lhs = tab_[i][rhs()] * tab_[leave][enter];
        T rhs_v = tab_[leave][rhs()] * tab_[i][enter];
        if (lhs < rhs_v || (lhs == rhs_v && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave < 0) {
        ray_.assign(n_, scalar_traits<T>::zero());
        if (enter < n_) ray_[enter] = scalar_traits<T>::one();
        for (int i = 0; i < m_; ++i) {
          if (basis_[i] < n_) ray_[basis_[i]] = -tab_[i][enter];
        }
        return LpStatus::Unbounded;
      }
      pivot(leave, enter);
      if (++pivots_ > opt_.max_pivots) {
        throw error(errc::numerical_breakdown,
                    "pivot limit exceeded after " + std::to_string(pivots_) + " iterations");
      }
    }
  }

  void pivot(int r, int s) {
    if (opt_.trace != nullptr) dump(r, s);
    T p = tab_[r][s];
    if (scalar_traits<T>::abs(p) <= opt_.pivot_tol) {
      throw error(errc::numerical_breakdown,
                  "pivot magnitude below threshold at row " + std::to_string(r) + ", column " +
                      std::to_string(s));
    }
    for (int j = 0; j <= rhs(); ++j) tab_[r][j] = tab_[r][j] / p;
    for (int i = 0; i < m_; ++i) {
      if (i == r || tab_[i][s] == scalar_traits<T>::zero()) continue;
      T f = tab_[i][s];
      for (int j = 0; j <= rhs(); ++j) tab_[i][j] = tab_[i][j] - f * tab_[r][j];
    }
    T f = reduced_[s];
    if (!(f == scalar_traits<T>::zero())) {
      for (int j = 0; j < n_ + m_; ++j) reduced_[j] = reduced_[j] - f * tab_[r][j];
    }
    basis_[r] = s;
  }

  // Replace basic artificials by structural columns where possible; rows
  // that stay artificial are redundant and keep a zero rhs. Pivots on the
  // largest-magnitude entry of the row (the row rhs is zero, so negative
  // pivots are fine here).
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int s = -1;
      for (int j = 0; j < n_; ++j) {
        if (scalar_traits<T>::abs(tab_[i][j]) <= opt_.pivot_tol) continue;
        if (s < 0 || scalar_traits<T>::abs(tab_[i][j]) > scalar_traits<T>::abs(tab_[i][s])) {
          s = j;
        }
      }
      if (s >= 0) {
        pivot(i, s);
        ++pivots_;
      }
    }
  }

  void dump(int r, int s) {
    std::ostream& os = *opt_.trace;
    os << "pivot " << pivots_ << ": row " << r << " col " << s << " basis [";
    for (int i = 0; i < m_; ++i) os << (i > 0 ? " " : "") << basis_[i];
    os << "]\n";
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j <= rhs(); ++j) {
        os << scalar_traits<T>::to_string(tab_[i][j]) << (j == rhs() ? "\n" : " ");
      }
    }
  }

  int m_;
  int n_;
  std::vector<T> cost_;
  LpOptions<T> opt_;
  Matrix<T> tab_;
  std::vector<T> reduced_;
  std::vector<int> basis_;
  std::vector<int> row_sign_;
  std::vector<T> ray_;
  T value_ = scalar_traits<T>::zero();
  long pivots_ = 0;
};

}  // namespace detail

// Solves the general-form program by reduction to standard form: shifted or
// split variables, slacks on inequality rows.
template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp, const LpOptions<T>& opt = {}) {
  const T zero = scalar_traits<T>::zero();
  int nv = static_cast<int>(lp.objective.size());
  int me = static_cast<int>(lp.eq_a.size());
  int mi = static_cast<int>(lp.ineq_g.size());
  if (static_cast<int>(lp.eq_b.size()) != me || static_cast<int>(lp.ineq_h.size()) != mi) {
    throw error(errc::dimension_mismatch, "constraint rhs length mismatch");
  }
  if (!lp.lower_bounds.empty() && static_cast<int>(lp.lower_bounds.size()) != nv) {
    throw error(errc::dimension_mismatch, "lower_bounds length mismatch");
  }

  // Column layout: one column per bounded variable, two per free variable,
  // then one slack per inequality row.
  std::vector<int> pos_col(nv), neg_col(nv, -1);
  std::vector<T> shift(nv, zero);
  int cols = 0;
  for (int v = 0; v < nv; ++v) {
    std::optional<T> lb = lp.lower_bounds.empty() ? std::optional<T>(zero) : lp.lower_bounds[v];
    pos_col[v] = cols++;
    if (lb.has_value()) {
      shift[v] = *lb;
    } else {
      neg_col[v] = cols++;
    }
  }
  int slack0 = cols;
  cols += mi;

  Matrix<T> a(me + mi, std::vector<T>(cols, zero));
  std::vector<T> b(me + mi, zero);
  auto fill_row = [&](int row, const std::vector<T>& src, const T& rhs_in) {
    if (static_cast<int>(src.size()) != nv) {
      throw error(errc::dimension_mismatch, "constraint row width mismatch");
    }
    T rhs = rhs_in;
    for (int v = 0; v < nv; ++v) {
      a[row][pos_col[v]] = src[v];
      if (neg_col[v] >= 0) a[row][neg_col[v]] = -src[v];
      rhs -= src[v] * shift[v];
    }
    b[row] = rhs;
  };
  for (int i = 0; i < me; ++i) fill_row(i, lp.eq_a[i], lp.eq_b[i]);
  for (int i = 0; i < mi; ++i) {
    fill_row(me + i, lp.ineq_g[i], lp.ineq_h[i]);
    a[me + i][slack0 + i] = scalar_traits<T>::one();
  }

  std::vector<T> c(cols, zero);
  for (int v = 0; v < nv; ++v) {
    T cv = lp.maximize ? -lp.objective[v] : lp.objective[v];
    c[pos_col[v]] = cv;
    if (neg_col[v] >= 0) c[neg_col[v]] = -cv;
  }

  detail::StandardSimplex<T> simplex(std::move(a), b, std::move(c), opt);
  LpSolution<T> out;
  out.status = simplex.run();
  out.pivots = simplex.pivots();
  if (out.status == LpStatus::Infeasible) return out;

  auto restore = [&](const std::vector<T>& std_x, bool add_shift) {
    std::vector<T> x(nv, zero);
    for (int v = 0; v < nv; ++v) {
      x[v] = std_x[pos_col[v]];
      if (neg_col[v] >= 0) x[v] = x[v] - std_x[neg_col[v]];
      if (add_shift) x[v] = x[v] + shift[v];
    }
    return x;
  };

  if (out.status == LpStatus::Unbounded) {
    out.ray = restore(simplex.unbounded_ray(), false);
    return out;
  }

  out.primal = restore(simplex.primal(), true);
  out.value = zero;
  for (int v = 0; v < nv; ++v) out.value += lp.objective[v] * out.primal[v];
  std::vector<T> y = simplex.duals();
  out.dual.assign(y.begin(), y.begin() + me);
  out.dual_ineq.assign(y.begin() + me, y.end());
  if (lp.maximize) {
    for (T& v : out.dual) v = -v;
    for (T& v : out.dual_ineq) v = -v;
  }
  out.duality_residual = simplex.duality_residual(b);
  out.comp_slack_residual = simplex.comp_slack_residual();
  return out;
}

template <class T>
struct MinL1Result {
  std::vector<T> coeffs;
  T value = scalar_traits<T>::zero();
  long pivots = 0;
};

// min sum |x_i| s.t. A x = b, via the split x = u - v with u, v >= 0.
// Throws NoPreimage when b is outside the range of A.
template <class T>
MinL1Result<T> min_l1(const Matrix<T>& a, const std::vector<T>& b, const LpOptions<T>& opt = {}) {
  const T zero = scalar_traits<T>::zero();
  int m = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != m) {
    throw error(errc::dimension_mismatch, "min_l1 rhs length mismatch");
  }
  int n = m > 0 ? static_cast<int>(a[0].size()) : 0;
  if (m == 0) return MinL1Result<T>{std::vector<T>(n, zero), zero, 0};

  Matrix<T> std_a(m, std::vector<T>(2 * n, zero));
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(a[i].size()) != n) {
      throw error(errc::dimension_mismatch, "min_l1 matrix is ragged");
    }
    for (int j = 0; j < n; ++j) {
      std_a[i][j] = a[i][j];
      std_a[i][n + j] = -a[i][j];
    }
  }
  std::vector<T> c(2 * n, scalar_traits<T>::one());
  detail::StandardSimplex<T> simplex(std::move(std_a), b, std::move(c), opt);
  LpStatus st = simplex.run();
  if (st == LpStatus::Infeasible) {
    throw error(errc::no_preimage, "right-hand side is not in the range of the matrix");
  }
  if (st == LpStatus::Unbounded) {
    throw error(errc::numerical_breakdown, "min_l1 cannot be unbounded");
  }
  std::vector<T> ul = simplex.primal();
  MinL1Result<T> out;
  out.coeffs.resize(n);
  for (int j = 0; j < n; ++j) out.coeffs[j] = ul[j] - ul[n + j];
  out.value = simplex.value();
  out.pivots = simplex.pivots();
  return out;
}

template <class T>
struct MaxLinearResult {
  std::vector<T> argmax;
  T value = scalar_traits<T>::zero();
  long pivots = 0;
};

// max c.x over the polytope {x : G x <= h}, x free. Throws on an empty or
// unbounded polytope (callers guarantee neither happens).
template <class T>
MaxLinearResult<T> max_linear(const std::vector<T>& c, const Matrix<T>& g,
                              const std::vector<T>& h, const LpOptions<T>& opt = {}) {
  LinearProgram<T> lp;
  lp.maximize = true;
  lp.objective = c;
  lp.ineq_g = g;
  lp.ineq_h = h;
  lp.lower_bounds.assign(c.size(), std::nullopt);
  LpSolution<T> sol = solve_lp(lp, opt);
  if (sol.status == LpStatus::Infeasible) {
    throw error(errc::lp_infeasible, "polytope is empty");
  }
  if (sol.status == LpStatus::Unbounded) {
    throw error(errc::lp_unbounded, "objective unbounded over the polytope");
  }
  return MaxLinearResult<T>{sol.primal, sol.value, sol.pivots};
}

}  // namespace liplift
