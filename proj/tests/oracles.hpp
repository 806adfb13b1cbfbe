// Test-only oracles: brute-force counterparts of the LP-backed operations.
// These deliberately avoid the simplex path wherever possible (Gaussian
// elimination + exhaustive enumeration) so they can certify it.
#pragma once

#include <optional>
#include <vector>

#include "liplift/lp.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/scalar.hpp"

namespace liplift::testing {

// Unique solution of a square system via Gauss-Jordan, nullopt if singular.
template <class T>
std::optional<std::vector<T>> solve_square(Matrix<T> a, std::vector<T> b) {
  const T zero = scalar_traits<T>::zero();
  int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (scalar_traits<T>::abs(a[r][col]) >
          (scalar_traits<T>::exact ? zero : scalar_traits<T>::from_ratio(1, 1000000000000LL))) {
        if (piv < 0 || scalar_traits<T>::abs(a[r][col]) > scalar_traits<T>::abs(a[piv][col])) {
          piv = r;
        }
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    T inv = scalar_traits<T>::one() / a[col][col];
    for (int j = 0; j < n; ++j) a[col][j] = a[col][j] * inv;
    b[col] = b[col] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == zero) continue;
      T f = a[r][col];
      for (int j = 0; j < n; ++j) a[r][j] = a[r][j] - f * a[col][j];
      b[r] = b[r] - f * b[col];
    }
  }
  return b;
}

template <class T>
struct SignSearchResult {
  bool feasible = false;
  T value = scalar_traits<T>::zero();
};

// Exhaustive min-l1 by sign pattern: substitute x = diag(s) u, u >= 0, for
// every s in {-1,+1}^n and take the smallest optimal value.
template <class T>
SignSearchResult<T> min_l1_sign_search(const Matrix<T>& a, const std::vector<T>& b) {
  int m = static_cast<int>(a.size());
  int n = m > 0 ? static_cast<int>(a[0].size()) : 0;
  SignSearchResult<T> out;
  if (m == 0) {
    out.feasible = true;
    return out;
  }
  for (long mask = 0; mask < (1L << n); ++mask) {
    LinearProgram<T> lp;
    lp.maximize = false;
    lp.objective.assign(n, scalar_traits<T>::one());
    lp.eq_a.assign(m, std::vector<T>(n, scalar_traits<T>::zero()));
    lp.eq_b = b;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        lp.eq_a[i][j] = (mask >> j) & 1 ? -a[i][j] : a[i][j];
      }
    }
    LpSolution<T> sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) continue;
    if (!out.feasible || sol.value < out.value) {
      out.feasible = true;
      out.value = sol.value;
    }
  }
  return out;
}

// Max of c.x over {x : G x <= h} by enumerating every basic solution
// (vertex) of the polytope. Valid for bounded nonempty polytopes.
template <class T>
std::optional<T> max_over_vertices(const std::vector<T>& c, const Matrix<T>& g,
                                   const std::vector<T>& h) {
  int k = static_cast<int>(c.size());
  int m = static_cast<int>(g.size());
  if (k == 0) return scalar_traits<T>::zero();
  const T feas_slack =
      scalar_traits<T>::exact ? scalar_traits<T>::zero() : scalar_traits<T>::from_ratio(1, 1000000000);

  std::optional<T> best;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  auto advance = [&]() {
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - (k - pos)) --pos;
    if (pos < 0) return false;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    return true;
  };
  if (m < k) return best;
  do {
    Matrix<T> sys(k, std::vector<T>(k));
    std::vector<T> rhs(k);
    for (int i = 0; i < k; ++i) {
      sys[i] = g[idx[i]];
      rhs[i] = h[idx[i]];
    }
    auto f = solve_square(sys, rhs);
    if (!f) continue;
    bool feasible = true;
    for (int r = 0; r < m && feasible; ++r) {
      T lhs = scalar_traits<T>::zero();
      for (int j = 0; j < k; ++j) lhs += g[r][j] * (*f)[j];
      feasible = lhs <= h[r] + feas_slack;
    }
    if (!feasible) continue;
    T val = scalar_traits<T>::zero();
    for (int j = 0; j < k; ++j) val += c[j] * (*f)[j];
    if (!best || val > *best) best = val;
  } while (advance());
  return best;
}

}  // namespace liplift::testing
