#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liplift/error.hpp"
#include "liplift/free_space.hpp"
#include "liplift/lipschitz.hpp"
#include "liplift/lp.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/random.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

// Bounded operator S: Lip_0(M) -> Lip_0(N) as a dense matrix on value
// vectors: (Sf)(p) = sum_z matrix[p][z] * f(z) over non-base coordinates.
template <class T>
class LipOperator {
 public:
  LipOperator(SpacePtr<T> domain, SpacePtr<T> codomain, Matrix<T> matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    int rows = codomain_->non_base_count();
    int cols = domain_->non_base_count();
    if (static_cast<int>(matrix_.size()) != rows) {
      throw error(errc::dimension_mismatch, "operator matrix has " +
                                                std::to_string(matrix_.size()) +
                                                " rows, expected " + std::to_string(rows));
    }
    for (const auto& row : matrix_) {
      if (static_cast<int>(row.size()) != cols) {
        throw error(errc::dimension_mismatch, "operator matrix row width mismatch");
      }
    }
  }

  static LipOperator zero(SpacePtr<T> domain, SpacePtr<T> codomain) {
    Matrix<T> m(codomain->non_base_count(),
                std::vector<T>(domain->non_base_count(), scalar_traits<T>::zero()));
    return LipOperator(std::move(domain), std::move(codomain), std::move(m));
  }

  static LipOperator identity(SpacePtr<T> space) {
    int k = space->non_base_count();
    Matrix<T> m(k, std::vector<T>(k, scalar_traits<T>::zero()));
    for (int i = 0; i < k; ++i) m[i][i] = scalar_traits<T>::one();
    return LipOperator(space, space, std::move(m));
  }

  const SpacePtr<T>& domain() const { return domain_; }
  const SpacePtr<T>& codomain() const { return codomain_; }
  const Matrix<T>& matrix() const { return matrix_; }

  LipschitzFunction<T> apply(const LipschitzFunction<T>& f) const {
    if (!same_space(domain_, f.space())) {
      throw error(errc::space_mismatch, "operator applied to a function on the wrong space");
    }
    std::vector<T> out(codomain_->non_base_count(), scalar_traits<T>::zero());
    for (std::size_t p = 0; p < out.size(); ++p) {
      for (std::size_t z = 0; z < f.values().size(); ++z) {
        out[p] += matrix_[p][z] * f.values()[z];
      }
    }
    return LipschitzFunction<T>(codomain_, std::move(out));
  }

  friend LipOperator operator*(const T& s, const LipOperator& op) {
    Matrix<T> m = op.matrix_;
    for (auto& row : m) {
      for (T& v : row) v = s * v;
    }
    return LipOperator(op.domain_, op.codomain_, std::move(m));
  }

 private:
  SpacePtr<T> domain_;
  SpacePtr<T> codomain_;
  Matrix<T> matrix_;
};

template <class T>
LipOperator<T> random_operator(Rng& rng, const SpacePtr<T>& domain, const SpacePtr<T>& codomain) {
  Matrix<T> m(codomain->non_base_count(), std::vector<T>(domain->non_base_count()));
  for (auto& row : m) {
    for (T& v : row) v = random_scalar<T>(rng, -16, 16, 16);  // uniform grid in [-1, 1]
  }
  return LipOperator<T>(domain, codomain, std::move(m));
}

// S*(m_pq) in delta coordinates of M: coefficient at z is
// (matrix[p][z] - matrix[q][z]) / d_N(p,q), base rows reading as zero.
// Pairing it with f gives ((Sf)(p) - (Sf)(q)) / d_N(p,q).
template <class T>
FreeVector<T> adjoint_molecule(const LipOperator<T>& op, int p, int q) {
  if (p == q) throw error(errc::equal_points, "adjoint molecule requires distinct points");
  const auto& n_space = *op.codomain();
  const T inv = scalar_traits<T>::one() / n_space.dist(p, q);
  int cp = n_space.coord_of(p);
  int cq = n_space.coord_of(q);
  int cols = op.domain()->non_base_count();
  std::vector<T> coeffs(cols, scalar_traits<T>::zero());
  for (int z = 0; z < cols; ++z) {
    T rp = cp >= 0 ? op.matrix()[cp][z] : scalar_traits<T>::zero();
    T rq = cq >= 0 ? op.matrix()[cq][z] : scalar_traits<T>::zero();
    coeffs[z] = (rp - rq) * inv;
  }
  return FreeVector<T>(op.domain(), std::move(coeffs));
}

template <class T>
struct OperatorNormResult {
  T value = scalar_traits<T>::zero();
  Pair attaining{-1, -1};
  LipschitzFunction<T> witness;  // unit-ball function realizing the norm
};

// ||S|| as the maximum free norm of the adjoint molecules over the codomain
// pair set; the quotient characterization makes this exact at finite scale.
template <class T>
OperatorNormResult<T> operator_norm_witness(const LipOperator<T>& op, const LpOptions<T>& opt = {}) {
  OperatorNormResult<T> out{scalar_traits<T>::zero(), Pair{-1, -1},
                            LipschitzFunction<T>::zero(op.domain())};
  PairSet pairs(op.codomain()->size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    FreeNormResult<T> fn = free_norm_witness(adjoint_molecule(op, pairs[r].x, pairs[r].y), opt);
    if (fn.value > out.value) {
      out.value = fn.value;
      out.attaining = pairs[r];
      out.witness = fn.witness;
    }
  }
  return out;
}

template <class T>
T operator_norm(const LipOperator<T>& op, const LpOptions<T>& opt = {}) {
  return operator_norm_witness(op, opt).value;
}

// Lifting between the embedded spaces: rows indexed by codomain pairs,
// columns by domain pairs, row (p,q) read as a finitely supported measure
// on the domain pair set.
template <class T>
class LiftingMatrix {
 public:
  LiftingMatrix(SpacePtr<T> domain, SpacePtr<T> codomain, Matrix<T> rows)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        dpairs_(domain_->size()),
        cpairs_(codomain_->size()),
        rows_(std::move(rows)) {
    if (rows_.size() != cpairs_.size()) {
      throw error(errc::dimension_mismatch, "lifting row count must match codomain pair count");
    }
    for (const auto& row : rows_) {
      if (row.size() != dpairs_.size()) {
        throw error(errc::dimension_mismatch, "lifting row width must match domain pair count");
      }
    }
  }

  static LiftingMatrix zero(SpacePtr<T> domain, SpacePtr<T> codomain) {
    PairSet dp(domain->size()), cp(codomain->size());
    Matrix<T> rows(cp.size(), std::vector<T>(dp.size(), scalar_traits<T>::zero()));
    return LiftingMatrix(std::move(domain), std::move(codomain), std::move(rows));
  }

  const SpacePtr<T>& domain() const { return domain_; }
  const SpacePtr<T>& codomain() const { return codomain_; }
  const PairSet& domain_pairs() const { return dpairs_; }
  const PairSet& codomain_pairs() const { return cpairs_; }
  const Matrix<T>& rows() const { return rows_; }

  T row_l1(std::size_t r) const {
    T acc = scalar_traits<T>::zero();
    for (const T& v : rows_[r]) acc += scalar_traits<T>::abs(v);
    return acc;
  }

  // Lifted action on a vector indexed by the domain pair set.
  std::vector<T> apply(const std::vector<T>& embedded) const {
    if (embedded.size() != dpairs_.size()) {
      throw error(errc::dimension_mismatch, "embedded vector length mismatch");
    }
    std::vector<T> out(cpairs_.size(), scalar_traits<T>::zero());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t c = 0; c < embedded.size(); ++c) out[r] += rows_[r][c] * embedded[c];
    }
    return out;
  }

 private:
  SpacePtr<T> domain_;
  SpacePtr<T> codomain_;
  PairSet dpairs_;
  PairSet cpairs_;
  Matrix<T> rows_;
};

// Row-echelon rank. Exploratory diagnostic for liftings; says nothing about
// invertibility of the underlying operator.
template <class T>
int matrix_rank(Matrix<T> m, const T& tol = scalar_traits<T>::pivot_tol()) {
  int rows = static_cast<int>(m.size());
  int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (scalar_traits<T>::abs(m[r][c]) > tol &&
          (piv < 0 || scalar_traits<T>::abs(m[r][c]) > scalar_traits<T>::abs(m[piv][c]))) {
        piv = r;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c] == scalar_traits<T>::zero()) continue;
      T f = m[r][c] / m[rank][c];
      for (int j = c; j < cols; ++j) m[r][j] = m[r][j] - f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

template <class T>
int lifting_rank(const LiftingMatrix<T>& lift) {
  return matrix_rank(lift.rows());
}

// Max row l1 norm = the operator norm of the lifted map between the
// continuous-function spaces.
template <class T>
T lifting_norm(const LiftingMatrix<T>& lift) {
  T best = scalar_traits<T>::zero();
  for (std::size_t r = 0; r < lift.rows().size(); ++r) {
    T v = lift.row_l1(r);
    if (v > best) best = v;
  }
  return best;
}

// Builds the lifting row by row: row (p,q) is a minimum-l1 molecular
// representation of S*(m_pq). The LP equality constraints force the
// commutation identity, and because the minimum is attained the resulting
// norm equals ||S|| already at epsilon = 0; positive epsilon only relaxes
// the budget the rows are checked against.
template <class T>
LiftingMatrix<T> build_lifting(const LipOperator<T>& op, const T& epsilon,
                               const LpOptions<T>& opt = {}) {
  if (epsilon < scalar_traits<T>::zero()) {
    throw error(errc::dimension_mismatch, "epsilon must be nonnegative");
  }
  PairSet dpairs(op.domain()->size());
  PairSet cpairs(op.codomain()->size());
  Matrix<T> rows(cpairs.size(), std::vector<T>(dpairs.size(), scalar_traits<T>::zero()));
  for (std::size_t r = 0; r < cpairs.size(); ++r) {
    MoleculeDecomposition<T> rep =
        optimal_representation(adjoint_molecule(op, cpairs[r].x, cpairs[r].y), opt);
    rows[r] = std::move(rep.coefficients);
  }
  return LiftingMatrix<T>(op.domain(), op.codomain(), std::move(rows));
}

template <class T>
struct CommutationCheck {
  T residual = scalar_traits<T>::zero();
  // sum of d(z, base) over non-base z: scales the basis residual to a bound
  // valid on the whole unit ball
  T basis_bound = scalar_traits<T>::zero();
};

// Checks the commutation square on the point-evaluation basis of Lip_0(M):
// lifting(embed(e_z)) must equal embed(S e_z) entrywise. Linearity makes
// the basis check complete.
template <class T>
CommutationCheck<T> verify_commutation(const LipOperator<T>& op, const LiftingMatrix<T>& lift) {
  if (!same_space(op.domain(), lift.domain()) || !same_space(op.codomain(), lift.codomain())) {
    throw error(errc::dimension_mismatch, "operator and lifting live on different spaces");
  }
  CommutationCheck<T> out;
  const SpacePtr<T>& m_space = op.domain();
  int k = m_space->non_base_count();
  for (int c = 0; c < k; ++c) {
    std::vector<T> values(k, scalar_traits<T>::zero());
    values[c] = scalar_traits<T>::one();
    LipschitzFunction<T> basis(m_space, std::move(values));
    std::vector<T> lifted = lift.apply(apply_de_leeuw(basis));
    std::vector<T> direct = apply_de_leeuw(op.apply(basis));
    for (std::size_t r = 0; r < lifted.size(); ++r) {
      T dev = scalar_traits<T>::abs(lifted[r] - direct[r]);
      if (dev > out.residual) out.residual = dev;
    }
  }
  for (int c = 0; c < k; ++c) {
    int z = m_space->point_of_coord(c);
    out.basis_bound += m_space->dist(z, m_space->base());
  }
  return out;
}

// Composition operator S(f) = r * (f o gamma) for a base-preserving
// gamma: N -> M.
template <class T>
LipOperator<T> composition_operator(const BasePointMap<T>& gamma, const T& r) {
  const auto& n_space = *gamma.from;
  const auto& m_space = *gamma.to;
  Matrix<T> mat(n_space.non_base_count(),
                std::vector<T>(m_space.non_base_count(), scalar_traits<T>::zero()));
  for (int c = 0; c < n_space.non_base_count(); ++c) {
    int p = n_space.point_of_coord(c);
    int img = m_space.coord_of(gamma.images[p]);
    if (img >= 0) mat[c][img] = r;
  }
  return LipOperator<T>(gamma.to, gamma.from, std::move(mat));
}

// Explicit lifting for a composition operator: row (x,y) carries the single
// weight r * d_M(gamma x, gamma y) / d_N(x,y) at column (gamma x, gamma y).
// Pairs collapsed by gamma get a zero row, which still commutes because the
// composed difference quotient vanishes there.
template <class T>
LiftingMatrix<T> composition_lifting(const BasePointMap<T>& gamma, const T& r) {
  const SpacePtr<T>& m_space = gamma.to;
  const SpacePtr<T>& n_space = gamma.from;
  PairSet dpairs(m_space->size());
  PairSet cpairs(n_space->size());
  Matrix<T> rows(cpairs.size(), std::vector<T>(dpairs.size(), scalar_traits<T>::zero()));
  for (std::size_t row = 0; row < cpairs.size(); ++row) {
    int gx = gamma.images[cpairs[row].x];
    int gy = gamma.images[cpairs[row].y];
    if (gx == gy) continue;
    int col = dpairs.row(gx, gy);
    rows[row][col] =
        r * m_space->dist(gx, gy) / n_space->dist(cpairs[row].x, cpairs[row].y);
  }
  return LiftingMatrix<T>(m_space, n_space, std::move(rows));
}

// Spot-checks the norm-continuity bound for adjoint molecule differences:
// |<S*(m_xy) - S*(m_pq), f>| against the explicit modulus built from ||S||
// and the four distances. Returns the worst (signed) excess over the bound;
// a correct implementation keeps it at or below rounding noise.
template <class T>
T continuity_modulus_check(const LipOperator<T>& op, int trials, std::uint64_t seed,
                           const LpOptions<T>& opt = {}) {
  const SpacePtr<T>& n_space = op.codomain();
  PairSet pairs(n_space->size());
  if (pairs.size() == 0) return scalar_traits<T>::zero();
  T norm = operator_norm(op, opt);
  Rng rng(seed);
  bool worst_set = false;
  T worst = scalar_traits<T>::zero();
  int base = n_space->base();
  for (int t = 0; t < trials; ++t) {
    const Pair& a = pairs[static_cast<std::size_t>(rng.next_int(0, pairs.size() - 1))];
    const Pair& b = pairs[static_cast<std::size_t>(rng.next_int(0, pairs.size() - 1))];
    LipschitzFunction<T> f = random_unit_ball_function(rng, op.domain());
    T lhs = scalar_traits<T>::abs(
        pairing(adjoint_molecule(op, a.x, a.y) - adjoint_molecule(op, b.x, b.y), f));
    const T& dxy = n_space->dist(a.x, a.y);
    const T& dpq = n_space->dist(b.x, b.y);
    T bound = norm / dxy * (n_space->dist(a.x, b.x) + n_space->dist(a.y, b.y)) +
              norm / (dxy * dpq) * (n_space->dist(b.x, base) + n_space->dist(b.y, base)) *
                  scalar_traits<T>::abs(dpq - dxy);
    T excess = lhs - bound;
    if (!worst_set || excess > worst) {
      worst = excess;
      worst_set = true;
    }
  }
  return worst;
}

}  // namespace liplift
